#include "isopair/classify.hpp"

#include "isopair/error.hpp"
#include "isopair/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace isopair::classify {

namespace {

using linalg::Subspace;

// Defect, cross-commutator and wandering projections on the coordinates the
// analysis runs in: C^n for a triple, the interior window for a pair.
struct View {
    ComplexMatrix defect;
    ComplexMatrix cross;
    ComplexMatrix pW1;
    ComplexMatrix pW2;
    ComplexMatrix pW;
    ComplexMatrix U;
    const models::StructuredPair* pair = nullptr;
    double isometry_residual = 0.0;
    double commutator_residual = 0.0;
};

View make_view(const PairInput& input) {
    View v;
    if (const auto* t = std::get_if<bcl::BCLTriple>(&input)) {
        bcl::require_valid(*t);
        auto w = bcl::wandering_projections(*t);
        v.defect = std::move(w.defect);
        v.cross = std::move(w.cross);
        v.pW1 = std::move(w.pW1);
        v.pW2 = std::move(w.pW2);
        v.pW = ComplexMatrix::identity(t->n);
        v.U = t->U;
    } else {
        const auto& p = std::get<models::StructuredPair>(input);
        v.pair = &p;
        v.defect = models::interior_defect(p);
        v.cross = models::interior_cross(p);
        auto w = models::interior_wandering(p);
        v.pW1 = std::move(w.pW1);
        v.pW2 = std::move(w.pW2);
        v.pW = std::move(w.pW);
        v.U = std::move(w.U);
        const auto r = models::structure_residuals(p);
        v.isometry_residual = r.isometry;
        v.commutator_residual = r.commutator;
    }
    return v;
}

CVector embed(const View& v, const CVector& x) {
    if (v.pair == nullptr) {
        return x;
    }
    CVector full(v.pair->dim);
    for (std::size_t i = 0; i < x.size(); ++i) {
        full[v.pair->interior[i]] = x[i];
    }
    return full;
}

double arg0(cx z) {
    double a = std::arg(z);
    if (a < 0.0) {
        a += 2.0 * std::numbers::pi;
    }
    // -0 and values a hair below 2 pi both mean angle zero.
    if (a >= 2.0 * std::numbers::pi - 1e-12) {
        a = 0.0;
    }
    return a;
}

bool unit_order(cx a, cx b) {
    constexpr double eps = 1e-9;
    if (std::abs(std::abs(a) - std::abs(b)) > eps) {
        return std::abs(a) > std::abs(b);
    }
    return arg0(a) + eps < arg0(b);
}

bool vector_lex_less(const CVector& a, const CVector& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].real() != b[i].real()) {
            return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
            return a[i].imag() < b[i].imag();
        }
    }
    return a.size() < b.size();
}

void sort_multiset(CVector& v) {
    std::ranges::sort(v, [](cx a, cx b) {
        if (std::abs(arg0(a) - arg0(b)) > 1e-9) {
            return arg0(a) < arg0(b);
        }
        return std::abs(a) < std::abs(b);
    });
}

[[noreturn]] void fail(const std::string& what, double residual) {
    std::ostringstream msg;
    msg << what << " (residual " << residual << ")";
    throw CheckFailure(msg.str());
}

NormalityReport normality_of(const View& v, double tol) {
    NormalityReport r;
    r.normality_residual = linalg::normality_residual(v.cross);
    const double fn = v.cross.frobenius_norm();
    r.cross_norm_sq = fn * fn;
    r.isometry_residual = v.isometry_residual;
    r.commutator_residual = v.commutator_residual;
    std::ostringstream msg;
    if (r.normality_residual > tol * std::max(r.cross_norm_sq, linalg::kRankFloor)) {
        msg << "cross-commutator is not normal: ||XX* - X*X||_F = " << r.normality_residual
            << ", ||X||_F^2 = " << r.cross_norm_sq;
    } else if (r.isometry_residual > tol) {
        msg << "V1, V2 are not isometric on the interior: residual " << r.isometry_residual;
    } else if (r.commutator_residual > tol) {
        msg << "V1, V2 do not commute on the interior: residual " << r.commutator_residual;
    }
    r.message = msg.str();
    r.ok = r.message.empty();
    return r;
}

E1Data e1_of(const View& v, const Tolerances& tol) {
    E1Data d;
    d.basisE1 = linalg::projector_intersection(v.pW1, v.pW2, tol.cluster_tol);
    const auto eig = linalg::hermitian_eig(v.defect);
    const Subspace plus = linalg::eigenspace(eig, 1.0 - tol.cluster_tol, 2.0);
    d.eigenspace_gap = linalg::subspace_gap(d.basisE1, plus);
    if (d.eigenspace_gap > tol.tol) {
        fail("W1 n W2 differs from the +1 eigenspace of the defect (dims " + std::to_string(d.basisE1.dim()) +
                 " and " + std::to_string(plus.dim()) + ")",
             d.eigenspace_gap);
    }
    const ComplexMatrix& B = d.basisE1.basis();
    const ComplexMatrix XB = v.cross * B;
    d.X_on_E1 = adjoint_times(B, XB);
    d.containment_residual = distance(v.cross, B * (d.X_on_E1 * B.adjoint()));
    if (d.containment_residual > tol.tol * std::max(1.0, v.cross.frobenius_norm())) {
        fail("cross-commutator is not supported on E1", d.containment_residual);
    }
    return d;
}

ClassificationResult sequence_of(const View& v, const Tolerances& tol) {
    const E1Data d = e1_of(v, tol);
    ClassificationResult res;
    res.k = d.basisE1.dim();
    res.residuals["e1_eigenspace_gap"] = d.eigenspace_gap;
    res.residuals["e1_containment"] = d.containment_residual;

    const auto ne = linalg::normal_eig(d.X_on_E1);
    const double scale = std::max(1.0, d.X_on_E1.frobenius_norm());
    res.residuals["x_on_e1_schur_offdiag"] = ne.offdiag_norm;
    if (ne.offdiag_norm > tol.tol * scale) {
        fail("cross-commutator on E1 is not normal", ne.offdiag_norm);
    }

    for (std::size_t i = 0; i < res.k; ++i) {
        BlockDescriptor b;
        const cx a = ne.values[i];
        const double m = std::abs(a);
        CVector z = ne.vectors.column(i);
        CVector f = d.basisE1.basis() * z;
        linalg::phase_normalize(f);
        b.f_vector = embed(v, f);
        if (m <= tol.band_tol) {
            b.kind = BlockKind::OneFinite;
            b.alpha = 0.0;
        } else if (m >= 1.0 - tol.band_tol) {
            b.kind = BlockKind::TwoFinite;
            b.alpha = a / m;
        } else {
            b.kind = BlockKind::ThreeFinite;
            b.alpha = a;
            b.lambda = m;
            b.gamma = a / m;
        }
        res.blocks.push_back(std::move(b));
    }
    std::ranges::sort(res.blocks, [](const BlockDescriptor& x, const BlockDescriptor& y) {
        if (unit_order(x.alpha, y.alpha)) {
            return true;
        }
        if (unit_order(y.alpha, x.alpha)) {
            return false;
        }
        return vector_lex_less(x.f_vector, y.f_vector);
    });

    // |beta| = lambda: every 3-finite block's |alpha| is an interior defect eigenvalue.
    const auto profile = spectral::spectral_profile(v.defect, tol.cluster_tol);
    double gap = 0.0;
    std::size_t nonzero = 0;
    std::size_t accounted = 0;
    for (const auto& b : res.blocks) {
        accounted += b.defect_rank();
        if (b.kind != BlockKind::OneFinite) {
            ++nonzero;
        }
        if (b.kind == BlockKind::ThreeFinite) {
            double best = 1.0;
            for (const auto& ip : profile.interior_pairs) {
                best = std::min(best, std::abs(ip.lambda - b.lambda));
            }
            gap = std::max(gap, best);
        }
    }
    const std::size_t rankX = linalg::numerical_rank(v.cross);
    const std::size_t rankC = linalg::numerical_rank(v.defect);
    res.residuals["beta_lambda_gap"] = gap;
    res.residuals["cross_rank_minus_nonzero_alpha"] = static_cast<double>(rankX) - static_cast<double>(nonzero);
    res.residuals["defect_rank_unaccounted"] = static_cast<double>(rankC) - static_cast<double>(accounted);
    return res;
}

ShiftUnitaryInvariant shift_unitary_of(const View& v, const Tolerances& tol, std::map<std::string, double>* residuals) {
    const std::size_t n = v.defect.rows();
    const auto eig = linalg::hermitian_eig(v.defect);
    std::vector<CVector> support;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(eig.values[j]) > tol.cluster_tol) {
            support.push_back(eig.vectors.column(j));
        }
    }
    const Subspace W = linalg::projection_range(v.pW);
    Subspace S = linalg::range_of(ComplexMatrix::from_columns(support, n), tol.cluster_tol);
    const ComplexMatrix Uh = v.U.adjoint();
    // Smallest U, U* invariant subspace of W holding the defect's support.
    std::size_t prev = static_cast<std::size_t>(-1);
    while (S.dim() != prev && S.dim() < W.dim()) {
        prev = S.dim();
        const ComplexMatrix& B = S.basis();
        ComplexMatrix cand(n, 3 * B.cols());
        cand.set_block(0, 0, B);
        cand.set_block(0, B.cols(), v.U * B);
        cand.set_block(0, 2 * B.cols(), Uh * B);
        S = linalg::range_of(v.pW * cand, tol.cluster_tol);
    }

    ShiftUnitaryInvariant out;
    ComplexMatrix rest = W.projector();
    if (S.dim() > 0) {
        rest -= S.projector();
    }
    const Subspace Nsp = linalg::projection_range(rest);
    if (residuals != nullptr) {
        (*residuals)["shift_unitary_dim"] = static_cast<double>(Nsp.dim());
    }
    if (Nsp.dim() == 0) {
        return out;
    }
    const ComplexMatrix& BN = Nsp.basis();
    const ComplexMatrix UBN = v.U * BN;
    const ComplexMatrix UN = adjoint_times(BN, UBN);
    const ComplexMatrix PN = adjoint_times(BN, v.pW1 * BN);
    const double invariance = distance(UBN, BN * UN);
    const double commutation = distance(PN * UN, UN * PN);
    if (residuals != nullptr) {
        (*residuals)["shift_unitary_invariance"] = invariance;
        (*residuals)["shift_unitary_commutation"] = commutation;
    }
    if (invariance > tol.tol) {
        fail("residual wandering block is not invariant under U", invariance);
    }
    if (commutation > tol.tol) {
        fail("P and U do not commute on the residual wandering block", commutation);
    }
    auto restricted_eigs = [&](const ComplexMatrix& proj) {
        const Subspace Y = linalg::projection_range(proj);
        if (Y.dim() == 0) {
            return CVector{};
        }
        CVector vals = linalg::normal_eig(adjoint_times(Y.basis(), UN * Y.basis())).values;
        sort_multiset(vals);
        return vals;
    };
    out.eigs_on_P = restricted_eigs(PN);
    out.eigs_on_Pperp = restricted_eigs(ComplexMatrix::identity(PN.rows()) - PN);
    double unimod = 0.0;
    for (const auto* set : {&out.eigs_on_P, &out.eigs_on_Pperp}) {
        for (const cx& z : *set) {
            unimod = std::max(unimod, std::abs(std::abs(z) - 1.0));
        }
    }
    if (residuals != nullptr) {
        (*residuals)["shift_unitary_unimodularity"] = unimod;
    }
    if (unimod > tol.tol) {
        fail("shift-unitary eigenvalues are not unimodular", unimod);
    }
    return out;
}

} // namespace

std::string_view to_string(BlockKind k) {
    switch (k) {
    case BlockKind::OneFinite: return "OneFinite";
    case BlockKind::TwoFinite: return "TwoFinite";
    case BlockKind::ThreeFinite: return "ThreeFinite";
    }
    return "unknown";
}

std::size_t BlockDescriptor::defect_rank() const noexcept {
    switch (kind) {
    case BlockKind::OneFinite: return 1;
    case BlockKind::TwoFinite: return 2;
    case BlockKind::ThreeFinite: return 3;
    }
    return 0;
}

CVector ClassificationResult::fundamental_sequence() const {
    CVector out;
    for (const auto& b : blocks) {
        out.push_back(b.alpha);
    }
    return out;
}

NormalityReport check_compact_normal(const PairInput& input, double tol) {
    return normality_of(make_view(input), tol);
}

E1Data e1_data(const PairInput& input, const Tolerances& tol) { return e1_of(make_view(input), tol); }

ClassificationResult fundamental_sequence(const PairInput& input, const Tolerances& tol) {
    return sequence_of(make_view(input), tol);
}

ShiftUnitaryInvariant shift_unitary_invariant(const PairInput& input, const Tolerances& tol) {
    return shift_unitary_of(make_view(input), tol, nullptr);
}

ClassificationResult classify(const PairInput& input, const Tolerances& tol) {
    const View v = make_view(input);
    const NormalityReport nr = normality_of(v, tol.tol);
    if (!nr.ok) {
        throw CheckFailure(nr.message);
    }
    ClassificationResult res = sequence_of(v, tol);
    res.residuals["normality"] = nr.normality_residual;
    if (v.pair != nullptr) {
        res.residuals["interior_isometry"] = nr.isometry_residual;
        res.residuals["interior_commutator"] = nr.commutator_residual;
    }
    res.shift_unitary = shift_unitary_of(v, tol, &res.residuals);
    return res;
}

std::optional<std::vector<std::size_t>> match_multisets(const CVector& a, const CVector& b, double tol) {
    if (a.size() != b.size()) {
        return std::nullopt;
    }
    std::vector<bool> used(b.size(), false);
    std::vector<std::size_t> perm(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t best = b.size();
        double best_d = tol;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(a[i] - b[j]);
            if (!used[j] && d <= best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best == b.size()) {
            return std::nullopt;
        }
        used[best] = true;
        perm[i] = best;
    }
    return perm;
}

Verdict decide_equivalence(const ClassificationResult& a, const ClassificationResult& b, const Tolerances& tol) {
    Verdict v;
    v.a = a;
    v.b = b;
    bool ok = true;
    if (a.k != b.k) {
        v.report.push_back("dim E1 differs: " + std::to_string(a.k) + " vs " + std::to_string(b.k));
        ok = false;
    }
    auto perm = match_multisets(a.fundamental_sequence(), b.fundamental_sequence(), tol.match_tol);
    if (ok && !perm) {
        v.report.push_back("fundamental sequences do not match as multisets");
        ok = false;
    }
    if (!match_multisets(a.shift_unitary.eigs_on_P, b.shift_unitary.eigs_on_P, tol.match_tol) ||
        !match_multisets(a.shift_unitary.eigs_on_Pperp, b.shift_unitary.eigs_on_Pperp, tol.match_tol)) {
        v.report.push_back("shift-unitary invariants differ");
        ok = false;
    }
    v.equivalent = ok;
    if (ok) {
        v.matching = std::move(perm);
        v.report.push_back("fundamental sequences and shift-unitary invariants match");
    }
    return v;
}

Verdict decide_equivalence(const PairInput& a, const PairInput& b, const Tolerances& tol) {
    return decide_equivalence(classify(a, tol), classify(b, tol), tol);
}

} // namespace isopair::classify
