#include "isopair/spectral.hpp"

#include "isopair/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace isopair::spectral {

namespace {

struct Pairing {
    struct Cluster {
        double lambda = 0.0;
        std::vector<std::size_t> pos; // eigen-indices at +lambda
        std::vector<std::size_t> neg; // eigen-indices at -lambda
    };
    std::vector<Cluster> clusters;
    std::vector<double> unpaired;
};

// Greedy matching of interior eigenvalues against their negatives. Positive
// eigenvalues are sorted ascending, negative ones by modulus; ties keep index
// order.
Pairing pair_interior(const std::vector<double>& values, double cluster_tol) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v > cluster_tol && v < 1.0 - cluster_tol) {
            pos.push_back(i);
        } else if (v < -cluster_tol && v > -1.0 + cluster_tol) {
            neg.push_back(i);
        }
    }
    std::ranges::stable_sort(pos, [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::ranges::stable_sort(neg, [&](std::size_t a, std::size_t b) { return -values[a] < -values[b]; });

    Pairing out;
    std::vector<std::ptrdiff_t> partner(values.size(), -1);
    std::size_t i = 0, j = 0;
    while (i < pos.size() && j < neg.size()) {
        const double p = values[pos[i]];
        const double q = -values[neg[j]];
        if (std::abs(p - q) <= cluster_tol) {
            partner[pos[i]] = static_cast<std::ptrdiff_t>(neg[j]);
            ++i;
            ++j;
        } else if (p < q) {
            out.unpaired.push_back(p);
            ++i;
        } else {
            out.unpaired.push_back(-q);
            ++j;
        }
    }
    for (; i < pos.size(); ++i) {
        out.unpaired.push_back(values[pos[i]]);
    }
    for (; j < neg.size(); ++j) {
        out.unpaired.push_back(values[neg[j]]);
    }

    for (std::size_t k = 0; k < pos.size(); ++k) {
        const std::size_t idx = pos[k];
        if (out.clusters.empty() || values[idx] - values[out.clusters.back().pos.back()] > cluster_tol) {
            out.clusters.emplace_back();
        }
        auto& c = out.clusters.back();
        c.pos.push_back(idx);
        if (partner[idx] >= 0) {
            c.neg.push_back(static_cast<std::size_t>(partner[idx]));
        }
    }
    for (auto& c : out.clusters) {
        double sum = 0.0;
        for (std::size_t idx : c.pos) {
            sum += values[idx];
        }
        c.lambda = sum / static_cast<double>(c.pos.size());
    }
    return out;
}

Subspace columns_of(const linalg::HermitianEigen& eig, const std::vector<std::size_t>& idx) {
    return Subspace(eig.vectors.select_cols(idx));
}

} // namespace

SpectralProfile spectral_profile(const ComplexMatrix& defect, double cluster_tol) {
    const auto eig = linalg::hermitian_eig(defect);
    const std::size_t n = defect.rows();
    for (double v : eig.values) {
        if (std::abs(v) > 1.0 + 1e-8) {
            std::ostringstream os;
            os << "spectral_profile: eigenvalue " << v << " outside [-1, 1]; input is not a contraction";
            throw InputError(os.str());
        }
    }

    SpectralProfile p;
    p.ambient_dim = n;
    p.eigenvalues = eig.values;
    std::vector<std::size_t> e1, em1;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = eig.values[i];
        if (v >= 1.0 - cluster_tol) {
            e1.push_back(i);
        } else if (v <= -1.0 + cluster_tol) {
            em1.push_back(i);
        } else if (std::abs(v) <= cluster_tol) {
            ++p.kernel_dim;
        }
    }
    p.dimE1 = e1.size();
    p.dimEminus1 = em1.size();
    p.basisE1 = columns_of(eig, e1);
    p.basisEminus1 = columns_of(eig, em1);

    const Pairing pairing = pair_interior(eig.values, cluster_tol);
    p.unpaired = pairing.unpaired;
    for (const auto& c : pairing.clusters) {
        p.interior_pairs.push_back(
            {c.lambda, c.pos.size(), c.neg.size(), columns_of(eig, c.pos), columns_of(eig, c.neg)});
        p.dimKplus += c.pos.size();
    }
    return p;
}

RankFormulaReport rank_formula(const ComplexMatrix& defect, const ComplexMatrix& cross,
                               std::optional<double> rank_tol, double cluster_tol) {
    RankFormulaReport r;
    r.rankC = linalg::numerical_rank(defect, rank_tol.value_or(linalg::default_rank_tol(defect)));
    r.rankX = linalg::numerical_rank(cross, rank_tol.value_or(linalg::default_rank_tol(cross)));
    const auto profile = spectral_profile(defect, cluster_tol);
    r.dimE1 = profile.dimE1;
    r.dimEminus1 = profile.dimEminus1;
    r.dimKplus = profile.dimKplus;
    r.symmetric = !profile.violation();
    r.index_identity = r.rankC == r.rankX + r.dimE1 + r.dimKplus;
    const auto lhs = static_cast<long long>(r.rankC);
    const auto rhs = 2LL * static_cast<long long>(r.rankX) + static_cast<long long>(r.dimE1) -
                     static_cast<long long>(r.dimEminus1);
    r.rank_identity = lhs == rhs;
    r.both_identities_hold = r.index_identity && r.rank_identity;
    return r;
}

RankFormulaReport check_rank_formula(const bcl::BCLTriple& t, std::optional<double> rank_tol, double cluster_tol) {
    const auto w = bcl::wandering_projections(t);
    return rank_formula(w.defect, w.cross, rank_tol, cluster_tol);
}

DifferenceProjections build_difference_projections(const DiffProjCanonicalForm& form) {
    const std::size_t k = form.D.rows();
    if (!form.D.square() || form.Uc.rows() != k || form.Uc.cols() != k) {
        throw InputError("build_difference_projections: D and Uc must both be square of the same size");
    }
    if (form.R.rows() != form.kerdim || form.R.cols() != form.kerdim) {
        throw InputError("build_difference_projections: R must be kerdim x kerdim");
    }
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && std::abs(form.D(i, j)) > 1e-12) {
                throw InputError("build_difference_projections: D is not diagonal");
            }
        }
        d[i] = form.D(i, i).real();
        if (std::abs(form.D(i, i).imag()) > 1e-12 || d[i] <= 1e-10 || d[i] >= 1.0 - 1e-10) {
            throw InputError("build_difference_projections: D must be a strict contraction with 0 < d < 1");
        }
    }
    if (linalg::unitarity_residual(form.Uc) > 1e-10) {
        throw InputError("build_difference_projections: Uc is not unitary");
    }
    if (distance(form.Uc * form.D, form.D * form.Uc) > 1e-10) {
        throw InputError("build_difference_projections: Uc does not commute with D");
    }
    if (form.kerdim > 0 && linalg::projection_residual(form.R) > 1e-10) {
        throw InputError("build_difference_projections: R is not a projection");
    }

    std::vector<double> sq(k), plus(k), minus(k);
    for (std::size_t i = 0; i < k; ++i) {
        sq[i] = std::sqrt(1.0 - d[i] * d[i]);
        plus[i] = 0.5 * (1.0 + d[i]);
        minus[i] = 0.5 * (1.0 - d[i]);
    }
    const ComplexMatrix s_half = 0.5 * ComplexMatrix::diagonal(std::span<const double>(sq));
    const ComplexMatrix off = form.Uc * s_half;          // Uc sqrt(I - D^2) / 2
    const ComplexMatrix off_adj = s_half * form.Uc.adjoint();
    const ComplexMatrix dplus = ComplexMatrix::diagonal(std::span<const double>(plus));
    const ComplexMatrix dminus = ComplexMatrix::diagonal(std::span<const double>(minus));

    ComplexMatrix pu(2 * k, 2 * k), qu(2 * k, 2 * k);
    pu.set_block(0, 0, dplus);
    pu.set_block(0, k, off);
    pu.set_block(k, 0, off_adj);
    pu.set_block(k, k, dminus);
    qu.set_block(0, 0, dminus);
    qu.set_block(0, k, off);
    qu.set_block(k, 0, off_adj);
    qu.set_block(k, k, dplus);

    ComplexMatrix generic_a(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        generic_a(i, i) = d[i];
        generic_a(k + i, k + i) = -d[i];
    }
    const ComplexMatrix e1 = ComplexMatrix::identity(form.dimE1);
    const ComplexMatrix em1 = ComplexMatrix::identity(form.dimEminus1);
    const ComplexMatrix z1(form.dimE1, form.dimE1), zm1(form.dimEminus1, form.dimEminus1);
    const ComplexMatrix zker(form.kerdim, form.kerdim);

    DifferenceProjections out;
    out.generic_offset = form.kerdim + form.dimE1 + form.dimEminus1;
    out.generic_dim = k;
    const std::vector<ComplexMatrix> a_blocks{zker, e1, -1.0 * em1, generic_a};
    const std::vector<ComplexMatrix> p_blocks{form.R, e1, zm1, pu};
    const std::vector<ComplexMatrix> q_blocks{form.R, z1, em1, qu};
    out.A = block_diagonal(a_blocks);
    out.P = block_diagonal(p_blocks);
    out.Q = block_diagonal(q_blocks);
    return out;
}

DiffProjCanonicalForm random_canonical_form(std::size_t max_generic_dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> kdist(0, max_generic_dim);
    std::uniform_int_distribution<std::size_t> small(0, 3);
    std::uniform_real_distribution<double> dval(0.05, 0.95);

    DiffProjCanonicalForm f;
    const std::size_t k = kdist(rng);
    f.kerdim = small(rng);
    f.dimE1 = small(rng) % 3;
    f.dimEminus1 = small(rng) % 3;

    std::vector<double> d;
    std::vector<ComplexMatrix> u_blocks;
    while (d.size() < k) {
        const std::size_t group = std::min<std::size_t>(1 + small(rng) % 3, k - d.size());
        const double value = dval(rng);
        d.insert(d.end(), group, value);
        u_blocks.push_back(linalg::haar_unitary(group, rng));
    }
    f.D = ComplexMatrix::diagonal(std::span<const double>(d));
    f.Uc = u_blocks.empty() ? ComplexMatrix(0, 0) : block_diagonal(u_blocks);

    std::uniform_int_distribution<std::size_t> rdist(0, f.kerdim);
    const ComplexMatrix b = linalg::haar_isometry(f.kerdim, rdist(rng), rng);
    f.R = b * b.adjoint();
    return f;
}

SymmetryReport eigen_symmetry_check(const ComplexMatrix& A, const ComplexMatrix& P, const ComplexMatrix& Q,
                                    double tol) {
    SymmetryReport r;
    r.difference_residual = distance(A, P - Q);
    r.projection_residual = std::max(linalg::projection_residual(P), linalg::projection_residual(Q));
    r.precondition_ok = r.difference_residual <= tol && r.projection_residual <= tol;
    if (!r.precondition_ok) {
        std::ostringstream os;
        os << "eigen_symmetry_check: not a difference of projections (||A-(P-Q)||_F=" << r.difference_residual
           << ", projection residual=" << r.projection_residual << ")";
        throw CheckFailure(os.str());
    }
    const auto eig = linalg::hermitian_eig(A);
    const Pairing pairing = pair_interior(eig.values, tol);
    for (const auto& c : pairing.clusters) {
        r.clusters.emplace_back(c.lambda, c.pos.size(), c.neg.size());
    }
    r.unpaired = pairing.unpaired;
    r.symmetric = r.unpaired.empty();
    return r;
}

} // namespace isopair::spectral
