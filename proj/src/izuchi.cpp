#include "isopair/izuchi.hpp"

#include "isopair/error.hpp"
#include "isopair/linalg.hpp"
#include "isopair/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isopair::izuchi {

namespace {

bool term_less(const LaurentTerm& a, const LaurentTerm& b) {
    return a.zexp != b.zexp ? a.zexp < b.zexp : a.wexp < b.wexp;
}

// Coefficient of z^zexp w^wexp in basis vector `index`, 0 when absent.
struct BasisLookup {
    const IzuchiModel& model;
    double s; // sqrt(1 - r^2)

    // (index, conj-free coefficient) of the basis vectors carrying the exponent.
    std::vector<std::pair<std::size_t, double>> carriers(int zexp, int wexp) const {
        std::vector<std::pair<std::size_t, double>> out;
        const int N = static_cast<int>(model.N);
        if (zexp >= 0 && zexp < N && wexp >= 0 && wexp < N) {
            out.emplace_back(model.monomial_index(static_cast<std::size_t>(zexp), static_cast<std::size_t>(wexp)), 1.0);
        } else if (wexp < 0) {
            const int k = -wexp - 1;
            const int a = zexp - k;
            if (k < static_cast<int>(model.K) && a >= 0 && a < static_cast<int>(model.J)) {
                out.emplace_back(model.g_index(static_cast<std::size_t>(a)), s * std::pow(model.r, k));
            }
        }
        return out;
    }

    CVector coordinates(const LaurentSeries& series, std::size_t dim) const {
        CVector v(dim);
        for (const auto& t : series) {
            for (const auto& [a, c] : carriers(t.zexp, t.wexp)) {
                v[a] += c * t.coef;
            }
        }
        return v;
    }
};

void check_parameters(double r, cx gamma, std::size_t N, std::size_t J, std::size_t K) {
    std::ostringstream msg;
    if (!(std::abs(r) > 0.0 && std::abs(r) < 1.0)) {
        msg << "izuchi: need 0 < |r| < 1, got r = " << r;
    } else if (std::abs(std::abs(gamma) - 1.0) > 1e-12) {
        msg << "izuchi: gamma must be unimodular, |gamma| = " << std::abs(gamma);
    } else if (N < 4 || J < 4) {
        msg << "izuchi: N and J must be at least 4";
    } else if (K < minimal_K(r)) {
        msg << "izuchi: K = " << K << " is below the minimum " << minimal_K(r) << " for r = " << r;
    } else {
        return;
    }
    throw InputError(msg.str());
}

} // namespace

cx laurent_inner(const LaurentSeries& a, const LaurentSeries& b) {
    cx sum;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (term_less(*ia, *ib)) {
            ++ia;
        } else if (term_less(*ib, *ia)) {
            ++ib;
        } else {
            sum += std::conj(ia->coef) * ib->coef;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

LaurentSeries laurent_shift(const LaurentSeries& s, int dz, int dw, cx c) {
    LaurentSeries out;
    out.reserve(s.size());
    for (const auto& t : s) {
        out.push_back({t.zexp + dz, t.wexp + dw, c * t.coef});
    }
    return out;
}

LaurentSeries g_series(double r, std::size_t j, std::size_t K, bool normalized) {
    const double scale = normalized ? std::sqrt(1.0 - r * r) : 1.0;
    LaurentSeries s;
    s.reserve(K);
    double rk = 1.0;
    for (std::size_t k = 0; k < K; ++k, rk *= r) {
        s.push_back({static_cast<int>(j + k), -static_cast<int>(k + 1), scale * rk});
    }
    std::ranges::sort(s, term_less);
    return s;
}

std::size_t minimal_K(double r) {
    return static_cast<std::size_t>(std::ceil(std::log(1e-14) / std::log(std::abs(r))));
}

LaurentSeries IzuchiModel::basis_series(std::size_t index) const {
    if (index < N * N) {
        return {{static_cast<int>(index / N), static_cast<int>(index % N), 1.0}};
    }
    return g_series(r, index - N * N, K);
}

IzuchiModel build_izuchi_model(double r, cx gamma, std::size_t N, std::size_t J, std::size_t K) {
    check_parameters(r, gamma, N, J, K);
    IzuchiModel m;
    m.r = r;
    m.gamma = gamma;
    m.N = N;
    m.J = J;
    m.K = K;
    const double s = std::sqrt(1.0 - r * r);
    const std::size_t dim = N * N + J;

    auto& p = m.pair;
    p.dim = dim;
    p.provenance = models::Provenance::Izuchi;
    p.params = {{"r", r},
                {"gamma_re", gamma.real()},
                {"gamma_im", gamma.imag()},
                {"N", static_cast<double>(N)},
                {"J", static_cast<double>(J)},
                {"K", static_cast<double>(K)}};
    p.V1 = ComplexMatrix(dim, dim);
    p.V2 = ComplexMatrix(dim, dim);
    p.labels.resize(dim);
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < N; ++b) {
            const std::size_t i = m.monomial_index(a, b);
            p.labels[i] = {models::LabelKind::Monomial, {static_cast<int>(a), static_cast<int>(b)}, {}};
            if (a + 1 < N) {
                p.V1(m.monomial_index(a + 1, b), i) = gamma;
            }
            if (b + 1 < N) {
                p.V2(m.monomial_index(a, b + 1), i) = 1.0;
            }
        }
    }
    for (std::size_t j = 0; j < J; ++j) {
        const std::size_t i = m.g_index(j);
        p.labels[i] = {models::LabelKind::GVector, {static_cast<int>(j)}, {}};
        if (j + 1 < J) {
            p.V1(m.g_index(j + 1), i) = gamma;
            p.V2(m.g_index(j + 1), i) = r;
        }
        if (j < N) {
            p.V2(m.monomial_index(j, 0), i) = s;
        }
    }
    // V2* z^m = sqrt(1 - r^2) g_m and V2 g_j reaches z^j, so the constant-w
    // row and the g-vectors are also capped by the other truncation.
    for (std::size_t i = 0; i < dim; ++i) {
        bool inside = false;
        if (i < N * N) {
            const std::size_t a = i / N;
            const std::size_t b = i % N;
            inside = a + 2 < N && b + 2 < N && (b > 0 || a + 2 < J);
        } else {
            const std::size_t j = i - N * N;
            inside = j + 2 < J && j + 2 < N;
        }
        if (inside) {
            p.interior.push_back(i);
        }
    }

    // Exponent-matching oracle: Gram matrix and both multiplication operators.
    const BasisLookup lookup{m, s};
    double gram = 0.0;
    double oracle = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        const LaurentSeries sb = m.basis_series(b);
        const CVector g = lookup.coordinates(sb, dim);
        for (std::size_t a = 0; a < dim; ++a) {
            gram = std::max(gram, std::abs(g[a] - (a == b ? 1.0 : 0.0)));
        }
        const CVector c1 = lookup.coordinates(laurent_shift(sb, 1, 0, gamma), dim);
        const CVector c2 = lookup.coordinates(laurent_shift(sb, 0, 1), dim);
        for (std::size_t a = 0; a < dim; ++a) {
            oracle = std::max({oracle, std::abs(p.V1(a, b) - c1[a]), std::abs(p.V2(a, b) - c2[a])});
        }
    }
    m.orthonormality_residual = gram;
    m.oracle_residual = oracle;
    if (gram > 1e-10) {
        std::ostringstream msg;
        msg << "izuchi: basis orthonormality residual " << gram << " exceeds 1e-10 (K too small?)";
        throw CheckFailure(msg.str());
    }
    if (oracle > 1e-10) {
        std::ostringstream msg;
        msg << "izuchi: closed-form actions differ from the Laurent oracle by " << oracle;
        throw CheckFailure(msg.str());
    }
    return m;
}

IzuchiReport verify_izuchi_invariants(const IzuchiModel& model, double tol) {
    IzuchiReport rep;
    const ComplexMatrix C = models::interior_defect(model.pair);
    const ComplexMatrix X = models::interior_cross(model.pair);
    const double ar = std::abs(model.r);
    auto fail = [&](const std::string& what, double residual) {
        std::ostringstream msg;
        msg << what << " (residual " << residual << ")";
        rep.failures.push_back(msg.str());
    };

    rep.rankX = linalg::numerical_rank(X);
    rep.rankC = linalg::numerical_rank(C);
    const auto ne = linalg::normal_eig(X);
    std::size_t nonzero = 0;
    for (const cx& v : ne.values) {
        if (std::abs(v) > tol) {
            ++nonzero;
        }
        if (std::abs(v) > std::abs(rep.cross_eigenvalue)) {
            rep.cross_eigenvalue = v;
        }
    }
    rep.cross_eigenvalue_error = std::abs(rep.cross_eigenvalue - model.gamma * model.r);
    if (rep.rankX != 1 || nonzero != 1) {
        fail("cross-commutator rank " + std::to_string(rep.rankX) + ", expected 1", static_cast<double>(rep.rankX));
    }
    if (rep.cross_eigenvalue_error > tol) {
        fail("cross-commutator eigenvalue differs from gamma * r", rep.cross_eigenvalue_error);
    }
    rep.normality_residual = linalg::normality_residual(X);
    if (rep.normality_residual > tol) {
        fail("cross-commutator not normal", rep.normality_residual);
    }
    if (std::abs(model.gamma - 1.0) <= 1e-12) {
        rep.selfadjoint_residual = distance(X, X.adjoint());
        if (rep.selfadjoint_residual > tol) {
            fail("cross-commutator not self-adjoint for gamma = 1", rep.selfadjoint_residual);
        }
    }

    const auto profile = spectral::spectral_profile(C, tol);
    for (double v : profile.eigenvalues) {
        if (std::abs(v) > tol) {
            rep.defect_nonzero.push_back(v);
        }
    }
    const std::vector<double> expected{1.0, ar, -ar};
    if (rep.defect_nonzero.size() != expected.size()) {
        fail("defect has " + std::to_string(rep.defect_nonzero.size()) + " nonzero eigenvalues, expected 3",
             static_cast<double>(rep.defect_nonzero.size()));
        rep.defect_spectrum_error = 1.0;
    } else {
        for (std::size_t i = 0; i < 3; ++i) {
            rep.defect_spectrum_error = std::max(rep.defect_spectrum_error, std::abs(rep.defect_nonzero[i] - expected[i]));
        }
        if (rep.defect_spectrum_error > tol) {
            fail("defect spectrum differs from {1, |r|, -|r|}", rep.defect_spectrum_error);
        }
    }
    rep.dimE1 = profile.dimE1;
    rep.dimEminus1 = profile.dimEminus1;
    if (rep.dimE1 != 1 || rep.dimEminus1 != 0) {
        fail("dim E1 = " + std::to_string(rep.dimE1) + ", dim E-1 = " + std::to_string(rep.dimEminus1) +
                 ", expected 1 and 0",
             0.0);
    }
    rep.rank_formula = rep.rankC == 3 && rep.rankC == 2 * rep.rankX + rep.dimE1 - rep.dimEminus1;
    if (!rep.rank_formula) {
        fail("rank formula 3 = 2*1 + 1 - 0 fails with rank C = " + std::to_string(rep.rankC), 0.0);
    }
    rep.ok = rep.failures.empty();
    return rep;
}

void require_ok(const IzuchiReport& report) {
    if (report.ok) {
        return;
    }
    std::string msg = "izuchi invariants failed:";
    for (const auto& f : report.failures) {
        msg += " " + f + ";";
    }
    throw CheckFailure(msg);
}

CanonicalBasis canonical_basis_3finite(const IzuchiModel& model, double tol) {
    const auto& pair = model.pair;
    const auto& idx = pair.interior;
    const std::size_t m = idx.size();
    const ComplexMatrix C = models::interior_defect(pair);
    const auto profile = spectral::spectral_profile(C, tol);
    if (profile.dimE1 != 1 || profile.interior_pairs.size() != 1 || profile.interior_pairs[0].mult_pos != 1 ||
        profile.interior_pairs[0].mult_neg != 1) {
        throw CheckFailure("canonical_basis_3finite: expected simple eigenvalues 1, lambda, -lambda in the defect");
    }
    const auto w = models::interior_wandering(pair);

    CanonicalBasis out;
    const auto& ip = profile.interior_pairs[0];
    const double lam = ip.lambda;
    out.lambda = lam;
    const CVector f = profile.basisE1.vector(0);
    const CVector ep = ip.basis_pos.vector(0);
    const CVector em = ip.basis_neg.vector(0);

    // Off-diagonal entry of P_W1 in the (e_lambda, e_-lambda) basis.
    const cx q = inner(ep, w.pW1 * em);
    out.alpha = std::abs(q) > 0.0 ? q / std::abs(q) : cx{1.0};
    const cx ab = std::conj(out.alpha);
    const double cp = std::sqrt((1.0 + lam) / 2.0);
    const double cm = std::sqrt((1.0 - lam) / 2.0);
    CVector f1(m), f2(m), f3(m), f4(m);
    for (std::size_t i = 0; i < m; ++i) {
        f1[i] = cp * ep[i] + ab * cm * em[i];
        f4[i] = cp * ep[i] - ab * cm * em[i];
        f2[i] = cm * ep[i] + ab * cp * em[i];
        f3[i] = cm * ep[i] - ab * cp * em[i];
    }

    auto add = [&](std::string name, double r) { out.checks.push_back({std::move(name), r}); };
    auto sub = [](const CVector& a, const CVector& b) {
        CVector d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            d[i] = a[i] - b[i];
        }
        return d;
    };
    // Residual of v against its component along u (u unit).
    auto off_line = [&](const CVector& v, const CVector& u) {
        const cx c = inner(u, v);
        CVector d(v);
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] -= c * u[i];
        }
        return norm(d);
    };
    const ComplexMatrix pV1W2 = w.pW - w.pW1;

    add("f1 in W1", norm(sub(w.pW1 * f1, f1)));
    add("f3 perp W1", norm(w.pW1 * f3));
    add("<f2, f3> = -lambda", std::abs(inner(f3, f2) + lam));
    add("|f1| = |f4| = 1", std::max(std::abs(norm(f1) - 1.0), std::abs(norm(f4) - 1.0)));
    add("f1 perp f3", std::abs(inner(f1, f3)));

    const CVector uf3 = w.U * f3;
    add("U f3 in span f", off_line(uf3, f));
    const CVector uf = w.U * f;
    add("U f in span f2", off_line(uf, f2));
    CVector uf1 = w.U * f1;
    {
        CVector qv = w.pW1 * uf1;
        const cx a = inner(f, uf1);
        const cx b = inner(f1, uf1);
        for (std::size_t i = 0; i < m; ++i) {
            qv[i] -= a * f[i] + b * f1[i];
        }
        add("U f1 in ran Q", norm(sub(uf1, qv)));
    }
    {
        const CVector us4 = adjoint_times(w.U, f4);
        CVector qv = pV1W2 * us4;
        const cx a = inner(f3, us4);
        for (std::size_t i = 0; i < m; ++i) {
            qv[i] -= a * f3[i];
        }
        add("U* f4 in ran Q-perp", norm(sub(us4, qv)));
    }

    auto embed = [&](const CVector& v) {
        CVector full(pair.dim);
        for (std::size_t i = 0; i < m; ++i) {
            full[idx[i]] = v[i];
        }
        return full;
    };
    out.f = embed(f);
    out.e_plus = embed(ep);
    out.e_minus = embed(em);
    out.f1 = embed(f1);
    out.f2 = embed(f2);
    out.f3 = embed(f3);
    out.f4 = embed(f4);
    const CVector v1f = pair.V1 * out.f;
    out.beta = inner(out.f, adjoint_times(pair.V2, v1f));
    add("|beta| = lambda", std::abs(std::abs(out.beta) - lam));

    out.ok = std::ranges::all_of(out.checks, [&](const CanonicalBasis::Check& c) { return c.residual <= tol; });
    return out;
}

} // namespace isopair::izuchi
