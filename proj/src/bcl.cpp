#include "isopair/bcl.hpp"

#include "isopair/error.hpp"
#include "isopair/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace isopair::bcl {

TripleValidation validate_triple(const BCLTriple& t, double tol) {
    if (t.U.rows() != t.n || t.U.cols() != t.n || t.P.rows() != t.n || t.P.cols() != t.n) {
        std::ostringstream os;
        os << "BCL triple dimension mismatch: n=" << t.n << ", U is " << t.U.rows() << "x" << t.U.cols()
           << ", P is " << t.P.rows() << "x" << t.P.cols();
        throw InputError(os.str());
    }
    TripleValidation v;
    v.unitary_residual = linalg::unitarity_residual(t.U);
    v.idempotent_residual = distance(t.P * t.P, t.P);
    v.hermitian_residual = distance(t.P, t.P.adjoint());
    std::ostringstream os;
    if (v.unitary_residual > tol) {
        os << "U not unitary (||U*U - I||_F = " << v.unitary_residual << ")";
    } else if (v.hermitian_residual > tol) {
        os << "P not Hermitian (||P - P*||_F = " << v.hermitian_residual << ")";
    } else if (v.idempotent_residual > tol) {
        os << "P not idempotent (||P^2 - P||_F = " << v.idempotent_residual << ")";
    }
    v.message = os.str();
    v.ok = v.message.empty();
    return v;
}

void require_valid(const BCLTriple& t, double tol) {
    const auto v = validate_triple(t, tol);
    if (!v.ok) {
        throw CheckFailure("invalid BCL triple: " + v.message);
    }
}

ComplexMatrix cross_commutator_on_wandering(const BCLTriple& t) {
    require_valid(t);
    const ComplexMatrix uadj = t.U.adjoint();
    const ComplexMatrix pperp = ComplexMatrix::identity(t.n) - t.P;
    return t.P * uadj * pperp * uadj;
}

WanderingOperators wandering_projections(const BCLTriple& t) {
    require_valid(t);
    const ComplexMatrix id = ComplexMatrix::identity(t.n);
    WanderingOperators w;
    w.pW1 = t.P;
    w.pV1W2 = id - t.P;
    w.pV2W1 = t.U * t.P * t.U.adjoint();
    w.pW2 = id - w.pV2W1;
    w.defect = w.pW1 - w.pV2W1;
    w.cross = cross_commutator_on_wandering(t);
    return w;
}

ToeplitzSymbols toeplitz_symbols(const BCLTriple& t) {
    require_valid(t);
    const ComplexMatrix uadj = t.U.adjoint();
    const ComplexMatrix pperp = ComplexMatrix::identity(t.n) - t.P;
    return {pperp * uadj, t.P * uadj, t.U * t.P, t.U * pperp};
}

double symbol_product_residual(const ToeplitzSymbols& s) {
    const std::size_t n = s.phi1_const.rows();
    const ComplexMatrix zero(n, n);
    const double c0 = distance(s.phi1_const * s.phi2_const, zero);
    const double c1 = distance(s.phi1_const * s.phi2_lin + s.phi1_lin * s.phi2_const, ComplexMatrix::identity(n));
    const double c2 = distance(s.phi1_lin * s.phi2_lin, zero);
    return std::max({c0, c1, c2});
}

BCLTriple random_triple(std::size_t n, std::size_t rankP, std::uint64_t seed) {
    if (rankP > n) {
        throw InputError("random_triple: rankP=" + std::to_string(rankP) + " exceeds n=" + std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    BCLTriple t;
    t.n = n;
    t.U = linalg::haar_unitary(n, rng);
    const ComplexMatrix b = linalg::haar_isometry(n, rankP, rng);
    t.P = b * b.adjoint();
    return t;
}

BCLTriple two_finite_triple(cx alpha) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
        throw InputError("two_finite_triple: alpha must be unimodular");
    }
    return {2, ComplexMatrix{{0.0, 1.0}, {alpha, 0.0}}, ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}};
}

BCLTriple direct_sum(std::span<const BCLTriple> parts) {
    if (parts.empty()) {
        throw InputError("direct_sum: no parts");
    }
    std::vector<ComplexMatrix> us, ps;
    std::size_t n = 0;
    for (const auto& p : parts) {
        us.push_back(p.U);
        ps.push_back(p.P);
        n += p.n;
    }
    return {n, block_diagonal(us), block_diagonal(ps)};
}

} // namespace isopair::bcl
