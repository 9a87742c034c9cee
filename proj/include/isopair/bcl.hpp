#pragma once

#include "isopair/complex_matrix.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace isopair::bcl {

inline constexpr double kTripleTol = 1e-10;

/// (n, U, P): a unitary U and an orthogonal projection P on the
/// n-dimensional wandering space of V1 V2. P projects onto ker V1*.
struct BCLTriple {
    std::size_t n = 0;
    ComplexMatrix U;
    ComplexMatrix P;
};

struct TripleValidation {
    bool ok = false;
    double unitary_residual = 0.0;    // ||U*U - I||_F
    double idempotent_residual = 0.0; // ||P^2 - P||_F
    double hermitian_residual = 0.0;  // ||P - P*||_F
    std::string message;              // first violated check, empty when ok
};

/// Throws InputError when U and P do not match n.
TripleValidation validate_triple(const BCLTriple& t, double tol = kTripleTol);

/// Throws CheckFailure carrying the report when the triple is invalid.
void require_valid(const BCLTriple& t, double tol = kTripleTol);

/// The four wandering-subspace projections on C^n, plus the defect and the
/// cross-commutator restricted to the wandering space.
struct WanderingOperators {
    ComplexMatrix pW1;   // P
    ComplexMatrix pV1W2; // I - P
    ComplexMatrix pV2W1; // U P U*
    ComplexMatrix pW2;   // I - U P U*
    ComplexMatrix defect;
    ComplexMatrix cross;
};

WanderingOperators wandering_projections(const BCLTriple& t);

/// [V2*, V1] on the wandering space: X = P U* (I - P) U*.
ComplexMatrix cross_commutator_on_wandering(const BCLTriple& t);

/// Coefficients of the degree-one symbols Phi1(z) = (P^perp + zP)U* and
/// Phi2(z) = U(P + zP^perp).
struct ToeplitzSymbols {
    ComplexMatrix phi1_const; // (I - P) U*
    ComplexMatrix phi1_lin;   // P U*
    ComplexMatrix phi2_const; // U P
    ComplexMatrix phi2_lin;   // U (I - P)
};

ToeplitzSymbols toeplitz_symbols(const BCLTriple& t);

/// Largest coefficient residual of Phi1(z) Phi2(z) = z I.
double symbol_product_residual(const ToeplitzSymbols& s);

/// Haar U and a projection onto rankP Haar-random orthonormal columns.
/// Deterministic in seed.
BCLTriple random_triple(std::size_t n, std::size_t rankP, std::uint64_t seed);

/// The 2x2 triple U = [[0,1],[alpha,0]], P = diag(1,0) realising the
/// irreducible 2-finite block with cross-commutator eigenvalue conj(alpha).
BCLTriple two_finite_triple(cx alpha);

/// Block-diagonal sum of triples.
BCLTriple direct_sum(std::span<const BCLTriple> parts);

} // namespace isopair::bcl
