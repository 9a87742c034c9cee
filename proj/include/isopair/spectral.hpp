#pragma once

#include "isopair/bcl.hpp"
#include "isopair/linalg.hpp"

#include <cstdint>
#include <optional>
#include <tuple>
#include <random>
#include <vector>

namespace isopair::spectral {

using linalg::Subspace;

/// An interior eigenvalue cluster lambda in (0,1) together with its mirror
/// cluster at -lambda.
struct InteriorPair {
    double lambda = 0.0;
    std::size_t mult_pos = 0;
    std::size_t mult_neg = 0;
    Subspace basis_pos;
    Subspace basis_neg;
};

/// Eigen-data of a defect operator: E1, E-1, symmetric interior pairs and
/// the kernel.
struct SpectralProfile {
    std::size_t ambient_dim = 0;
    std::size_t dimE1 = 0;
    std::size_t dimEminus1 = 0;
    Subspace basisE1{0};
    Subspace basisEminus1{0};
    std::vector<InteriorPair> interior_pairs;
    std::size_t dimKplus = 0;
    std::size_t kernel_dim = 0;
    /// Interior eigenvalues left without a negated partner.
    std::vector<double> unpaired;
    bool violation() const noexcept { return !unpaired.empty(); }
    /// All eigenvalues, descending.
    std::vector<double> eigenvalues;
};

/// Throws InputError for non-Hermitian input or ||C||_2 > 1 + 1e-8.
SpectralProfile spectral_profile(const ComplexMatrix& defect, double cluster_tol = linalg::kDefaultClusterTol);

struct RankFormulaReport {
    std::size_t rankC = 0;
    std::size_t rankX = 0;
    std::size_t dimE1 = 0;
    std::size_t dimEminus1 = 0;
    std::size_t dimKplus = 0;
    bool index_identity = false; // rankC = rankX + dimE1 + dimKplus
    bool rank_identity = false;  // rankC = 2 rankX + dimE1 - dimEminus1
    bool both_identities_hold = false;
    bool symmetric = false;      // no unpaired interior eigenvalue
};

/// Rank identities for a defect/cross pair already restricted to the
/// wandering space (or an interior window).
RankFormulaReport rank_formula(const ComplexMatrix& defect, const ComplexMatrix& cross,
                               std::optional<double> rank_tol = std::nullopt,
                               double cluster_tol = linalg::kDefaultClusterTol);

RankFormulaReport check_rank_formula(const bcl::BCLTriple& t, std::optional<double> rank_tol = std::nullopt,
                                     double cluster_tol = linalg::kDefaultClusterTol);

/// Canonical data of a difference of two projections
/// A = 0_ker (+) I_E1 (+) -I_E-1 (+) D (+) -D.
struct DiffProjCanonicalForm {
    std::size_t kerdim = 0;
    std::size_t dimE1 = 0;
    std::size_t dimEminus1 = 0;
    ComplexMatrix D;  // diagonal, entries strictly inside (0, 1)
    ComplexMatrix R;  // projection on ker A
    ComplexMatrix Uc; // unitary on K commuting with D
};

struct DifferenceProjections {
    ComplexMatrix A;
    ComplexMatrix P;
    ComplexMatrix Q;
    /// Offset and size of the generic K (+) K block inside A, P, Q.
    std::size_t generic_offset = 0;
    std::size_t generic_dim = 0;
};

/// Throws InputError when Uc fails to commute with D, D is not a strict
/// diagonal contraction, or R is not a projection.
DifferenceProjections build_difference_projections(const DiffProjCanonicalForm& form);

/// Random valid canonical form: repeated D values with Uc block-diagonal
/// over the repeated groups, R a random projection.
DiffProjCanonicalForm random_canonical_form(std::size_t max_generic_dim, std::mt19937_64& rng);

struct SymmetryReport {
    bool precondition_ok = false;
    double difference_residual = 0.0; // ||A - (P - Q)||_F
    double projection_residual = 0.0; // worst of P and Q
    bool symmetric = false;
    /// (lambda, mult at +lambda, mult at -lambda) per positive interior cluster.
    std::vector<std::tuple<double, std::size_t, std::size_t>> clusters;
    std::vector<double> unpaired;
};

/// Throws CheckFailure when A, P, Q fail the difference-of-projections
/// precondition.
SymmetryReport eigen_symmetry_check(const ComplexMatrix& A, const ComplexMatrix& P, const ComplexMatrix& Q,
                                    double tol = linalg::kDefaultClusterTol);

} // namespace isopair::spectral
