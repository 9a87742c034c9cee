#pragma once

#include "isopair/complex_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace isopair::linalg {

inline constexpr double kDefaultClusterTol = 1e-8;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kRankFloor = 1e-12;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; column j of `vectors` belongs to values[j].
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
    /// Frobenius mass of the decoupled (numerically zero) rows/columns that
    /// were split off before the dense solve; eigenvalues move by at most this.
    double dropped_norm = 0.0;
};

/// Each eigenvector is phase-normalised so its first entry of largest modulus
/// is real and non-negative.
HermitianEigen hermitian_eig(const ComplexMatrix& a, double tol = kHermitianTol);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

/// max(rows, cols) * 1e-12, the relative cut-off used when none is given.
double default_rank_tol(const ComplexMatrix& a);

/// Count of singular values above max(tol * sigma_max, 1e-12).
std::size_t numerical_rank(const ComplexMatrix& a, double tol);
std::size_t numerical_rank(const ComplexMatrix& a);

/// Indices whose row or column holds an entry above drop_tol.
std::vector<std::size_t> coupled_indices(const ComplexMatrix& a, double drop_tol);

/// Rotate v so that its first entry of (near-)largest modulus is real >= 0.
void phase_normalize(std::span<cx> v);

/// A subspace of C^n carried by an orthonormal basis (columns).
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim); // the zero subspace
    /// Throws InputError unless basis* basis = I within kOrthonormalTol.
    explicit Subspace(ComplexMatrix basis);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const ComplexMatrix& basis() const noexcept { return basis_; }
    CVector vector(std::size_t j) const { return basis_.column(j); }

    ComplexMatrix projector() const;
    /// ||v - P v||
    double distance_to(std::span<const cx> v) const;

private:
    std::size_t ambient_;
    ComplexMatrix basis_;
};

/// Orthonormal basis of the column space (singular values above tol * sigma_max).
Subspace range_of(const ComplexMatrix& a, double tol = 1e-10);

/// Eigenvectors of a Hermitian matrix whose eigenvalue lies in [lo, hi].
Subspace eigenspace(const HermitianEigen& eig, double lo, double hi);

/// Orthonormal basis of the range of a (near-)projection: eigenvalues >= 1/2.
Subspace projection_range(const ComplexMatrix& p);

Subspace orthogonal_complement(const Subspace& s);

/// Span of the union of two subspaces of the same ambient space.
Subspace span_union(const Subspace& a, const Subspace& b, double tol = 1e-10);

/// Eigenspace of P1 + P2 at eigenvalue 2 (within tol).
Subspace subspace_intersection(const Subspace& s1, const Subspace& s2, double tol = kDefaultClusterTol);
/// Same, starting from the two orthogonal projections.
Subspace projector_intersection(const ComplexMatrix& p1, const ComplexMatrix& p2, double tol = kDefaultClusterTol);

/// Largest principal-angle sine between two subspaces of equal dimension
/// (0 when they coincide). Returns 1 when dimensions differ.
double subspace_gap(const Subspace& a, const Subspace& b);

/// Schur-based diagonalisation of a normal matrix. For normal input the
/// Schur factor is diagonal and the Schur vectors are orthonormal
/// eigenvectors, including inside degenerate eigenspaces.
struct NormalEigen {
    CVector values;
    ComplexMatrix vectors;
    /// ||strictly upper part of the Schur factor||_F; zero for exactly normal input.
    double offdiag_norm = 0.0;
};
NormalEigen normal_eig(const ComplexMatrix& a);

/// ||A A* - A* A||_F
double normality_residual(const ComplexMatrix& a);

/// Largest of ||P^2 - P||_F and ||P - P*||_F.
double projection_residual(const ComplexMatrix& p);

/// ||U* U - I||_F
double unitarity_residual(const ComplexMatrix& u);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);

/// n x k matrix with Haar-random orthonormal columns.
ComplexMatrix haar_isometry(std::size_t n, std::size_t k, std::mt19937_64& rng);

} // namespace isopair::linalg
