#pragma once

#include "isopair/models.hpp"

#include <string>
#include <vector>

namespace isopair::izuchi {

/// One term c z^zexp w^wexp of a finite Laurent expansion on the torus.
struct LaurentTerm {
    int zexp = 0;
    int wexp = 0;
    cx coef;
};

/// Terms sorted by (zexp, wexp), exponents distinct.
using LaurentSeries = std::vector<LaurentTerm>;

/// sum conj(a_t) b_t over matching exponents (the L^2(T^2) inner product).
cx laurent_inner(const LaurentSeries& a, const LaurentSeries& b);
/// c z^dz w^dw * s
LaurentSeries laurent_shift(const LaurentSeries& s, int dz, int dw, cx c = 1.0);

/// g_j = sum_{k<K} r^k z^(j+k) w^-(k+1), scaled by sqrt(1 - r^2) when normalized.
LaurentSeries g_series(double r, std::size_t j, std::size_t K, bool normalized = true);

/// Smallest K with |r|^K <= 1e-14.
std::size_t minimal_K(double r);

struct IzuchiModel {
    double r = 0.0;
    cx gamma = 1.0;
    std::size_t N = 0;
    std::size_t J = 0;
    std::size_t K = 0;
    models::StructuredPair pair;
    /// max |<b_a, b_b> - delta_ab| over the basis, by exponent matching.
    double orthonormality_residual = 0.0;
    /// max |V_i(a, b) - <b_a, mult b_b>| over both matrices.
    double oracle_residual = 0.0;

    std::size_t monomial_index(std::size_t m, std::size_t n) const { return m * N + n; }
    std::size_t g_index(std::size_t j) const { return N * N + j; }
    LaurentSeries basis_series(std::size_t index) const;
};

/// Throws InputError on parameter-domain violations and CheckFailure when
/// the basis is not orthonormal to 1e-10 or the closed-form matrices
/// disagree with the oracle.
IzuchiModel build_izuchi_model(double r, cx gamma, std::size_t N, std::size_t J, std::size_t K);

struct IzuchiReport {
    bool ok = false;
    std::size_t rankX = 0;
    std::size_t rankC = 0;
    cx cross_eigenvalue;
    double cross_eigenvalue_error = 0.0;
    double normality_residual = 0.0;
    double selfadjoint_residual = 0.0; // ||X - X*||_F, checked only when gamma = 1
    std::vector<double> defect_nonzero; // descending
    double defect_spectrum_error = 0.0;
    std::size_t dimE1 = 0;
    std::size_t dimEminus1 = 0;
    bool rank_formula = false;
    std::vector<std::string> failures;
};

IzuchiReport verify_izuchi_invariants(const IzuchiModel& model, double tol = 1e-8);
/// Throws CheckFailure listing every failed check.
void require_ok(const IzuchiReport& report);

struct CanonicalBasis {
    double lambda = 0.0;
    cx alpha;    // unimodular
    cx beta;     // <V2* V1 f, f>
    CVector f, e_plus, e_minus, f1, f2, f3, f4; // full coordinates
    struct Check {
        std::string name;
        double residual = 0.0;
    };
    std::vector<Check> checks;
    bool ok = false;
};

/// Throws CheckFailure when the +1, +lambda or -lambda eigenspace is not simple.
CanonicalBasis canonical_basis_3finite(const IzuchiModel& model, double tol = 1e-8);

} // namespace isopair::izuchi
