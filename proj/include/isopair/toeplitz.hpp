#pragma once

#include "isopair/bcl.hpp"

namespace isopair::toeplitz {

inline constexpr std::size_t kDefaultDegreeCap = 4;

/// Analytic Toeplitz pair (M_Phi1, M_Phi2) on C^n (x) C^N: the coefficient
/// of z^k occupies block k, k = 0..N-1; the degree-N overflow is dropped.
struct TruncatedToeplitzPair {
    std::size_t n = 0;
    std::size_t N = 0;
    ComplexMatrix V1;
    ComplexMatrix V2;
};

TruncatedToeplitzPair build_truncated_pair(const bcl::BCLTriple& t, std::size_t N);

/// Block (i, j) of an nN x nN matrix.
ComplexMatrix degree_block(const TruncatedToeplitzPair& pair, const ComplexMatrix& m, std::size_t i,
                           std::size_t j);

/// Indices of degrees 0..N-2, where every action of V1, V2 and their
/// adjoints is unaffected by the dropped overflow.
std::vector<std::size_t> exact_window(const TruncatedToeplitzPair& pair);

struct OracleResult {
    ComplexMatrix C_full; // I - V1V1* - V2V2* + V1V2V1*V2*
    ComplexMatrix X_full; // V2*V1 - V1V2*
    ComplexMatrix C_deg0;
    ComplexMatrix X_deg0;
    /// Largest modulus outside the degree-0 block, within the exact window.
    double C_leak = 0.0;
    double X_leak = 0.0;
};

OracleResult oracle_cross_and_defect(const TruncatedToeplitzPair& pair);

struct PairChecks {
    double commutator_residual = 0.0; // ||(V1V2 - V2V1)|window||
    double isometry_residual = 0.0;   // max_i ||(Vi*Vi - I)|window||
    double shift_residual = 0.0;      // ||(V1V2 - S)|window||, S the one-block shift
};

PairChecks check_truncated_pair(const TruncatedToeplitzPair& pair);

} // namespace isopair::toeplitz
