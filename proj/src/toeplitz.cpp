#include "isopair/toeplitz.hpp"

#include "isopair/error.hpp"

#include <algorithm>
#include <numeric>

namespace isopair::toeplitz {

namespace {

ComplexMatrix block_bidiagonal(const ComplexMatrix& diag, const ComplexMatrix& sub, std::size_t n, std::size_t N) {
    ComplexMatrix m(n * N, n * N);
    for (std::size_t k = 0; k < N; ++k) {
        m.set_block(k * n, k * n, diag);
        if (k + 1 < N) {
            m.set_block((k + 1) * n, k * n, sub);
        }
    }
    return m;
}

double max_abs_on(const ComplexMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                  std::size_t skip_below) {
    double worst = 0.0;
    for (std::size_t i : rows) {
        for (std::size_t j : cols) {
            if (i < skip_below && j < skip_below) {
                continue;
            }
            worst = std::max(worst, std::abs(m(i, j)));
        }
    }
    return worst;
}

} // namespace

TruncatedToeplitzPair build_truncated_pair(const bcl::BCLTriple& t, std::size_t N) {
    if (N < 2) {
        throw InputError("build_truncated_pair: degree cap N=" + std::to_string(N) + " must be at least 2");
    }
    const auto sym = bcl::toeplitz_symbols(t);
    return {t.n, N, block_bidiagonal(sym.phi1_const, sym.phi1_lin, t.n, N),
            block_bidiagonal(sym.phi2_const, sym.phi2_lin, t.n, N)};
}

ComplexMatrix degree_block(const TruncatedToeplitzPair& pair, const ComplexMatrix& m, std::size_t i,
                           std::size_t j) {
    return m.block(i * pair.n, j * pair.n, pair.n, pair.n);
}

std::vector<std::size_t> exact_window(const TruncatedToeplitzPair& pair) {
    std::vector<std::size_t> idx(pair.n * (pair.N - 1));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

OracleResult oracle_cross_and_defect(const TruncatedToeplitzPair& pair) {
    if (pair.N < 3) {
        throw InputError("oracle_cross_and_defect: need N >= 3 so degree 0 is clear of truncation, got N=" +
                         std::to_string(pair.N));
    }
    const ComplexMatrix v1a = pair.V1.adjoint();
    const ComplexMatrix v2a = pair.V2.adjoint();
    OracleResult r;
    r.C_full = ComplexMatrix::identity(pair.V1.rows()) - pair.V1 * v1a - pair.V2 * v2a + pair.V1 * pair.V2 * v1a * v2a;
    r.X_full = v2a * pair.V1 - pair.V1 * v2a;
    r.C_deg0 = degree_block(pair, r.C_full, 0, 0);
    r.X_deg0 = degree_block(pair, r.X_full, 0, 0);
    const auto window = exact_window(pair);
    r.C_leak = max_abs_on(r.C_full, window, window, pair.n);
    r.X_leak = max_abs_on(r.X_full, window, window, pair.n);
    return r;
}

PairChecks check_truncated_pair(const TruncatedToeplitzPair& pair) {
    const auto window = exact_window(pair);
    const std::size_t dim = pair.V1.rows();
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});

    PairChecks c;
    const ComplexMatrix v12 = pair.V1 * pair.V2;
    const ComplexMatrix comm = v12 - pair.V2 * pair.V1;
    c.commutator_residual = comm.select_cols(window).frobenius_norm();

    const ComplexMatrix id = ComplexMatrix::identity(window.size());
    for (const ComplexMatrix* v : {&pair.V1, &pair.V2}) {
        const ComplexMatrix cols = v->select_cols(window);
        c.isometry_residual = std::max(c.isometry_residual, distance(adjoint_times(cols, cols), id));
    }

    ComplexMatrix shift(dim, dim);
    for (std::size_t k = 0; k + 1 < pair.N; ++k) {
        shift.set_block((k + 1) * pair.n, k * pair.n, ComplexMatrix::identity(pair.n));
    }
    c.shift_residual = (v12 - shift).select_cols(window).frobenius_norm();
    return c;
}

} // namespace isopair::toeplitz
