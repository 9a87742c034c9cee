#pragma once

// Complex BLAS-1 style kernels used by every dense product in the library.
// A scalar reference implementation is always built; an AVX2/FMA variant is
// built on x86-64 and picked at runtime when the CPU supports it.
// ISOPAIR_KERNEL=scalar|avx2 overrides the choice.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace isopair::kernels {

using cx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    /// y += a * x
    void (*axpy)(std::size_t n, cx a, const cx* x, cx* y);
    /// sum conj(x_i) * y_i
    cx (*dotc)(std::size_t n, const cx* x, const cx* y);
    /// sum x_i * y_i
    cx (*dotu)(std::size_t n, const cx* x, const cx* y);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// The table selected for this process (resolved once).
const KernelTable& active();

inline void axpy(cx a, std::span<const cx> x, std::span<cx> y) {
    active().axpy(x.size(), a, x.data(), y.data());
}
inline cx dotc(std::span<const cx> x, std::span<const cx> y) {
    return active().dotc(x.size(), x.data(), y.data());
}
inline cx dotu(std::span<const cx> x, std::span<const cx> y) {
    return active().dotu(x.size(), x.data(), y.data());
}

/// Row-major C = A * B using the given table. Zero entries of A are skipped,
/// so products with the sparse shift-like matrices of the models cost
/// O(nnz(A) * cols(B)).
void gemm(const KernelTable& table, std::size_t m, std::size_t k, std::size_t n,
          const cx* a, const cx* b, cx* c);

} // namespace isopair::kernels
