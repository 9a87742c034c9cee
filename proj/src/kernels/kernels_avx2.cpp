// Compiled with -mavx2 -mfma; only reached through avx2_table() after a CPU check.
#include "isopair/kernels.hpp"

#include <immintrin.h>

namespace isopair::kernels::detail {
namespace {

// Two complex doubles per __m256d, interleaved [re0, im0, re1, im1].

void axpy_avx2(std::size_t n, cx a, const cx* x, cx* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    auto* xd = reinterpret_cast<const double*>(x);
    auto* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101); // [im0, re0, im1, re1]
        // ar*x -/+ ai*swap(x) -> [ar re - ai im, ar im + ai re]
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

double hsum_even_odd(__m256d v, bool subtract_odd) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return subtract_odd ? (t[0] + t[2]) - (t[1] + t[3]) : (t[0] + t[2]) + (t[1] + t[3]);
}

// acc_same accumulates x*y lane-wise -> [xr yr, xi yi];
// acc_swap accumulates x*swap(y)      -> [xr yi, xi yr].
template <bool Conj>
cx dot_avx2(std::size_t n, const cx* x, const cx* y) {
    auto* xd = reinterpret_cast<const double*>(x);
    auto* yd = reinterpret_cast<const double*>(y);
    __m256d acc_same = _mm256_setzero_pd();
    __m256d acc_swap = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_same = _mm256_fmadd_pd(xv, yv, acc_same);
        acc_swap = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_swap);
    }
    double re, im;
    if constexpr (Conj) {
        re = hsum_even_odd(acc_same, false);
        im = hsum_even_odd(acc_swap, true);
    } else {
        re = hsum_even_odd(acc_same, true);
        im = hsum_even_odd(acc_swap, false);
    }
    cx tail{0.0, 0.0};
    for (; i < n; ++i) {
        tail += Conj ? std::conj(x[i]) * y[i] : x[i] * y[i];
    }
    return cx(re, im) + tail;
}

} // namespace

const KernelTable& avx2_table_unchecked() {
    static const KernelTable table{"avx2", &axpy_avx2, &dot_avx2<true>, &dot_avx2<false>};
    return table;
}

} // namespace isopair::kernels::detail
