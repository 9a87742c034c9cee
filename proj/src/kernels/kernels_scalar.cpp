#include "isopair/kernels.hpp"

namespace isopair::kernels {
namespace {

void axpy_scalar(std::size_t n, cx a, const cx* x, cx* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

cx dotc_scalar(std::size_t n, const cx* x, const cx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cx dotu_scalar(std::size_t n, const cx* x, const cx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", &axpy_scalar, &dotc_scalar, &dotu_scalar};
    return table;
}

} // namespace isopair::kernels
