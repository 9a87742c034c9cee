#include "helpers.hpp"
#include "isopair/kernels.hpp"

#include <doctest.h>

using namespace isopair;
namespace k = isopair::kernels;

namespace {

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVector v(n);
    for (auto& z : v) {
        z = {g(rng), g(rng)};
    }
    return v;
}

} // namespace

TEST_CASE("scalar kernels match naive loops") {
    std::mt19937_64 rng(1);
    const auto& s = k::scalar_table();
    const CVector x = random_vector(13, rng);
    CVector y = random_vector(13, rng);
    const CVector y0 = y;
    const cx a{0.3, -1.2};
    s.axpy(x.size(), a, x.data(), y.data());
    cx dc, du;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(y[i] - (y0[i] + a * x[i])) < 1e-15);
        dc += std::conj(x[i]) * y0[i];
        du += x[i] * y0[i];
    }
    CHECK(std::abs(s.dotc(x.size(), x.data(), y0.data()) - dc) < 1e-13);
    CHECK(std::abs(s.dotu(x.size(), x.data(), y0.data()) - du) < 1e-13);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const k::KernelTable* v = k::avx2_table();
    if (v == nullptr) {
        MESSAGE("AVX2 variant unavailable on this machine; nothing to compare");
        return;
    }
    const auto& s = k::scalar_table();
    std::mt19937_64 rng(2);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 31u, 64u, 257u}) {
        CAPTURE(n);
        const CVector x = random_vector(n, rng);
        const CVector y = random_vector(n, rng);
        const cx a{-0.7, 0.4};
        CVector ys = y, yv = y;
        s.axpy(n, a, x.data(), ys.data());
        v->axpy(n, a, x.data(), yv.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(ys[i] - yv[i]) <= 1e-14 * (1.0 + std::abs(ys[i])));
        }
        const double scale = 1e-13 * (1.0 + static_cast<double>(n));
        CHECK(std::abs(s.dotc(n, x.data(), y.data()) - v->dotc(n, x.data(), y.data())) <= scale);
        CHECK(std::abs(s.dotu(n, x.data(), y.data()) - v->dotu(n, x.data(), y.data())) <= scale);
    }
}

TEST_CASE("gemm through either table gives the same product") {
    std::mt19937_64 rng(3);
    ComplexMatrix a = test::random_matrix(9, 11, rng);
    a(2, 3) = 0.0; // exercised by the zero-skip path
    const ComplexMatrix b = test::random_matrix(11, 6, rng);
    ComplexMatrix ref(9, 6);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            for (std::size_t p = 0; p < 11; ++p) {
                ref(i, j) += a(i, p) * b(p, j);
            }
        }
    }
    ComplexMatrix cs(9, 6);
    k::gemm(k::scalar_table(), 9, 11, 6, a.data().data(), b.data().data(), cs.data().data());
    CHECK(distance(cs, ref) < 1e-12);
    if (const auto* v = k::avx2_table()) {
        ComplexMatrix cv(9, 6);
        k::gemm(*v, 9, 11, 6, a.data().data(), b.data().data(), cv.data().data());
        CHECK(distance(cv, ref) < 1e-12);
    }
    CHECK(distance(a * b, ref) < 1e-12);
}

TEST_CASE("the active table is one of the compiled variants") {
    const auto name = k::active().name;
    CHECK((name == k::scalar_table().name || (k::avx2_table() != nullptr && name == k::avx2_table()->name)));
}
