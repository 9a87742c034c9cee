#pragma once

#include "isopair/complex_matrix.hpp"

#include <random>

namespace isopair::test {

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(r, c);
    for (auto& z : m.data()) {
        z = {g(rng), g(rng)};
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline CVector unit(std::size_t n, std::size_t i) {
    CVector v(n);
    v[i] = 1.0;
    return v;
}

} // namespace isopair::test
