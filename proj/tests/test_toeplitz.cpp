#include "isopair/bcl.hpp"
#include "isopair/error.hpp"
#include "isopair/toeplitz.hpp"

#include <doctest.h>

using namespace isopair;
using namespace isopair::toeplitz;

TEST_CASE("build_truncated_pair on the trivial triple") {
    bcl::BCLTriple t{2, ComplexMatrix::identity(2), ComplexMatrix(2, 2)};
    const auto p = build_truncated_pair(t, 3);
    CHECK(distance(p.V1, ComplexMatrix::identity(6)) == 0.0);
    ComplexMatrix shift(6, 6);
    for (std::size_t i = 0; i + 2 < 6; ++i) {
        shift(i + 2, i) = 1.0;
    }
    CHECK(distance(p.V2, shift) == 0.0);
    CHECK_THROWS_AS(build_truncated_pair(t, 1), InputError);
}

TEST_CASE("2-finite pair commutes on the degree-0 block") {
    const auto p = build_truncated_pair(bcl::two_finite_triple(cx{0, 1}), 2);
    const ComplexMatrix c = p.V1 * p.V2 - p.V2 * p.V1;
    CHECK(degree_block(p, c, 0, 0).max_abs() == 0.0);
    CHECK(degree_block(p, c, 1, 0).max_abs() == 0.0);
}

TEST_CASE("random pairs are commuting isometries on the exact window") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const auto p = build_truncated_pair(bcl::random_triple(2 + s % 5, s % 3, s), 4);
        const auto c = check_truncated_pair(p);
        CHECK(c.commutator_residual < 1e-12);
        CHECK(c.isometry_residual < 1e-12);
        CHECK(c.shift_residual < 1e-12);
    }
}

TEST_CASE("oracle degree-0 blocks") {
    bcl::BCLTriple comm{2, ComplexMatrix::identity(2), ComplexMatrix::diagonal(std::vector<double>{1, 0})};
    const auto oc = oracle_cross_and_defect(build_truncated_pair(comm, 3));
    CHECK(oc.C_deg0.max_abs() < 1e-15);
    CHECK(oc.X_deg0.max_abs() < 1e-15);

    const cx alpha = std::polar(1.0, -2.0);
    const auto o2 = oracle_cross_and_defect(build_truncated_pair(bcl::two_finite_triple(alpha), 3));
    CHECK(distance(o2.X_deg0, ComplexMatrix{{std::conj(alpha), 0.0}, {0.0, 0.0}}) < 1e-15);

    CHECK_THROWS_AS(oracle_cross_and_defect(build_truncated_pair(comm, 2)), InputError);
}

TEST_CASE("oracle agrees with the closed forms on random triples") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto t = bcl::random_triple(1 + s % 12, s % 5 % (1 + s % 12 + 1), 500 + s);
        const auto w = bcl::wandering_projections(t);
        const auto o = oracle_cross_and_defect(build_truncated_pair(t, kDefaultDegreeCap));
        CHECK(distance(o.C_deg0, w.defect) <= 1e-12);
        CHECK(distance(o.X_deg0, w.cross) <= 1e-12);
        CHECK(o.C_leak <= 1e-12);
        CHECK(o.X_leak <= 1e-12);
    }
}

TEST_CASE("exact window excludes only the top degree") {
    const auto p = build_truncated_pair(bcl::random_triple(3, 1, 4), 5);
    const auto w = exact_window(p);
    CHECK(w.size() == 12);
    CHECK(w.back() == 11);
}
