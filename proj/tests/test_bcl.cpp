#include "helpers.hpp"
#include "isopair/bcl.hpp"
#include "isopair/error.hpp"
#include "isopair/linalg.hpp"

#include <doctest.h>

#include <numbers>

using namespace isopair;
using namespace isopair::bcl;

TEST_CASE("validate_triple") {
    BCLTriple ok{2, ComplexMatrix::identity(2), ComplexMatrix::diagonal(std::vector<double>{1, 0})};
    CHECK(validate_triple(ok).ok);

    BCLTriple bad{2, ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, ComplexMatrix{{1.0, 1.0}, {0.0, 0.0}}};
    const auto v = validate_triple(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.hermitian_residual > 0.5);
    CHECK(v.message.find("Hermitian") != std::string::npos);
    CHECK_THROWS_AS(require_valid(bad), CheckFailure);

    BCLTriple shape{3, ComplexMatrix::identity(2), ComplexMatrix::identity(3)};
    CHECK_THROWS_AS(validate_triple(shape), InputError);

    CHECK(validate_triple(random_triple(7, 3, 42)).ok);
}

TEST_CASE("wandering projections of the commuting and 2-finite triples") {
    BCLTriple comm{3, ComplexMatrix::identity(3), ComplexMatrix::diagonal(std::vector<double>{1, 1, 0})};
    const auto w = wandering_projections(comm);
    CHECK(distance(w.pV2W1, comm.P) == 0.0);
    CHECK(w.defect.max_abs() == 0.0);
    CHECK(cross_commutator_on_wandering(comm).max_abs() == 0.0);

    const cx alpha = std::polar(1.0, 0.9);
    const auto t = two_finite_triple(alpha);
    const auto w2 = wandering_projections(t);
    CHECK(distance(w2.pV2W1, ComplexMatrix::diagonal(std::vector<double>{0, 1})) < 1e-15);
    CHECK(distance(w2.defect, ComplexMatrix::diagonal(std::vector<double>{1, -1})) < 1e-15);
    CHECK(distance(w2.cross, ComplexMatrix{{std::conj(alpha), 0.0}, {0.0, 0.0}}) < 1e-15);
}

TEST_CASE("projection pairs sum to the identity") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto t = random_triple(2 + s % 9, s % 3, s);
        const auto w = wandering_projections(t);
        const auto id = ComplexMatrix::identity(t.n);
        CHECK(distance(w.pW1 + w.pV1W2, id) < 1e-12);
        CHECK(distance(w.pW2 + w.pV2W1, id) < 1e-12);
    }
}

TEST_CASE("Toeplitz symbols multiply to z I") {
    BCLTriple p0{2, ComplexMatrix::identity(2), ComplexMatrix(2, 2)};
    auto s = toeplitz_symbols(p0);
    CHECK(distance(s.phi1_const, ComplexMatrix::identity(2)) == 0.0);
    CHECK(s.phi1_lin.max_abs() == 0.0);
    CHECK(s.phi2_const.max_abs() == 0.0);
    CHECK(distance(s.phi2_lin, ComplexMatrix::identity(2)) == 0.0);

    BCLTriple p1{2, ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
    s = toeplitz_symbols(p1);
    CHECK(distance(s.phi1_lin, ComplexMatrix::identity(2)) == 0.0);
    CHECK(distance(s.phi2_const, ComplexMatrix::identity(2)) == 0.0);

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        CHECK(symbol_product_residual(toeplitz_symbols(random_triple(1 + seed % 10, seed % 4 % (1 + seed % 10 + 1), seed))) < 1e-12);
    }
}

TEST_CASE("random_triple") {
    const auto zero = random_triple(4, 0, 3);
    CHECK(zero.P.max_abs() == 0.0);
    CHECK(wandering_projections(zero).defect.max_abs() == 0.0);
    const auto full = random_triple(4, 4, 3);
    CHECK(distance(full.P, ComplexMatrix::identity(4)) < 1e-12);
    CHECK(wandering_projections(full).defect.max_abs() < 1e-12);

    const auto a = random_triple(6, 2, 77);
    const auto b = random_triple(6, 2, 77);
    CHECK(distance(a.U, b.U) == 0.0);
    CHECK(distance(a.P, b.P) == 0.0);
    CHECK(linalg::numerical_rank(a.P) == 2);
    CHECK_THROWS_AS(random_triple(3, 4, 1), InputError);
}

TEST_CASE("direct sums of triples are block diagonal") {
    const std::vector<BCLTriple> parts{two_finite_triple(1.0), random_triple(3, 1, 9)};
    const auto s = direct_sum(parts);
    CHECK(s.n == 5);
    CHECK(validate_triple(s).ok);
    const auto w = wandering_projections(s);
    CHECK(distance(w.defect.block(0, 0, 2, 2), wandering_projections(parts[0]).defect) < 1e-14);
    CHECK(distance(w.defect.block(2, 2, 3, 3), wandering_projections(parts[1]).defect) < 1e-14);
    CHECK(w.defect.block(0, 2, 2, 3).max_abs() == 0.0);
}
