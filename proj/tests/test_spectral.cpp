#include "helpers.hpp"
#include "isopair/error.hpp"
#include "isopair/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace isopair;
using namespace isopair::spectral;

TEST_CASE("spectral_profile of diag(1, 0.5, -0.5)") {
    const auto p = spectral_profile(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.5, -0.5}));
    CHECK(p.dimE1 == 1);
    CHECK(p.dimEminus1 == 0);
    REQUIRE(p.interior_pairs.size() == 1);
    CHECK(p.interior_pairs[0].lambda == doctest::Approx(0.5));
    CHECK(p.interior_pairs[0].mult_pos == 1);
    CHECK(p.interior_pairs[0].mult_neg == 1);
    CHECK(p.dimKplus == 1);
    CHECK(p.kernel_dim == 0);
    CHECK_FALSE(p.violation());
}

TEST_CASE("spectral_profile of the zero matrix and of bad input") {
    const auto p = spectral_profile(ComplexMatrix(4, 4));
    CHECK(p.kernel_dim == 4);
    CHECK(p.dimE1 + p.dimEminus1 + p.dimKplus == 0);
    CHECK(p.interior_pairs.empty());

    CHECK_THROWS_AS(spectral_profile(ComplexMatrix::diagonal(std::vector<double>{1.5, 0.0})), InputError);
    CHECK_THROWS_AS(spectral_profile(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), InputError);
    const auto lop = spectral_profile(ComplexMatrix::diagonal(std::vector<double>{0.4, -0.2}));
    CHECK(lop.violation());
}

TEST_CASE("interior spectrum of random defects is symmetric") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        const std::size_t n = 1 + s % 12;
        const auto t = bcl::random_triple(n, (s * 5) % (n + 1), 9000 + s);
        CHECK_FALSE(spectral_profile(bcl::wandering_projections(t).defect).violation());
    }
}

TEST_CASE("rank formula on hand-computed triples") {
    bcl::BCLTriple comm{3, ComplexMatrix::identity(3), ComplexMatrix::diagonal(std::vector<double>{1, 0, 0})};
    auto r = check_rank_formula(comm);
    CHECK(r.rankC == 0);
    CHECK(r.rankX == 0);
    CHECK(r.both_identities_hold);

    r = check_rank_formula(bcl::two_finite_triple(cx{0, 1}));
    CHECK(r.rankC == 2);
    CHECK(r.rankX == 1);
    CHECK(r.dimE1 == 1);
    CHECK(r.dimEminus1 == 1);
    CHECK(r.both_identities_hold);
}

TEST_CASE("rank formula on random triples") {
    for (std::uint64_t s = 0; s < 500; ++s) {
        const std::size_t n = 2 + s % 15;
        const auto r = check_rank_formula(bcl::random_triple(n, (s * 7) % (n + 1), s));
        CHECK(r.both_identities_hold);
    }
}

TEST_CASE("build_difference_projections: trivial and one-dimensional generic block") {
    DiffProjCanonicalForm f;
    f.dimE1 = 1;
    auto d = build_difference_projections(f);
    CHECK(distance(d.A, ComplexMatrix::diagonal(std::vector<double>{1.0})) == 0.0);

    DiffProjCanonicalForm g;
    g.D = ComplexMatrix::diagonal(std::vector<double>{0.5});
    g.Uc = ComplexMatrix::identity(1);
    d = build_difference_projections(g);
    const double s = std::sqrt(0.75);
    CHECK(distance(d.P, ComplexMatrix{{0.75, s / 2}, {s / 2, 0.25}}) < 1e-15);
    CHECK(distance(d.Q, ComplexMatrix{{0.25, s / 2}, {s / 2, 0.75}}) < 1e-15);
    CHECK(distance(d.A, d.P - d.Q) < 1e-15);

    DiffProjCanonicalForm ker;
    ker.kerdim = 1;
    ker.R = ComplexMatrix(1, 1);
    ker.dimE1 = 1;
    d = build_difference_projections(ker);
    CHECK(distance(d.A, ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0})) == 0.0);
    CHECK(distance(d.P, ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0})) == 0.0);
    CHECK(d.Q.max_abs() == 0.0);
}

TEST_CASE("build_difference_projections rejects invalid forms") {
    DiffProjCanonicalForm f;
    f.D = ComplexMatrix::diagonal(std::vector<double>{0.3, 0.6});
    f.Uc = ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(build_difference_projections(f), InputError);
    f.D = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.6});
    f.Uc = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(build_difference_projections(f), InputError);
}

TEST_CASE("random canonical forms give projections with full-rank generic blocks") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_canonical_form(8, rng);
        const auto d = build_difference_projections(f);
        CHECK(linalg::projection_residual(d.P) < 1e-10);
        CHECK(linalg::projection_residual(d.Q) < 1e-10);
        CHECK(distance(d.A, d.P - d.Q) < 1e-10);
        const std::size_t k = f.D.rows();
        std::vector<std::size_t> g(d.generic_dim);
        for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] = d.generic_offset + j;
        }
        CHECK(linalg::numerical_rank(d.P.submatrix(g, g)) == k);
        CHECK(linalg::numerical_rank(d.Q.submatrix(g, g)) == k);
    }
}

TEST_CASE("eigen_symmetry_check") {
    DiffProjCanonicalForm f;
    f.D = ComplexMatrix::diagonal(std::vector<double>{0.3});
    f.Uc = ComplexMatrix::identity(1);
    const auto d = build_difference_projections(f);
    auto r = eigen_symmetry_check(d.A, d.P, d.Q);
    CHECK(r.symmetric);
    REQUIRE(r.clusters.size() == 1);
    CHECK(std::get<0>(r.clusters[0]) == doctest::Approx(0.3));
    CHECK(std::get<1>(r.clusters[0]) == 1);
    CHECK(std::get<2>(r.clusters[0]) == 1);

    const auto p = ComplexMatrix::diagonal(std::vector<double>{1, 0});
    const auto q = ComplexMatrix::diagonal(std::vector<double>{0, 1});
    r = eigen_symmetry_check(p - q, p, q);
    CHECK(r.symmetric);
    CHECK(r.clusters.empty());

    CHECK_THROWS_AS(eigen_symmetry_check(ComplexMatrix::identity(2), p, q), CheckFailure);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto bp = linalg::haar_isometry(10, 1 + rng() % 9, rng);
        const auto bq = linalg::haar_isometry(10, 1 + rng() % 9, rng);
        const ComplexMatrix P = bp * bp.adjoint();
        const ComplexMatrix Q = bq * bq.adjoint();
        CHECK(eigen_symmetry_check(P - Q, P, Q).symmetric);
    }
}
