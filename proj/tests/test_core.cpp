#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "datasets.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "types.hpp"

using namespace qksvm;

TEST_CASE("validate_dataset accepts a well-formed two-point set") {
    Dataset d{{{1.0, 0.0}, {-1.0, 0.0}}, {1, -1}};
    const auto r = validate_dataset(d);
    CHECK(r.ok());
    CHECK(r.warnings.empty());
    CHECK(r.n == 2);
    CHECK(r.p == 2);
    CHECK(r.n_pos == 1);
    CHECK(r.n_neg == 1);
}

TEST_CASE("validate_dataset warns on a single class") {
    Dataset d{{{1.0}, {2.0}}, {1, 1}};
    const auto r = validate_dataset(d);
    CHECK(r.ok());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings.front().find("single class") != std::string::npos);
}

TEST_CASE("validate_dataset flags NaN entries") {
    Dataset d{{{1.0, std::numeric_limits<double>::quiet_NaN()}, {0.0, 1.0}}, {1, -1}};
    const auto r = validate_dataset(d);
    CHECK(!r.ok());
}

TEST_CASE("validate_dataset flags dimension mismatch and bad labels") {
    Dataset d{{{1.0, 2.0}, {1.0}}, {1, 0}};
    const auto r = validate_dataset(d);
    REQUIRE(!r.ok());
    CHECK(r.errors.size() == 2);
}

TEST_CASE("symmetrize averages mirrored entries") {
    Eigen::MatrixXd raw(2, 2);
    raw << 1.0, 0.4, 0.6, 1.0;
    const auto g = symmetrize(raw);
    CHECK(g.entries(0, 1) == 0.5);
    CHECK(g.entries(1, 0) == 0.5);
    CHECK(g.entries(0, 0) == 1.0);
}

TEST_CASE("symmetrize leaves symmetric input unchanged and handles 1x1") {
    Eigen::MatrixXd raw(2, 2);
    raw << 2.0, -0.3, -0.3, 1.0;
    CHECK((symmetrize(raw).entries - raw).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd scalar(1, 1);
    scalar << 0.9;
    CHECK(symmetrize(scalar).entries(0, 0) == 0.9);
}

TEST_CASE("symmetrize is exactly idempotent") {
    RngStream rng(7, 0);
    Eigen::MatrixXd raw(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) raw(i, j) = rng.next_unit() * 4.0 - 2.0;
    const auto once = symmetrize(raw);
    const auto twice = symmetrize(once.entries);
    CHECK((once.entries - twice.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symmetrize rejects non-square input") {
    CHECK_THROWS_AS(symmetrize(Eigen::MatrixXd::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("rng streams reproduce bit-identical sequences") {
    RngStream a(1234, 77), b(1234, 77);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids give distinct sequences") {
    RngStream a(1234, 1), b(1234, 2);
    int agree = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64()) ++agree;
    CHECK(agree == 0);
}

TEST_CASE("substream derivation ignores parent consumption") {
    RngStream parent(42, 9);
    RngStream child_before = parent.substream(3);
    parent.next_u64();
    parent.next_u64();
    RngStream child_after = parent.substream(3);
    for (int i = 0; i < 100; ++i) CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("next_unit stays in [0, 1) and looks uniform") {
    RngStream rng(5, 5);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("cluster generator is deterministic and labelled both ways") {
    const auto a = data::make_two_clusters(99, 40, 3, 3.0);
    const auto b = data::make_two_clusters(99, 40, 3, 3.0);
    REQUIRE(a.size() == 40);
    CHECK(a.dim() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.labels[i] == b.labels[i]);
        for (std::size_t q = 0; q < a.dim(); ++q) CHECK(a.points[i][q] == b.points[i][q]);
    }
    CHECK(validate_dataset(a).ok());
    CHECK(validate_dataset(a).warnings.empty());
}

TEST_CASE("moons generator produces a valid planar set") {
    const auto d = data::make_two_moons(3, 60, 0.15);
    REQUIRE(d.size() == 60);
    CHECK(d.dim() == 2);
    CHECK(validate_dataset(d).ok());
}
