#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "coherent.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "ptrace.hpp"
#include "rng.hpp"

using namespace qksvm;

TEST_CASE("single point reduces to a scalar density") {
    Dataset d{{{3.0, 4.0}}, {1}};
    const auto res = partial_trace_density(d);
    CHECK(res.n_psi == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(res.rho_aux.rows() == 1);
    CHECK(std::abs(res.rho_aux(0, 0) - Complex(1.0, 0.0)) <= 1e-15);

    const auto g = gram_via_partial_trace(d);
    CHECK(g.entries(0, 0) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(g.provenance.kind == Provenance::PartialTrace);
}

TEST_CASE("orthogonal unit points give the maximally mixed reduced state") {
    Dataset d{{{1.0, 0.0}, {0.0, 1.0}}, {1, -1}};
    const auto res = partial_trace_density(d);
    CHECK(std::abs(res.rho_aux(0, 0) - Complex(0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(res.rho_aux(1, 1) - Complex(0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(res.rho_aux(0, 1)) <= 1e-15);

    const auto g = gram_via_partial_trace(d);
    CHECK(std::abs(g.entries(0, 0) - 1.0) <= 1e-14);
    CHECK(std::abs(g.entries(1, 1) - 1.0) <= 1e-14);
    CHECK(std::abs(g.entries(0, 1)) <= 1e-14);
}

TEST_CASE("partial-trace gram equals the direct linear gram on random data") {
    RngStream rng(101, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 5; // up to 6
        const std::size_t p = 1 + rng.next_u64() % 8; // up to 8
        Dataset d;
        for (std::size_t i = 0; i < n; ++i) {
            FeatureVector x(p);
            for (auto& v : x) v = 4.0 * rng.next_unit() - 2.0;
            d.points.push_back(std::move(x));
            d.labels.push_back(i % 2 ? 1 : -1);
        }
        const auto via_trace = gram_via_partial_trace(d);
        const auto direct = gram(linear_kernel(), d);
        CHECK((via_trace.entries - direct.entries).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("reduced density matrix is Hermitian, unit trace, PSD") {
    RngStream rng(102, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset d;
        const std::size_t n = 2 + rng.next_u64() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            FeatureVector x(4);
            for (auto& v : x) v = 2.0 * rng.next_unit() - 1.0;
            d.points.push_back(std::move(x));
            d.labels.push_back(1);
        }
        d.labels.back() = -1;
        const auto res = partial_trace_density(d);
        CHECK((res.rho_aux - res.rho_aux.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(res.rho_aux.trace().real() - 1.0) <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(res.rho_aux,
                                                           Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("all-zero dataset is rejected") {
    Dataset d{{{0.0, 0.0}, {0.0, 0.0}}, {1, -1}};
    CHECK_THROWS_AS(gram_via_partial_trace(d), DataError);
}
