#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "fock.hpp"
#include "rng.hpp"

using namespace qksvm;
using namespace qksvm::fock;

TEST_CASE("displacement operators are unitary on the truncated space") {
    for (Complex alpha : {Complex(0.5, 0.0), Complex(1.0, -2.0), Complex(0.0, 2.5)}) {
        const int dim = truncation_dim(std::abs(alpha));
        const Eigen::MatrixXcd d = displacement(alpha, dim);
        const double defect =
            (d.adjoint() * d - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
        CHECK(defect <= 1e-12);
    }
}

TEST_CASE("displaced vacuum matches the analytic coherent expansion") {
    const Complex alpha(1.2, -0.4);
    const int dim = truncation_dim(std::abs(alpha));
    const FockState s = coherent_state(alpha, dim);
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!)
    double log_fact = 0.0;
    for (int n = 0; n < 12; ++n) {
        if (n > 0) log_fact += std::log(static_cast<double>(n));
        const Complex expected = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) /
                                 std::sqrt(std::exp(log_fact));
        CHECK(std::abs(s.coeffs(n) - expected) <= 1e-10);
    }
}

TEST_CASE("truncation rule keeps the norm defect under 1e-10") {
    for (double a : {0.5, 1.5, 3.0}) {
        const int dim = truncation_dim(a);
        const FockState s = coherent_state(Complex(a, 0.0), dim);
        CHECK(std::abs(1.0 - s.norm_sq()) <= 1e-10);
    }
}

TEST_CASE("oracle rejects insufficient truncation") {
    CHECK_THROWS_AS(fock_oracle_probs(Complex(3.0, 0.0), Complex(-3.0, 0.0),
                                      Prepared::State1, 12),
                    NumericError);
}

TEST_CASE("oracle at identical states concentrates on the both-detectors outcome") {
    const Complex a(0.5, 0.0);
    const auto p = fock_oracle_probs(a, a, Prepared::State1, truncation_dim(0.5));
    CHECK(std::abs(p[0]) <= 1e-8);
    CHECK(std::abs(p[1]) <= 1e-8);
    CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(p[3]) <= 1e-8);
}

TEST_CASE("oracle reproduces the analytic two-state distribution at (0, 1)") {
    const auto p = fock_oracle_probs(Complex(0.0, 0.0), Complex(1.0, 0.0), Prepared::State1,
                                     truncation_dim(1.0));
    const double r = std::exp(-0.5);
    CHECK(std::abs(p[0] - (1.0 - r)) <= 1e-8);
    CHECK(std::abs(p[1]) <= 1e-8);
    CHECK(std::abs(p[2] - r) <= 1e-8);
    CHECK(std::abs(p[3]) <= 1e-8);
}

TEST_CASE("oracle agrees with the analytic route on random amplitudes") {
    RngStream rng(23, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex a1(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const Complex a2(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const Prepared prep = trial % 2 ? Prepared::State1 : Prepared::State2;
        const int dim = truncation_dim(std::max(std::abs(a1), std::abs(a2)));
        const auto numeric = fock_oracle_probs(a1, a2, prep, dim);
        const auto analytic = povm_probs(a1, a2, prep);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(numeric[i] - analytic[i]) <= 1e-8);
            sum += numeric[i];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-8);
    }
}
