#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "coherent.hpp"
#include "errors.hpp"
#include "gcs.hpp"
#include "rng.hpp"

using namespace qksvm;
using namespace qksvm::gcs;

namespace {

Complex canonical_closed_form(Complex a, Complex b) {
    // <a|b> = exp(a* b - (|a|^2 + |b|^2)/2)
    return std::exp(std::conj(a) * b - 0.5 * (std::norm(a) + std::norm(b)));
}

} // namespace

TEST_CASE("canonical normalization is identically one") {
    const auto basis = canonical_basis();
    CHECK(normalization(basis, Complex(0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-13));
    RngStream rng(41, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex a(6.0 * rng.next_unit() - 3.0, 6.0 * rng.next_unit() - 3.0);
        CHECK(normalization(basis, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("normalization scales quadratically with the basis") {
    auto basis = canonical_basis(32);
    auto doubled = basis;
    auto inner = basis.eval;
    doubled.eval = [inner](int n, Complex x) { return 2.0 * inner(n, x); };
    const Complex a(0.7, -0.3);
    CHECK(normalization(doubled, a) ==
          doctest::Approx(4.0 * normalization(basis, a)).epsilon(1e-12));
}

TEST_CASE("normalization reports a divergent tail") {
    auto basis = canonical_basis(8); // far too small for |a| = 3
    CHECK_THROWS_AS(normalization(basis, Complex(3.0, 0.0)), NumericError);
}

TEST_CASE("gcs_kernel reproduces the canonical closed form") {
    const auto basis = canonical_basis();
    RngStream rng(42, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const Complex a(6.0 * rng.next_unit() - 3.0, 6.0 * rng.next_unit() - 3.0);
        const Complex b(6.0 * rng.next_unit() - 3.0, 6.0 * rng.next_unit() - 3.0);
        const Complex got = gcs_kernel(basis, a, b);
        const Complex want = canonical_closed_form(a, b);
        CHECK(std::abs(got - want) <= 1e-10);
    }
}

TEST_CASE("gcs_kernel diagonal equals the normalization") {
    const auto basis = canonical_basis();
    RngStream rng(43, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex a(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const Complex diag = gcs_kernel(basis, a, a);
        CHECK(std::abs(diag.imag()) <= 1e-14);
        CHECK(diag.real() == doctest::Approx(normalization(basis, a)).epsilon(1e-10));
    }
}

TEST_CASE("gcs_kernel is Hermitian-symmetric") {
    const auto basis = canonical_basis();
    RngStream rng(44, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex a(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const Complex b(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        CHECK(std::abs(gcs_kernel(basis, a, b) - std::conj(gcs_kernel(basis, b, a))) <= 1e-12);
    }
}

TEST_CASE("squared kernel modulus matches the coherent overlap") {
    const auto basis = canonical_basis();
    RngStream rng(45, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex a(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const Complex b(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
        const double via_gcs = std::norm(gcs_kernel(basis, a, b));
        const CoherentPoint pa{{a}}, pb{{b}};
        CHECK(via_gcs == doctest::Approx(overlap_sq(pa, pb)).epsilon(1e-10));
    }
}

TEST_CASE("gcs states are normalized") {
    const auto basis = canonical_basis();
    const auto s = make_state(basis, Complex(1.5, -0.5));
    CHECK(std::abs(s.norm_sq() - 1.0) <= 1e-8);
    CHECK(s.coeffs.size() == 65);
}

TEST_CASE("gram of the gcs kernel is PSD after diagonal normalization") {
    const auto basis = canonical_basis();
    RngStream rng(46, 0);
    const int n = 8;
    Eigen::MatrixXcd k(n, n);
    std::vector<Complex> pts;
    for (int i = 0; i < n; ++i)
        pts.emplace_back(4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = gcs_kernel(basis, pts[i], pts[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    const double max_eig = es.eigenvalues().maxCoeff();
    CHECK(min_eig >= -1e-8 * std::max(1.0, max_eig));
}

TEST_CASE("identity check: canonical orthonormality to 1e-6 for n,m <= 10") {
    const auto basis = canonical_basis(20, {Domain::Square, 6.0});
    const double dev = identity_check(basis, {200, true});
    CHECK(dev <= 1e-6);
}

TEST_CASE("identity check: diagonal near one, off-diagonal near zero") {
    const auto basis = canonical_basis(12, {Domain::Square, 6.0});
    CHECK(identity_check(basis, {150, true}) <= 1e-6);
}

TEST_CASE("reproducing residual for psi_0 and psi_3 on the disk of radius 6") {
    const auto basis = canonical_basis(64, {Domain::Disk, 6.0});
    const std::vector<Complex> psi0{Complex(1.0, 0.0)};
    CHECK(reproducing_check(basis, psi0, {200, true}) <= 1e-6);

    const std::vector<Complex> psi3{Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                                    Complex(1.0, 0.0)};
    CHECK(reproducing_check(basis, psi3, {200, true}) <= 1e-6);
}

TEST_CASE("reproducing residual vanishes for the zero function") {
    const auto basis = canonical_basis(32, {Domain::Disk, 6.0});
    const std::vector<Complex> zero{Complex(0.0, 0.0)};
    CHECK(reproducing_check(basis, zero, {80, false}) == 0.0);
}

TEST_CASE("reproducing check rejects coefficients beyond N_max/2") {
    const auto basis = canonical_basis(8);
    const std::vector<Complex> too_many(6, Complex(1.0, 0.0));
    CHECK_THROWS_AS(reproducing_check(basis, too_many, {40, false}), InvalidArgument);
}

TEST_CASE("a mixed test function is reproduced as well") {
    const auto basis = canonical_basis(32, {Domain::Disk, 6.0});
    const std::vector<Complex> mixed{Complex(0.5, 0.0), Complex(0.0, -0.5),
                                     Complex(0.25, 0.25)};
    CHECK(reproducing_check(basis, mixed, {150, true}) <= 1e-6);
}
