#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "datasets.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "rng.hpp"
#include "svm.hpp"

#include "oracles/qp_oracle.hpp"

using namespace qksvm;

namespace {

// X1 = (1,0) y=+1, X2 = (-1,0) y=-1: the dual maximum along a1 = a2 = a is
// L = 2a - 2a^2, so a = 1/2 and b = 0; the decision function is f(x) = x_0.
Dataset two_point_problem() { return Dataset{{{1.0, 0.0}, {-1.0, 0.0}}, {1, -1}}; }

Dataset xor_problem() {
    return Dataset{{{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}, {1, -1, -1, 1}};
}

SolverConfig tight_config(double c) {
    SolverConfig cfg;
    cfg.C = c;
    cfg.kkt_tol = 1e-9;
    cfg.objective_tol = 1e-14;
    cfg.max_passes = 100000;
    cfg.seed = 7;
    return cfg;
}

Dataset random_problem(std::uint64_t seed, std::size_t n, std::size_t p) {
    RngStream rng(seed, 0);
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector x(p);
        for (auto& v : x) v = 4.0 * rng.next_unit() - 2.0;
        d.points.push_back(std::move(x));
        d.labels.push_back(i < n / 2 ? 1 : -1); // both classes always present
    }
    return d;
}

} // namespace

TEST_CASE("two-point analytic solution") {
    const auto d = two_point_problem();
    const auto g = gram(linear_kernel(), d);
    const auto m = solve_dual(g, d, tight_config(10.0));

    CHECK(m.alphas[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(m.alphas[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(m.bias) <= 1e-6);
    CHECK(m.support_points.size() == 2);

    CHECK(decision(m, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(decision(m, {0.0, 0.0})) <= 1e-6);
    CHECK(decision(m, {0.7, 3.0}) == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("single-class training is rejected") {
    Dataset d{{{1.0}, {2.0}}, {1, 1}};
    const auto g = gram(linear_kernel(), d);
    CHECK_THROWS_AS(solve_dual(g, d, tight_config(1.0)), DataError);
}

TEST_CASE("xor with a gaussian kernel reaches full training accuracy") {
    const auto d = xor_problem();
    const auto g = gram(gaussian_kernel(1.0), d);
    const auto m = solve_dual(g, d, tight_config(10.0));
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(predict(m, d.points[i]) == d.labels[i]);

    // objective against the projected-gradient reference
    qp_oracle::Problem prob{g.entries, d.labels, 10.0};
    const auto a_ref = qp_oracle::solve(prob);
    const double obj_ref = qp_oracle::objective(prob, a_ref);
    const double obj_smo = dual_objective(g, d.labels, m.alphas);
    CHECK(obj_smo == doctest::Approx(obj_ref).epsilon(1e-6));
}

TEST_CASE("dual feasibility holds after training") {
    const auto d = random_problem(3, 8, 2);
    const auto g = gram(gaussian_kernel(0.8), d);
    const auto m = solve_dual(g, d, tight_config(5.0));
    double balance = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(m.alphas[i] >= 0.0);
        CHECK(m.alphas[i] <= 5.0);
        balance += m.alphas[i] * d.labels[i];
    }
    CHECK(std::abs(balance) <= 1e-8);
}

TEST_CASE("smo matches the projected-gradient oracle on seeded problems") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t n = 4 + seed % 5; // 4..8
        const auto d = random_problem(seed, n, 2);
        const auto g = gram(gaussian_kernel(1.0), d);
        const double c = (seed % 2) ? 10.0 : 1.0;

        const auto m = solve_dual(g, d, tight_config(c));
        qp_oracle::Problem prob{g.entries, d.labels, c};
        const double obj_ref = qp_oracle::objective(prob, qp_oracle::solve(prob));
        const double obj_smo = dual_objective(g, d.labels, m.alphas);
        CHECK(std::abs(obj_smo - obj_ref) <= 1e-6 * std::max(1.0, std::abs(obj_ref)));

        const auto report = kkt_report(m, g, d.labels, 1e-3);
        CHECK(report.converged);
    }
}

TEST_CASE("monotone objective assertion stays quiet during training") {
    auto cfg = tight_config(10.0);
    cfg.check_monotone_objective = true;
    const auto d = random_problem(11, 8, 3);
    const auto g = gram(gaussian_kernel(1.0), d);
    CHECK_NOTHROW(solve_dual(g, d, cfg));
}

TEST_CASE("prediction convention at zero and signs") {
    SvmModel empty;
    empty.bias = 0.0;
    CHECK(decision(empty, {1.0}) == 0.0);
    CHECK(predict(empty, {1.0}) == 1); // tie -> +1
    empty.bias = -0.25;
    CHECK(predict(empty, {1.0}) == -1);
    empty.bias = 0.25;
    CHECK(predict(empty, {1.0}) == 1);
}

TEST_CASE("kkt report: converged model, perturbed model, all-zero model") {
    const auto d = two_point_problem();
    const auto g = gram(linear_kernel(), d);
    auto m = solve_dual(g, d, tight_config(10.0));

    const auto good = kkt_report(m, g, d.labels, 1e-3);
    CHECK(good.converged);
    CHECK(good.worst_violation <= 1e-6);

    auto perturbed = m;
    perturbed.alphas[0] += 0.2;
    const auto bad = kkt_report(perturbed, g, d.labels, 1e-3);
    CHECK(!bad.converged);

    SvmModel zeros = m;
    zeros.alphas = {0.0, 0.0};
    zeros.bias = 0.0;
    const auto slack = kkt_report(zeros, g, d.labels, 1e-3);
    CHECK(slack.worst_violation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(slack.violations[0] == doctest::Approx(1.0).epsilon(1e-12)); // margin deficit
}

TEST_CASE("primal weights of the linear model") {
    const auto d = two_point_problem();
    const auto g = gram(linear_kernel(), d);
    const auto m = solve_dual(g, d, tight_config(10.0));
    const auto w = primal_weights(m);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(w[1]) <= 1e-9);

    // kernel-trick consistency on random probes
    RngStream rng(55, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const FeatureVector x{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0};
        const double via_kernel = decision(m, x);
        const double via_weights = w[0] * x[0] + w[1] * x[1] + m.bias;
        CHECK(std::abs(via_kernel - via_weights) <= 1e-10);
    }
}

TEST_CASE("primal weights require the linear family") {
    const auto d = xor_problem();
    const auto g = gram(gaussian_kernel(1.0), d);
    const auto m = solve_dual(g, d, tight_config(10.0));
    CHECK_THROWS_AS(primal_weights(m), InvalidArgument);
}

TEST_CASE("scaling the data by two halves the hard-margin weight norm") {
    auto solve_weights = [](double scale) {
        Dataset d{{{scale, 0.0}, {-scale, 0.0}}, {1, -1}};
        const auto g = gram(linear_kernel(), d);
        qp_oracle::Problem prob{g.entries, d.labels, 1e6};
        const auto a = qp_oracle::solve(prob);
        double w0 = 0.0;
        for (int i = 0; i < 2; ++i) w0 += a(i) * d.labels[i] * d.points[i][0];
        return std::abs(w0);
    };
    const double w1 = solve_weights(1.0);
    const double w2 = solve_weights(2.0);
    CHECK(w2 == doctest::Approx(0.5 * w1).epsilon(1e-4));
}

TEST_CASE("duplicating a non-support point leaves the decision unchanged") {
    const auto d = random_problem(21, 8, 2);
    const auto g = gram(gaussian_kernel(1.2), d);
    const auto m = solve_dual(g, d, tight_config(1.0));

    // find a point strictly outside the support set
    std::size_t loose = d.size();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (m.alphas[i] <= m.sv_threshold) {
            loose = i;
            break;
        }
    REQUIRE(loose < d.size());

    Dataset dup = d;
    dup.points.push_back(d.points[loose]);
    dup.labels.push_back(d.labels[loose]);
    const auto g2 = gram(gaussian_kernel(1.2), dup);
    const auto m2 = solve_dual(g2, dup, tight_config(1.0));

    RngStream rng(22, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const FeatureVector x{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0};
        CHECK(std::abs(decision(m, x) - decision(m2, x)) <= 1e-6);
    }
}

TEST_CASE("lssvm solves the two-point problem") {
    const auto d = two_point_problem();
    const auto g = gram(linear_kernel(), d);
    const auto m = solve_lssvm(g, d, 10.0);
    CHECK(m.support_points.size() == 2); // every point is a support vector
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(predict(m, d.points[i]) == d.labels[i]);
}

TEST_CASE("lssvm approaches the hard-margin solution as reg grows") {
    const auto d = two_point_problem();
    const auto g = gram(linear_kernel(), d);
    const auto ls = solve_lssvm(g, d, 1e4);
    const auto smo = solve_dual(g, d, tight_config(1e4));
    RngStream rng(23, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const FeatureVector x{4.0 * rng.next_unit() - 2.0, 4.0 * rng.next_unit() - 2.0};
        CHECK(std::abs(decision(ls, x) - decision(smo, x)) <= 1e-3);
    }
}

TEST_CASE("lssvm rejects a single point") {
    Dataset d{{{1.0}}, {1}};
    const auto g = gram(linear_kernel(), d);
    CHECK_THROWS_AS(solve_lssvm(g, d, 1.0), DataError);
}

TEST_CASE("separable moons: gaussian beats linear on training accuracy") {
    const auto d = data::make_two_moons(5, 60, 0.15);
    auto accuracy = [&](const KernelSpec& spec) {
        const auto g = gram(spec, d);
        SolverConfig cfg;
        cfg.C = 10.0;
        cfg.kkt_tol = 1e-5;
        cfg.objective_tol = 1e-10;
        cfg.max_passes = 100000;
        cfg.seed = 1;
        const auto m = solve_dual(g, d, cfg);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (predict(m, d.points[i]) == d.labels[i]) ++hits;
        return static_cast<double>(hits) / d.size();
    };
    const double gauss_acc = accuracy(gaussian_kernel(1.0));
    const double linear_acc = accuracy(linear_kernel());
    CHECK(gauss_acc >= 0.95);
    CHECK(linear_acc < gauss_acc);
}
