#pragma once

// Test-only reference solver for the SVM dual: projected gradient ascent on
//   L(a) = sum a_i - 1/2 a^T Q a,   Q_ij = y_i y_j K_ij,
// over the box [0, C]^N intersected with the hyperplane sum a_i y_i = 0.
// The projection is exact (bisection on the hyperplane multiplier), the
// step size comes from the largest eigenvalue of Q. Independent of the
// production solver by construction; used to pin expected objectives.

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qp_oracle {

struct Problem {
    Eigen::MatrixXd k;
    std::vector<int> y;
    double c = 1.0;
};

inline double objective(const Problem& p, const Eigen::VectorXd& a) {
    double lin = 0.0, quad = 0.0;
    const int n = static_cast<int>(p.y.size());
    for (int i = 0; i < n; ++i) {
        lin += a(i);
        for (int j = 0; j < n; ++j) quad += a(i) * a(j) * p.y[i] * p.y[j] * p.k(i, j);
    }
    return lin - 0.5 * quad;
}

// Exact Euclidean projection onto {0 <= a <= C} ∩ {y.a = 0}.
inline Eigen::VectorXd project(const Problem& p, Eigen::VectorXd a) {
    const int n = static_cast<int>(p.y.size());
    auto clipped = [&](double lambda) {
        Eigen::VectorXd out(n);
        for (int i = 0; i < n; ++i)
            out(i) = std::clamp(a(i) + lambda * p.y[i], 0.0, p.c);
        return out;
    };
    auto constraint = [&](double lambda) {
        const Eigen::VectorXd v = clipped(lambda);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += v(i) * p.y[i];
        return s;
    };
    double lo = -(p.c + a.cwiseAbs().maxCoeff() + 1.0);
    double hi = -lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (constraint(mid) > 0.0 ? hi : lo) = mid;
    }
    return clipped(0.5 * (lo + hi));
}

inline Eigen::VectorXd solve(const Problem& p, int max_iters = 400000,
                             double stall_tol = 1e-14) {
    const int n = static_cast<int>(p.y.size());
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = p.y[i] * p.y[j] * p.k(i, j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
    const double lip = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-12);
    const double step = 1.0 / lip;

    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    double best = objective(p, a);
    int quiet = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        const Eigen::VectorXd grad = Eigen::VectorXd::Ones(n) - q * a;
        a = project(p, a + step * grad);
        if (iter % 500 == 499) {
            const double now = objective(p, a);
            if (now - best < stall_tol * std::max(1.0, std::abs(now))) {
                if (++quiet >= 4) break;
            } else {
                quiet = 0;
            }
            best = std::max(best, now);
        }
    }
    return a;
}

} // namespace qp_oracle
