#include "fock.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "errors.hpp"

namespace qksvm::fock {

namespace {

// Fraction of a coherent state's weight lost to truncation at dim levels:
// upper Poisson tail of mean |alpha|^2 beyond n = dim-1.
double truncation_defect(double abs_alpha, int dim) {
    const double lambda = abs_alpha * abs_alpha;
    double term = std::exp(-lambda);
    double cum = term;
    for (int n = 1; n < dim; ++n) {
        term *= lambda / n;
        cum += term;
    }
    return 1.0 - cum;
}

} // namespace

Eigen::MatrixXcd annihilation(int dim) {
    if (dim < 2) throw InvalidArgument("annihilation: dimension must be >= 2");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd displacement(Complex alpha, int dim) {
    const Eigen::MatrixXcd a = annihilation(dim);
    const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

FockState coherent_state(Complex alpha, int dim) {
    FockState s;
    s.coeffs = displacement(alpha, dim).col(0);
    return s;
}

int truncation_dim(double max_abs_alpha) {
    const double m = std::abs(max_abs_alpha);
    return static_cast<int>(std::ceil(m * m + 10.0 * m + 20.0));
}

std::array<double, 4> fock_oracle_probs(Complex a1, Complex a2, Prepared prepared, int dim) {
    if (dim < 2) throw InvalidArgument("fock_oracle_probs: dimension must be >= 2");
    const double m = std::max(std::abs(a1), std::abs(a2));
    if (truncation_defect(m, dim) > 1e-10)
        throw NumericError("fock_oracle_probs: truncation " + std::to_string(dim) +
                           " insufficient for |alpha| = " + std::to_string(m) +
                           " (need >= " + std::to_string(truncation_dim(m)) + ")");

    // Joint state O(n, m) over (signal mode, vacuum mode).
    const Complex prep_amp = (prepared == Prepared::State1) ? a1 : a2;
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(dim, dim);
    joint.col(0) = coherent_state(prep_amp, dim).coeffs;

    // 50-50 beam splitter. exp[theta (a† v - a v†)] conserves total photon
    // number, so it acts exactly on each anti-diagonal block; the mirror that
    // completes the Hadamard (determinant -1) is a sign flip on the odd
    // levels of the second mode. Blocks with total number >= dim carry no
    // input weight here (second mode starts in vacuum).
    const double theta = M_PI / 4.0;
    for (int ntot = 1; ntot < dim; ++ntot) {
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(ntot + 1, ntot + 1);
        for (int k = 0; k < ntot; ++k) {
            const double c = std::sqrt(static_cast<double>(k + 1) *
                                       static_cast<double>(ntot - k));
            gen(k + 1, k) = c;  // a† v : |k, ntot-k> -> |k+1, ntot-k-1>
            gen(k, k + 1) = -c; // a v†
        }
        const Eigen::MatrixXd rot = (theta * gen).exp();
        Eigen::VectorXcd block(ntot + 1);
        for (int k = 0; k <= ntot; ++k) block(k) = joint(k, ntot - k);
        block = rot * block;
        for (int k = 0; k <= ntot; ++k) joint(k, ntot - k) = block(k);
    }
    for (int col = 1; col < dim; col += 2) joint.col(col) *= -1.0;

    // Detector projectors |b1><b1| (x) |b2><b2| and complements.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Eigen::VectorXcd b1 = coherent_state(a1 * inv_sqrt2, dim).coeffs;
    const Eigen::VectorXcd b2 = coherent_state(a2 * inv_sqrt2, dim).coeffs;

    const Eigen::RowVectorXcd w = b1.adjoint() * joint; // <b1| on mode 1
    const Eigen::VectorXcd u = joint * b2.conjugate();  // <b2| on mode 2
    const double q1 = w.squaredNorm();
    const double q2 = u.squaredNorm();
    const Complex both = w * b2.conjugate();
    const double q12 = std::norm(both);
    const double total = joint.squaredNorm();

    return {q1 - q12, q2 - q12, q12, total - q1 - q2 + q12};
}

} // namespace qksvm::fock
