#include "gcs.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qksvm::gcs {

namespace {

constexpr double kTailTol = 1e-12;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            deriv = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * deriv * deriv);
    }
}

struct QuadPoint {
    Complex z;
    double w; // Gauss weight x measure density, zero-weight points dropped
};

std::vector<QuadPoint> build_grid(const BasisSystem& basis, int pts_per_axis) {
    if (pts_per_axis < 2) throw InvalidArgument("quadrature grid needs >= 2 points per axis");
    std::vector<double> x, w;
    gauss_legendre(pts_per_axis, x, w);
    const double r = basis.domain.radius;

    std::vector<QuadPoint> grid;
    grid.reserve(static_cast<std::size_t>(pts_per_axis) * pts_per_axis);
    for (int i = 0; i < pts_per_axis; ++i) {
        for (int j = 0; j < pts_per_axis; ++j) {
            const Complex z(r * x[i], r * x[j]);
            if (basis.domain.kind == Domain::Disk && std::abs(z) > r) continue;
            const double weight = r * w[i] * r * w[j] * basis.measure_weight(z);
            if (weight == 0.0) continue;
            grid.push_back({z, weight});
        }
    }
    return grid;
}

double identity_deviation(const BasisSystem& basis, int pts_per_axis) {
    const int count = basis.truncation / 2 + 1; // indices 0 .. N_max/2
    const auto grid = build_grid(basis, pts_per_axis);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(count, count);
    Eigen::VectorXcd psi(count);
    for (const auto& q : grid) {
        for (int n = 0; n < count; ++n) psi(n) = basis.eval(n, q.z);
        m.noalias() += q.w * (psi.conjugate() * psi.transpose());
    }

    double dev = 0.0;
    for (int n = 0; n < count; ++n)
        for (int k = 0; k < count; ++k) {
            const double target = (n == k) ? 1.0 : 0.0;
            dev = std::max(dev, std::abs(m(n, k) - target));
        }
    return dev;
}

std::vector<Complex> probe_points(const Domain& domain) {
    std::vector<Complex> probes{Complex(0.0, 0.0)};
    const double r = domain.radius;
    for (double frac : {1.0 / 6.0, 1.0 / 3.0})
        for (int k = 0; k < 5; ++k) {
            const double ang = 2.0 * M_PI * k / 5.0;
            probes.emplace_back(frac * r * std::cos(ang), frac * r * std::sin(ang));
        }
    return probes;
}

double reproducing_residual(const BasisSystem& basis, std::span<const Complex> coeffs,
                            int pts_per_axis) {
    const int n_terms = basis.truncation + 1;
    const auto grid = build_grid(basis, pts_per_axis);

    // m_n = integral psi_n*(X') psi(X') mu(dX') for every kernel index n.
    Eigen::VectorXcd moments = Eigen::VectorXcd::Zero(n_terms);
    Eigen::VectorXcd psi_all(n_terms);
    for (const auto& q : grid) {
        for (int n = 0; n < n_terms; ++n) psi_all(n) = basis.eval(n, q.z);
        Complex fn = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) fn += coeffs[k] * psi_all(k);
        moments.noalias() += q.w * fn * psi_all.conjugate();
    }

    double residual = 0.0;
    for (const Complex& probe : probe_points(basis.domain)) {
        Complex reproduced = 0.0;
        Complex direct = 0.0;
        for (int n = 0; n < n_terms; ++n) {
            const Complex pn = basis.eval(n, probe);
            reproduced += pn * moments(n);
            if (n < static_cast<int>(coeffs.size())) direct += coeffs[n] * pn;
        }
        residual = std::max(residual, std::abs(reproduced - direct));
    }
    return residual;
}

// 10%-rule on grid doubling, with a floor below which jitter is ignored.
double refine_and_check(const std::function<double(int)>& run, QuadratureGrid grid,
                        const char* what) {
    const double coarse = run(grid.points_per_axis);
    if (!grid.check_convergence) return coarse;
    const double fine = run(grid.points_per_axis * 2);
    const double scale = std::max(coarse, fine);
    if (scale > 1e-10 && std::abs(fine - coarse) > 0.10 * scale)
        throw NumericError(std::string(what) +
                           ": quadrature not converged (refinement moved the result from " +
                           std::to_string(coarse) + " to " + std::to_string(fine) + ")");
    return fine;
}

} // namespace

BasisSystem canonical_basis(int n_max, Domain domain) {
    if (n_max < 1) throw InvalidArgument("canonical_basis: n_max must be >= 1");
    BasisSystem b;
    b.truncation = n_max;
    b.domain = domain;
    b.measure_weight = [](Complex) { return 1.0 / M_PI; };
    b.eval = [](int n, Complex x) -> Complex {
        const double r2 = std::norm(x);
        if (n == 0) return Complex(std::exp(-0.5 * r2), 0.0);
        const double r = std::abs(x);
        if (r == 0.0) return Complex(0.0, 0.0);
        // e^(-|x|^2/2) (x*)^n / sqrt(n!), magnitude through logs to dodge
        // overflow of r^n at large n.
        const double log_mag = -0.5 * r2 + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
        return std::polar(std::exp(log_mag), -n * std::arg(x));
    };
    return b;
}

double normalization(const BasisSystem& basis, Complex point) {
    double sum = 0.0;
    double last = 0.0;
    for (int n = 0; n <= basis.truncation; ++n) {
        last = std::norm(basis.eval(n, point));
        sum += last;
    }
    if (!(last < kTailTol))
        throw NumericError("normalization: series tail " + std::to_string(last) +
                           " not below 1e-12 at truncation " +
                           std::to_string(basis.truncation));
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw NumericError("normalization: sum is not positive and finite");
    return sum;
}

Complex gcs_kernel(const BasisSystem& basis, Complex x1, Complex x2) {
    Complex sum = 0.0;
    double last = 0.0;
    for (int n = 0; n <= basis.truncation; ++n) {
        const Complex a = basis.eval(n, x1);
        const Complex b = basis.eval(n, x2);
        sum += a * std::conj(b);
        last = std::abs(a) * std::abs(b);
    }
    if (!(last < kTailTol))
        throw NumericError("gcs_kernel: series tail " + std::to_string(last) +
                           " not below 1e-12 at truncation " + std::to_string(basis.truncation));
    return sum;
}

double GcsState::norm_sq() const {
    double s = 0.0;
    for (const Complex& c : coeffs) s += std::norm(c);
    return s;
}

GcsState make_state(const BasisSystem& basis, Complex point) {
    const double n_x = normalization(basis, point);
    GcsState state;
    state.point = point;
    state.coeffs.reserve(basis.truncation + 1);
    const double inv = 1.0 / std::sqrt(n_x);
    for (int n = 0; n <= basis.truncation; ++n)
        state.coeffs.push_back(std::conj(basis.eval(n, point)) * inv);
    if (std::abs(state.norm_sq() - 1.0) > 1e-8)
        throw NumericError("make_state: coefficient norm deviates from 1 beyond 1e-8");
    return state;
}

double identity_check(const BasisSystem& basis, QuadratureGrid grid) {
    return refine_and_check([&](int pts) { return identity_deviation(basis, pts); }, grid,
                            "identity_check");
}

double reproducing_check(const BasisSystem& basis, std::span<const Complex> coeffs,
                         QuadratureGrid grid) {
    if (static_cast<int>(coeffs.size()) > basis.truncation / 2 + 1)
        throw InvalidArgument(
            "reproducing_check: test-function coefficients must stop at N_max/2");
    return refine_and_check(
        [&](int pts) { return reproducing_residual(basis, coeffs, pts); }, grid,
        "reproducing_check");
}

} // namespace qksvm::gcs
