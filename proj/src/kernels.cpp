#include "kernels.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "specfun.hpp"

namespace qksvm {

namespace {

void check_same_dim(const FeatureVector& x, const FeatureVector& y) {
    if (x.size() != y.size())
        throw InvalidArgument("eval_kernel: dimension mismatch (" + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()) + ")");
}

double dot(const FeatureVector& x, const FeatureVector& y) {
    double s = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) s += x[p] * y[p];
    return s;
}

double sq_dist(const FeatureVector& x, const FeatureVector& y) {
    double s = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
        const double d = x[p] - y[p];
        s += d * d;
    }
    return s;
}

struct Evaluator {
    const FeatureVector& x;
    const FeatureVector& y;

    double operator()(const kernel::Linear&) const { return dot(x, y); }

    double operator()(const kernel::Polynomial& k) const {
        return std::pow(1.0 + dot(x, y), k.degree);
    }

    double operator()(const kernel::Gaussian& k) const {
        return std::exp(-sq_dist(x, y) / (2.0 * k.sigma * k.sigma));
    }

    double operator()(const kernel::OrnsteinUhlenbeck& k) const {
        return std::exp(-std::sqrt(sq_dist(x, y)) / k.gamma_len);
    }

    double operator()(const kernel::Sigmoid& k) const {
        return std::tanh(k.alpha + k.beta * dot(x, y));
    }

    // Per component: (1-a^2)^g (1-ab)^(-2g) (1-b^2)^g with a = tanh(s x_p),
    // b = tanh(s y_p) strictly inside the unit disk; value is the square of
    // the componentwise product. Unit value on the diagonal.
    double operator()(const kernel::AdS& k) const {
        double prod = 1.0;
        for (std::size_t p = 0; p < x.size(); ++p) {
            const double a = std::tanh(k.disk_scale * x[p]);
            const double b = std::tanh(k.disk_scale * y[p]);
            if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
                throw InvalidArgument("ads kernel: mapped point reached the disk boundary; "
                                      "reduce disk_scale or rescale features");
            prod *= std::pow((1.0 - a * a) * (1.0 - b * b), k.gamma) *
                    std::pow(1.0 - a * b, -2.0 * k.gamma);
        }
        return prod * prod;
    }

    // Per component: Gamma(nu+1) I_nu(2 t) / t^nu with t = sqrt(|a||b|),
    // evaluated through the entire ratio series so t = 0 gives exactly 1.
    double operator()(const kernel::PoschlTeller& k) const {
        const double gamma_nu1 = specfun::gamma_fn(k.nu + 1.0);
        double prod = 1.0;
        for (std::size_t p = 0; p < x.size(); ++p) {
            const double a = std::abs(k.encode_scale * x[p]);
            const double b = std::abs(k.encode_scale * y[p]);
            const double t = std::sqrt(a * b);
            prod *= gamma_nu1 * specfun::bessel_i_ratio(k.nu, 2.0 * t);
        }
        return prod;
    }

    // Per component with real amplitudes u = s x_p, v = s y_p and
    // d = (u-v)^2: squared modulus exp(-d) L_n(d)^2. n = 0 is the Gaussian
    // overlap exp(-|s(x-y)|^2).
    double operator()(const kernel::LaguerreCS& k) const {
        double prod = 1.0;
        for (std::size_t p = 0; p < x.size(); ++p) {
            const double diff = k.encode_scale * (x[p] - y[p]);
            const double d = diff * diff;
            const double ln = specfun::laguerre(k.n, d);
            prod *= std::exp(-d) * ln * ln;
        }
        return prod;
    }

    double operator()(const kernel::Sum& k) const {
        return eval_kernel(*k.left, x, y) + eval_kernel(*k.right, x, y);
    }

    double operator()(const kernel::Product& k) const {
        return eval_kernel(*k.left, x, y) * eval_kernel(*k.right, x, y);
    }
};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

double eval_kernel(const KernelSpec& spec, const FeatureVector& x, const FeatureVector& y) {
    check_same_dim(x, y);
    return std::visit(Evaluator{x, y}, spec.family);
}

GramMatrix gram(const KernelSpec& spec, const Dataset& d, int threads) {
    const std::size_t n = d.size();
    if (n == 0) throw DataError("gram: empty dataset");

    GramMatrix g;
    g.entries.resize(n, n);
    g.provenance = {Provenance::Exact, 0};
    g.kernel_spec = spec;

    // Flattened upper triangle including the diagonal; each worker claims
    // pairs off a shared counter and writes its own slots, so the result is
    // independent of scheduling.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

    const int nthreads = std::min<int>(resolve_threads(threads), static_cast<int>(pairs.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= pairs.size()) return;
                const auto [i, j] = pairs[k];
                const double v = eval_kernel(spec, d.points[i], d.points[j]);
                g.entries(i, j) = v;
                g.entries(j, i) = v;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(pairs.size());
        }
    };

    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return g;
}

MercerReport mercer_check(const GramMatrix& g, double tol) {
    const auto& m = g.entries;
    if (m.rows() != m.cols()) throw InvalidArgument("mercer_check: matrix must be square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw InvalidArgument("mercer_check: matrix asymmetric by " + std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("mercer_check: eigensolver failed to converge");

    MercerReport r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.max_eigenvalue = es.eigenvalues().maxCoeff();
    r.tolerance = tol;
    r.psd = r.min_eigenvalue >= -tol * std::max(1.0, r.max_eigenvalue);
    return r;
}

GramMatrix psd_repair(const GramMatrix& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.entries);
    if (es.info() != Eigen::Success)
        throw NumericError("psd_repair: eigensolver failed to converge");
    Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd rebuilt =
        es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    return symmetrize(rebuilt, g.provenance, g.kernel_spec);
}

GramMatrix diagonal_normalize(const GramMatrix& g) {
    const Eigen::Index n = g.entries.rows();
    Eigen::VectorXd d = g.entries.diagonal();
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(d(i) > 0.0))
            throw InvalidArgument("diagonal_normalize: nonpositive diagonal entry at " +
                                  std::to_string(i));
    Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
    GramMatrix out;
    out.entries = inv_sqrt.asDiagonal() * g.entries * inv_sqrt.asDiagonal();
    out.provenance = g.provenance;
    out.kernel_spec = g.kernel_spec;
    return out;
}

} // namespace qksvm
