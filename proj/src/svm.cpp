#include "svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "kernels.hpp"
#include "rng.hpp"

namespace qksvm {

namespace {

constexpr double kSnapFactor = 1e-12; // box-boundary snap, relative to C

struct Smo {
    const Eigen::MatrixXd& k;
    const std::vector<int>& y;
    const SolverConfig& cfg;
    std::vector<double> alpha;
    std::vector<double> e; // E_i = f(X_i) - y_i at the current working bias
    double b = 0.0;
    bool warned_indefinite = false;
    RngStream tie_rng;

    Smo(const Eigen::MatrixXd& k, const std::vector<int>& y, const SolverConfig& cfg)
        : k(k), y(y), cfg(cfg), alpha(y.size(), 0.0), e(y.size()),
          tie_rng(cfg.seed, 0x534d4full) {
        refresh_errors();
    }

    std::size_t n() const { return y.size(); }

    void refresh_errors() {
        for (std::size_t i = 0; i < n(); ++i) {
            double f = b;
            for (std::size_t j = 0; j < n(); ++j) f += alpha[j] * y[j] * k(j, i);
            e[i] = f - y[i];
        }
    }

    // Bias that minimizes the worst KKT violation at the current multipliers:
    // free-vector average when free vectors exist, otherwise the midpoint of
    // the feasible interval. Called at pass boundaries so the violation scan
    // is not misled by a drifted working bias.
    double select_bias() const {
        const double thr = kSnapFactor * cfg.C;
        double free_sum = 0.0;
        std::size_t free_count = 0;
        double lower = -std::numeric_limits<double>::infinity();
        double upper = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n(); ++i) {
            double g = 0.0;
            for (std::size_t j = 0; j < n(); ++j) g += alpha[j] * y[j] * k(j, i);
            const double v = y[i] - g;
            const bool at_zero = alpha[i] <= thr;
            const bool at_c = alpha[i] >= cfg.C - thr;
            if (!at_zero && !at_c) {
                free_sum += v;
                ++free_count;
            }
            if ((y[i] > 0 && !at_c) || (y[i] < 0 && !at_zero)) lower = std::max(lower, v);
            if ((y[i] < 0 && !at_c) || (y[i] > 0 && !at_zero)) upper = std::min(upper, v);
        }
        if (free_count > 0) return free_sum / static_cast<double>(free_count);
        if (std::isfinite(lower) && std::isfinite(upper)) return 0.5 * (lower + upper);
        if (std::isfinite(lower)) return lower;
        if (std::isfinite(upper)) return upper;
        return 0.0;
    }

    bool violates(std::size_t i) const {
        const double r = y[i] * e[i];
        return (r < -cfg.kkt_tol && alpha[i] < cfg.C) || (r > cfg.kkt_tol && alpha[i] > 0.0);
    }

    double objective() const {
        double lin = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n(); ++i) {
            lin += alpha[i];
            for (std::size_t j = 0; j < n(); ++j)
                quad += alpha[i] * alpha[j] * y[i] * y[j] * k(i, j);
        }
        return lin - 0.5 * quad;
    }

    // Dual gain of moving alpha_j to aj_new with alpha_i compensating.
    double objective_gain(std::size_t i, std::size_t j, double aj_new) const {
        const double s = y[i] * y[j];
        const double daj = aj_new - alpha[j];
        const double dai = -s * daj;
        const double ui = e[i] + y[i] - b; // sum_k a_k y_k K_ik
        const double uj = e[j] + y[j] - b;
        return dai + daj - y[i] * dai * ui - y[j] * daj * uj -
               0.5 * (dai * dai * k(i, i) + daj * daj * k(j, j)) -
               dai * daj * s * k(i, j);
    }

    double snap_to_box(double a) const {
        const double snap = kSnapFactor * cfg.C;
        if (a < snap) return 0.0;
        if (a > cfg.C - snap) return cfg.C;
        return a;
    }

    bool try_update(std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double ai = alpha[i], aj = alpha[j];
        const int yi = y[i], yj = y[j];

        double lo, hi;
        if (yi != yj) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(cfg.C, cfg.C + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - cfg.C);
            hi = std::min(cfg.C, ai + aj);
        }
        if (hi - lo <= 0.0) return false;

        const double eta = k(i, i) + k(j, j) - 2.0 * k(i, j);
        double aj_new;
        if (eta > 0.0) {
            aj_new = std::clamp(aj + yj * (e[i] - e[j]) / eta, lo, hi);
        } else {
            // Flat or concave-up along the pair direction: the maximum sits
            // at a box end. Pick the better end, require a real gain.
            if (!warned_indefinite && cfg.warn) {
                cfg.warn("gram matrix not positive definite along a working pair; "
                         "convergence is not guaranteed");
                warned_indefinite = true;
            }
            const double gain_lo = objective_gain(i, j, lo);
            const double gain_hi = objective_gain(i, j, hi);
            if (std::max(gain_lo, gain_hi) <= 0.0) return false;
            aj_new = gain_lo >= gain_hi ? lo : hi;
        }

        if (std::abs(aj_new - aj) < cfg.objective_tol * (aj_new + aj + cfg.objective_tol))
            return false;

        double obj_before = 0.0;
        if (cfg.check_monotone_objective) obj_before = objective();

        aj_new = snap_to_box(aj_new);
        const double daj = aj_new - aj;
        const double ai_new = snap_to_box(ai - yi * yj * daj);
        const double dai = ai_new - ai;
        alpha[i] = ai_new;
        alpha[j] = aj_new;

        const double b1 = b - e[i] - yi * dai * k(i, i) - yj * daj * k(i, j);
        const double b2 = b - e[j] - yi * dai * k(i, j) - yj * daj * k(j, j);
        double b_new;
        if (alpha[i] > 0.0 && alpha[i] < cfg.C)
            b_new = b1;
        else if (alpha[j] > 0.0 && alpha[j] < cfg.C)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);

        const double db = b_new - b;
        for (std::size_t t = 0; t < n(); ++t)
            e[t] += yi * dai * k(i, t) + yj * daj * k(j, t) + db;
        b = b_new;

        if (cfg.check_monotone_objective) {
            const double obj_after = objective();
            if (obj_after < obj_before - 1e-9 * (1.0 + std::abs(obj_before)))
                throw NumericError("solve_dual: objective decreased across an update (" +
                                   std::to_string(obj_before) + " -> " +
                                   std::to_string(obj_after) + ")");
        }
        return true;
    }

    // Partner with the largest |E_i - E_j|; exact ties are broken by the
    // seeded stream. Falls back to scanning all partners from a seeded
    // offset when the favourite makes no progress.
    bool step_from(std::size_t i) {
        double best_gap = -1.0;
        std::vector<std::size_t> best;
        for (std::size_t j = 0; j < n(); ++j) {
            if (j == i) continue;
            const double gap = std::abs(e[i] - e[j]);
            if (gap > best_gap) {
                best_gap = gap;
                best.assign(1, j);
            } else if (gap == best_gap) {
                best.push_back(j);
            }
        }
        if (best.empty()) return false;
        const std::size_t favourite =
            best.size() == 1 ? best.front()
                             : best[static_cast<std::size_t>(tie_rng.next_u64() % best.size())];
        if (try_update(i, favourite)) return true;

        const std::size_t start = static_cast<std::size_t>(tie_rng.next_u64() % n());
        for (std::size_t off = 0; off < n(); ++off) {
            const std::size_t j = (start + off) % n();
            if (j == i || j == favourite) continue;
            if (try_update(i, j)) return true;
        }
        return false;
    }
};

void check_inputs(const GramMatrix& g, const Dataset& d, double c_or_reg, const char* who) {
    const std::size_t n = d.size();
    if (n == 0) throw DataError(std::string(who) + ": empty dataset");
    if (g.entries.rows() != g.entries.cols() ||
        static_cast<std::size_t>(g.entries.rows()) != n)
        throw InvalidArgument(std::string(who) + ": gram size does not match dataset size");
    if (d.labels.size() != n)
        throw DataError(std::string(who) + ": label count does not match point count");
    for (int label : d.labels)
        if (label != 1 && label != -1)
            throw DataError(std::string(who) + ": labels must be -1 or +1");
    if (!(c_or_reg > 0.0))
        throw InvalidArgument(std::string(who) + ": penalty parameter must be > 0");
}

SvmModel build_model(std::vector<double> alphas, double bias, const Dataset& d,
                     KernelSpec spec, double c, double sv_threshold,
                     bool keep_all = false) {
    SvmModel m;
    m.alphas = std::move(alphas);
    m.bias = bias;
    m.kernel_spec = std::move(spec);
    m.C = c;
    m.sv_threshold = sv_threshold;
    for (std::size_t i = 0; i < m.alphas.size(); ++i) {
        if (keep_all || std::abs(m.alphas[i]) > sv_threshold) {
            m.support_indices.push_back(i);
            m.support_points.push_back(d.points[i]);
            m.support_labels.push_back(d.labels[i]);
            m.support_alphas.push_back(m.alphas[i]);
        }
    }
    return m;
}

} // namespace

SvmModel solve_dual(const GramMatrix& g, const Dataset& d, const SolverConfig& cfg) {
    check_inputs(g, d, cfg.C, "solve_dual");
    if (cfg.kkt_tol <= 0.0 || cfg.objective_tol <= 0.0 || cfg.max_passes < 1)
        throw InvalidArgument("solve_dual: tolerances and max_passes must be positive");

    bool has_pos = false, has_neg = false;
    for (int label : d.labels) (label > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw DataError("solve_dual: single-class dataset (the equality constraint forces "
                        "all multipliers to zero)");

    if (cfg.warn && g.entries.diagonal().minCoeff() < 0.0)
        cfg.warn("gram matrix has negative diagonal entries; it is indefinite");

    Smo smo(g.entries, d.labels, cfg);
    const std::size_t n = d.size();
    bool converged = false;
    int passes = 0;

    for (; passes < cfg.max_passes; ++passes) {
        smo.b = smo.select_bias();
        smo.refresh_errors();
        std::size_t updates = 0;
        bool any_violator = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!smo.violates(i)) continue;
            any_violator = true;
            if (smo.step_from(i)) ++updates;
        }
        if (!any_violator) {
            converged = true;
            break;
        }
        if (updates == 0) break; // stalled with violators remaining
    }

    SvmModel model =
        build_model(smo.alpha, smo.select_bias(), d, g.kernel_spec, cfg.C, 1e-8 * cfg.C);
    if (!converged)
        throw SolverNonConvergence("solve_dual: no convergence within " +
                                       std::to_string(passes) + " passes (worst KKT violation "
                                       "still above " + std::to_string(cfg.kkt_tol) + ")",
                                   std::move(model), passes);
    return model;
}

double decision(const SvmModel& m, const FeatureVector& x) {
    if (!m.support_points.empty() && m.support_points.front().size() != x.size())
        throw InvalidArgument("decision: input dimension " + std::to_string(x.size()) +
                              " does not match model dimension " +
                              std::to_string(m.support_points.front().size()));
    double f = m.bias;
    for (std::size_t s = 0; s < m.support_points.size(); ++s)
        f += m.support_alphas[s] * m.support_labels[s] *
             eval_kernel(m.kernel_spec, m.support_points[s], x);
    return f;
}

int predict(const SvmModel& m, const FeatureVector& x) {
    return decision(m, x) >= 0.0 ? 1 : -1;
}

KktReport kkt_report(const SvmModel& m, const GramMatrix& g, const std::vector<int>& y,
                     double kkt_tol) {
    const std::size_t n = y.size();
    if (m.alphas.size() != n || static_cast<std::size_t>(g.entries.rows()) != n)
        throw InvalidArgument("kkt_report: model, gram and labels must agree in size");

    KktReport r;
    r.margins.resize(n);
    r.slacks.resize(n);
    r.violations.resize(n);
    const double thr = m.sv_threshold;
    for (std::size_t i = 0; i < n; ++i) {
        double f = m.bias;
        for (std::size_t j = 0; j < n; ++j) f += m.alphas[j] * y[j] * g.entries(j, i);
        const double margin = y[i] * f;
        r.margins[i] = margin;
        r.slacks[i] = std::max(0.0, 1.0 - margin);
        if (m.alphas[i] <= thr)
            r.violations[i] = std::max(0.0, 1.0 - margin);
        else if (m.alphas[i] >= m.C - thr)
            r.violations[i] = std::max(0.0, margin - 1.0);
        else
            r.violations[i] = std::abs(margin - 1.0);
        r.worst_violation = std::max(r.worst_violation, r.violations[i]);
    }
    r.converged = r.worst_violation <= kkt_tol;
    return r;
}

FeatureVector primal_weights(const SvmModel& m) {
    if (!std::holds_alternative<kernel::Linear>(m.kernel_spec.family))
        throw InvalidArgument("primal_weights: only defined for the linear kernel family");
    if (m.support_points.empty()) return {};
    FeatureVector w(m.support_points.front().size(), 0.0);
    for (std::size_t s = 0; s < m.support_points.size(); ++s)
        for (std::size_t q = 0; q < w.size(); ++q)
            w[q] += m.support_alphas[s] * m.support_labels[s] * m.support_points[s][q];
    return w;
}

SvmModel solve_lssvm(const GramMatrix& g, const Dataset& d, double reg) {
    check_inputs(g, d, reg, "solve_lssvm");
    const std::size_t n = d.size();
    if (n < 2)
        throw DataError("solve_lssvm: need at least two points (N = 1 forces the "
                        "multiplier to zero)");

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        a(0, i + 1) = d.labels[i];
        a(i + 1, 0) = d.labels[i];
        rhs(i + 1) = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            a(i + 1, j + 1) = d.labels[i] * d.labels[j] * g.entries(i, j);
        a(i + 1, i + 1) += 1.0 / reg;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw NumericError("solve_lssvm: saddle system is singular (rank " +
                           std::to_string(lu.rank()) + " of " + std::to_string(n + 1) + ")");
    const Eigen::VectorXd sol = lu.solve(rhs);

    std::vector<double> alphas(n);
    for (std::size_t i = 0; i < n; ++i) alphas[i] = sol(i + 1);
    // Equality constraints make every point a support vector.
    return build_model(std::move(alphas), sol(0), d, g.kernel_spec, reg, 0.0, true);
}

double dual_objective(const GramMatrix& g, const std::vector<int>& y,
                      const std::vector<double>& alphas) {
    const std::size_t n = y.size();
    if (alphas.size() != n || static_cast<std::size_t>(g.entries.rows()) != n)
        throw InvalidArgument("dual_objective: size mismatch");
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += alphas[i];
        for (std::size_t j = 0; j < n; ++j)
            quad += alphas[i] * alphas[j] * y[i] * y[j] * g.entries(i, j);
    }
    return lin - 0.5 * quad;
}

} // namespace qksvm
