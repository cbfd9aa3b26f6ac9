// Implementation of the public C interface: opaque handles over the C++
// core, exceptions mapped to status codes, messages kept in thread-local
// storage.

#include "qksvm/qksvm.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <string>

#include "coherent.hpp"
#include "datasets.hpp"
#include "errors.hpp"
#include "fock.hpp"
#include "kernels.hpp"
#include "ptrace.hpp"
#include "svm.hpp"

struct qksvm_dataset {
    qksvm::Dataset data;
};

struct qksvm_kernel {
    qksvm::KernelSpec spec;
};

struct qksvm_gram {
    qksvm::GramMatrix gram;
};

struct qksvm_model {
    qksvm::SvmModel model;
    double objective = std::numeric_limits<double>::quiet_NaN();
    double kkt_worst = std::numeric_limits<double>::quiet_NaN();
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
qksvm_status wrap(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        return fn();
    } catch (const qksvm::InvalidArgument& e) {
        g_last_error = e.what();
        return QKSVM_ERROR_INVALID_ARGUMENT;
    } catch (const qksvm::DataError& e) {
        g_last_error = e.what();
        return QKSVM_ERROR_DATA;
    } catch (const qksvm::NumericError& e) {
        g_last_error = e.what();
        return QKSVM_ERROR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QKSVM_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QKSVM_ERROR_INTERNAL;
    }
}

qksvm_status fail_null(const char* what) {
    g_last_error = std::string(what) + ": null pointer argument";
    return QKSVM_ERROR_INVALID_ARGUMENT;
}

qksvm::Prepared to_prepared(int prepared) {
    if (prepared == 1) return qksvm::Prepared::State1;
    if (prepared == 2) return qksvm::Prepared::State2;
    throw qksvm::InvalidArgument("prepared index must be 1 or 2");
}

} // namespace

extern "C" {

const char* qksvm_version(void) { return "0.1.0"; }

const char* qksvm_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

qksvm_status qksvm_dataset_create(const double* features, const int* labels, size_t n,
                                  size_t p, qksvm_dataset** out) {
    if (!features || !labels || !out) return fail_null("qksvm_dataset_create");
    return wrap([&] {
        if (n == 0 || p == 0)
            throw qksvm::InvalidArgument("qksvm_dataset_create: n and p must be positive");
        auto d = std::make_unique<qksvm_dataset>();
        d->data.points.reserve(n);
        d->data.labels.assign(labels, labels + n);
        for (size_t i = 0; i < n; ++i)
            d->data.points.emplace_back(features + i * p, features + (i + 1) * p);
        *out = d.release();
        return QKSVM_OK;
    });
}

void qksvm_dataset_destroy(qksvm_dataset* d) { delete d; }

size_t qksvm_dataset_size(const qksvm_dataset* d) { return d ? d->data.size() : 0; }

size_t qksvm_dataset_dim(const qksvm_dataset* d) { return d ? d->data.dim() : 0; }

qksvm_status qksvm_dataset_label(const qksvm_dataset* d, size_t i, int* out) {
    if (!d || !out) return fail_null("qksvm_dataset_label");
    return wrap([&] {
        if (i >= d->data.labels.size())
            throw qksvm::InvalidArgument("qksvm_dataset_label: index out of range");
        *out = d->data.labels[i];
        return QKSVM_OK;
    });
}

qksvm_status qksvm_dataset_point(const qksvm_dataset* d, size_t i, double* out_p) {
    if (!d || !out_p) return fail_null("qksvm_dataset_point");
    return wrap([&] {
        if (i >= d->data.points.size())
            throw qksvm::InvalidArgument("qksvm_dataset_point: index out of range");
        const auto& row = d->data.points[i];
        std::memcpy(out_p, row.data(), row.size() * sizeof(double));
        return QKSVM_OK;
    });
}

qksvm_status qksvm_dataset_validate(const qksvm_dataset* d, int* ok, char* report_buf,
                                    size_t buf_len) {
    if (!d || !ok) return fail_null("qksvm_dataset_validate");
    return wrap([&] {
        const auto report = qksvm::validate_dataset(d->data);
        *ok = report.ok() ? 1 : 0;
        if (report_buf && buf_len > 0) {
            std::string text;
            for (const auto& e : report.errors) text += "error: " + e + "\n";
            for (const auto& w : report.warnings) text += "warning: " + w + "\n";
            const size_t len = std::min(buf_len - 1, text.size());
            std::memcpy(report_buf, text.data(), len);
            report_buf[len] = '\0';
        }
        return QKSVM_OK;
    });
}

qksvm_status qksvm_dataset_two_clusters(uint64_t seed, size_t n, size_t p, double separation,
                                        qksvm_dataset** out) {
    if (!out) return fail_null("qksvm_dataset_two_clusters");
    return wrap([&] {
        auto d = std::make_unique<qksvm_dataset>();
        d->data = qksvm::data::make_two_clusters(seed, n, p, separation);
        *out = d.release();
        return QKSVM_OK;
    });
}

qksvm_status qksvm_dataset_two_moons(uint64_t seed, size_t n, double noise,
                                     qksvm_dataset** out) {
    if (!out) return fail_null("qksvm_dataset_two_moons");
    return wrap([&] {
        auto d = std::make_unique<qksvm_dataset>();
        d->data = qksvm::data::make_two_moons(seed, n, noise);
        *out = d.release();
        return QKSVM_OK;
    });
}

/* ------------------------------------------------------------------ */
/* Kernels                                                             */

namespace {

qksvm_status make_kernel(qksvm_kernel** out, qksvm::KernelSpec spec) {
    *out = new qksvm_kernel{std::move(spec)};
    return QKSVM_OK;
}

} // namespace

qksvm_status qksvm_kernel_linear(qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_linear");
    return wrap([&] { return make_kernel(out, qksvm::linear_kernel()); });
}

qksvm_status qksvm_kernel_polynomial(int degree, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_polynomial");
    return wrap([&] { return make_kernel(out, qksvm::polynomial_kernel(degree)); });
}

qksvm_status qksvm_kernel_gaussian(double sigma, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_gaussian");
    return wrap([&] { return make_kernel(out, qksvm::gaussian_kernel(sigma)); });
}

qksvm_status qksvm_kernel_ornstein_uhlenbeck(double gamma_len, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_ornstein_uhlenbeck");
    return wrap([&] { return make_kernel(out, qksvm::ou_kernel(gamma_len)); });
}

qksvm_status qksvm_kernel_sigmoid(double alpha, double beta, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_sigmoid");
    return wrap([&] { return make_kernel(out, qksvm::sigmoid_kernel(alpha, beta)); });
}

qksvm_status qksvm_kernel_ads(double gamma, double disk_scale, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_ads");
    return wrap([&] { return make_kernel(out, qksvm::ads_kernel(gamma, disk_scale)); });
}

qksvm_status qksvm_kernel_poschl_teller(double nu, double encode_scale, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_poschl_teller");
    return wrap([&] { return make_kernel(out, qksvm::poschl_teller_kernel(nu, encode_scale)); });
}

qksvm_status qksvm_kernel_laguerre_cs(int n, double encode_scale, qksvm_kernel** out) {
    if (!out) return fail_null("qksvm_kernel_laguerre_cs");
    return wrap([&] { return make_kernel(out, qksvm::laguerre_cs_kernel(n, encode_scale)); });
}

qksvm_status qksvm_kernel_sum(const qksvm_kernel* left, const qksvm_kernel* right,
                              qksvm_kernel** out) {
    if (!left || !right || !out) return fail_null("qksvm_kernel_sum");
    return wrap([&] { return make_kernel(out, qksvm::sum_kernel(left->spec, right->spec)); });
}

qksvm_status qksvm_kernel_product(const qksvm_kernel* left, const qksvm_kernel* right,
                                  qksvm_kernel** out) {
    if (!left || !right || !out) return fail_null("qksvm_kernel_product");
    return wrap(
        [&] { return make_kernel(out, qksvm::product_kernel(left->spec, right->spec)); });
}

void qksvm_kernel_destroy(qksvm_kernel* k) { delete k; }

int qksvm_kernel_get_family(const qksvm_kernel* k) {
    if (!k) return -1;
    struct Tag {
        int operator()(const qksvm::kernel::Linear&) const { return QKSVM_KERNEL_LINEAR; }
        int operator()(const qksvm::kernel::Polynomial&) const {
            return QKSVM_KERNEL_POLYNOMIAL;
        }
        int operator()(const qksvm::kernel::Gaussian&) const { return QKSVM_KERNEL_GAUSSIAN; }
        int operator()(const qksvm::kernel::OrnsteinUhlenbeck&) const {
            return QKSVM_KERNEL_ORNSTEIN_UHLENBECK;
        }
        int operator()(const qksvm::kernel::Sigmoid&) const { return QKSVM_KERNEL_SIGMOID; }
        int operator()(const qksvm::kernel::AdS&) const { return QKSVM_KERNEL_ADS; }
        int operator()(const qksvm::kernel::PoschlTeller&) const {
            return QKSVM_KERNEL_POSCHL_TELLER;
        }
        int operator()(const qksvm::kernel::LaguerreCS&) const {
            return QKSVM_KERNEL_LAGUERRE_CS;
        }
        int operator()(const qksvm::kernel::Sum&) const { return QKSVM_KERNEL_SUM; }
        int operator()(const qksvm::kernel::Product&) const { return QKSVM_KERNEL_PRODUCT; }
    };
    return std::visit(Tag{}, k->spec.family);
}

qksvm_status qksvm_kernel_get_params(const qksvm_kernel* k, double* p0, double* p1) {
    if (!k) return fail_null("qksvm_kernel_get_params");
    return wrap([&] {
        auto set = [&](double a, double b) {
            if (p0) *p0 = a;
            if (p1) *p1 = b;
        };
        using namespace qksvm::kernel;
        if (const auto* v = std::get_if<Polynomial>(&k->spec.family))
            set(v->degree, 0.0);
        else if (const auto* v = std::get_if<Gaussian>(&k->spec.family))
            set(v->sigma, 0.0);
        else if (const auto* v = std::get_if<OrnsteinUhlenbeck>(&k->spec.family))
            set(v->gamma_len, 0.0);
        else if (const auto* v = std::get_if<Sigmoid>(&k->spec.family))
            set(v->alpha, v->beta);
        else if (const auto* v = std::get_if<AdS>(&k->spec.family))
            set(v->gamma, v->disk_scale);
        else if (const auto* v = std::get_if<PoschlTeller>(&k->spec.family))
            set(v->nu, v->encode_scale);
        else if (const auto* v = std::get_if<LaguerreCS>(&k->spec.family))
            set(v->n, v->encode_scale);
        return QKSVM_OK;
    });
}

qksvm_status qksvm_kernel_get_child(const qksvm_kernel* k, int which, qksvm_kernel** out) {
    if (!k || !out) return fail_null("qksvm_kernel_get_child");
    return wrap([&] {
        if (which < 0 || which > 1)
            throw qksvm::InvalidArgument("qksvm_kernel_get_child: which must be 0 or 1");
        const qksvm::KernelRef* child = nullptr;
        if (const auto* s = std::get_if<qksvm::kernel::Sum>(&k->spec.family))
            child = which == 0 ? &s->left : &s->right;
        else if (const auto* p = std::get_if<qksvm::kernel::Product>(&k->spec.family))
            child = which == 0 ? &p->left : &p->right;
        if (!child)
            throw qksvm::InvalidArgument("qksvm_kernel_get_child: kernel has no children");
        return make_kernel(out, **child);
    });
}

qksvm_status qksvm_kernel_eval(const qksvm_kernel* k, const double* x, const double* y,
                               size_t p, double* out) {
    if (!k || !x || !y || !out) return fail_null("qksvm_kernel_eval");
    return wrap([&] {
        const qksvm::FeatureVector xv(x, x + p), yv(y, y + p);
        *out = qksvm::eval_kernel(k->spec, xv, yv);
        return QKSVM_OK;
    });
}

/* ------------------------------------------------------------------ */
/* Gram                                                                */

qksvm_status qksvm_gram_exact(const qksvm_kernel* k, const qksvm_dataset* d, int threads,
                              qksvm_gram** out) {
    if (!k || !d || !out) return fail_null("qksvm_gram_exact");
    return wrap([&] {
        auto g = std::make_unique<qksvm_gram>();
        g->gram = qksvm::gram(k->spec, d->data, threads);
        *out = g.release();
        return QKSVM_OK;
    });
}

qksvm_status qksvm_gram_povm(const qksvm_dataset* d, double sigma, uint64_t shots,
                             uint64_t seed, int threads, qksvm_gram** out) {
    if (!d || !out) return fail_null("qksvm_gram_povm");
    return wrap([&] {
        auto g = std::make_unique<qksvm_gram>();
        g->gram = qksvm::gram_povm_estimated(d->data, sigma, shots, seed, threads);
        *out = g.release();
        return QKSVM_OK;
    });
}

qksvm_status qksvm_gram_partial_trace(const qksvm_dataset* d, qksvm_gram** out) {
    if (!d || !out) return fail_null("qksvm_gram_partial_trace");
    return wrap([&] {
        auto g = std::make_unique<qksvm_gram>();
        g->gram = qksvm::gram_via_partial_trace(d->data);
        *out = g.release();
        return QKSVM_OK;
    });
}

void qksvm_gram_destroy(qksvm_gram* g) { delete g; }

size_t qksvm_gram_size(const qksvm_gram* g) { return g ? g->gram.size() : 0; }

int qksvm_gram_get_kind(const qksvm_gram* g) {
    if (!g) return -1;
    switch (g->gram.provenance.kind) {
        case qksvm::Provenance::Exact: return QKSVM_GRAM_EXACT;
        case qksvm::Provenance::ShotEstimated: return QKSVM_GRAM_SHOT_ESTIMATED;
        case qksvm::Provenance::PartialTrace: return QKSVM_GRAM_PARTIAL_TRACE;
    }
    return -1;
}

qksvm_status qksvm_gram_entries(const qksvm_gram* g, double* out) {
    if (!g || !out) return fail_null("qksvm_gram_entries");
    return wrap([&] {
        const auto& m = g->gram.entries;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
        return QKSVM_OK;
    });
}

qksvm_status qksvm_gram_mercer_check(const qksvm_gram* g, double tol, double* min_eig,
                                     double* max_eig, int* psd) {
    if (!g) return fail_null("qksvm_gram_mercer_check");
    return wrap([&] {
        const auto report = qksvm::mercer_check(g->gram, tol > 0 ? tol : 1e-8);
        if (min_eig) *min_eig = report.min_eigenvalue;
        if (max_eig) *max_eig = report.max_eigenvalue;
        if (psd) *psd = report.psd ? 1 : 0;
        return QKSVM_OK;
    });
}

qksvm_status qksvm_gram_psd_repair(const qksvm_gram* g, qksvm_gram** out) {
    if (!g || !out) return fail_null("qksvm_gram_psd_repair");
    return wrap([&] {
        auto r = std::make_unique<qksvm_gram>();
        r->gram = qksvm::psd_repair(g->gram);
        *out = r.release();
        return QKSVM_OK;
    });
}

/* ------------------------------------------------------------------ */
/* Training                                                            */

qksvm_status qksvm_train_smo(const qksvm_gram* g, const qksvm_dataset* d, double c,
                             double kkt_tol, int max_passes, uint64_t seed,
                             qksvm_model** out) {
    if (!g || !d || !out) return fail_null("qksvm_train_smo");
    return wrap([&] {
        qksvm::SolverConfig cfg;
        cfg.C = c;
        cfg.kkt_tol = kkt_tol > 0 ? kkt_tol : 1e-3;
        cfg.max_passes = max_passes > 0 ? max_passes : 10000;
        cfg.objective_tol = std::min(1e-8, 1e-3 * cfg.kkt_tol);
        cfg.seed = seed;
        auto m = std::make_unique<qksvm_model>();
        m->model = qksvm::solve_dual(g->gram, d->data, cfg);
        m->objective = qksvm::dual_objective(g->gram, d->data.labels, m->model.alphas);
        m->kkt_worst =
            qksvm::kkt_report(m->model, g->gram, d->data.labels, cfg.kkt_tol).worst_violation;
        *out = m.release();
        return QKSVM_OK;
    });
}

qksvm_status qksvm_train_lssvm(const qksvm_gram* g, const qksvm_dataset* d, double reg,
                               qksvm_model** out) {
    if (!g || !d || !out) return fail_null("qksvm_train_lssvm");
    return wrap([&] {
        auto m = std::make_unique<qksvm_model>();
        m->model = qksvm::solve_lssvm(g->gram, d->data, reg);
        m->objective = qksvm::dual_objective(g->gram, d->data.labels, m->model.alphas);
        *out = m.release();
        return QKSVM_OK;
    });
}

void qksvm_model_destroy(qksvm_model* m) { delete m; }

qksvm_status qksvm_model_decision(const qksvm_model* m, const double* x, size_t p,
                                  double* out) {
    if (!m || !x || !out) return fail_null("qksvm_model_decision");
    return wrap([&] {
        *out = qksvm::decision(m->model, qksvm::FeatureVector(x, x + p));
        return QKSVM_OK;
    });
}

qksvm_status qksvm_model_predict(const qksvm_model* m, const double* x, size_t p, int* out) {
    if (!m || !x || !out) return fail_null("qksvm_model_predict");
    return wrap([&] {
        *out = qksvm::predict(m->model, qksvm::FeatureVector(x, x + p));
        return QKSVM_OK;
    });
}

size_t qksvm_model_num_sv(const qksvm_model* m) {
    return m ? m->model.support_points.size() : 0;
}

size_t qksvm_model_dim(const qksvm_model* m) {
    if (!m || m->model.support_points.empty()) return 0;
    return m->model.support_points.front().size();
}

double qksvm_model_bias(const qksvm_model* m) {
    return m ? m->model.bias : std::numeric_limits<double>::quiet_NaN();
}

double qksvm_model_cost(const qksvm_model* m) {
    return m ? m->model.C : std::numeric_limits<double>::quiet_NaN();
}

qksvm_status qksvm_model_get_kernel(const qksvm_model* m, qksvm_kernel** out) {
    if (!m || !out) return fail_null("qksvm_model_get_kernel");
    return wrap([&] { return make_kernel(out, m->model.kernel_spec); });
}

qksvm_status qksvm_model_support(const qksvm_model* m, double* points, int* labels,
                                 double* alphas) {
    if (!m) return fail_null("qksvm_model_support");
    return wrap([&] {
        const auto& mod = m->model;
        const size_t p = mod.support_points.empty() ? 0 : mod.support_points.front().size();
        for (size_t s = 0; s < mod.support_points.size(); ++s) {
            if (points)
                std::memcpy(points + s * p, mod.support_points[s].data(), p * sizeof(double));
            if (labels) labels[s] = mod.support_labels[s];
            if (alphas) alphas[s] = mod.support_alphas[s];
        }
        return QKSVM_OK;
    });
}

qksvm_status qksvm_model_train_info(const qksvm_model* m, double* objective,
                                    double* kkt_worst) {
    if (!m) return fail_null("qksvm_model_train_info");
    if (objective) *objective = m->objective;
    if (kkt_worst) *kkt_worst = m->kkt_worst;
    return QKSVM_OK;
}

qksvm_status qksvm_model_create(const qksvm_kernel* k, double c, double bias,
                                const double* sv_points, const int* sv_labels,
                                const double* sv_alphas, size_t n_sv, size_t p,
                                qksvm_model** out) {
    if (!k || !out || (n_sv > 0 && (!sv_points || !sv_labels || !sv_alphas)))
        return fail_null("qksvm_model_create");
    return wrap([&] {
        if (n_sv > 0 && p == 0)
            throw qksvm::InvalidArgument("qksvm_model_create: dimension must be positive");
        auto m = std::make_unique<qksvm_model>();
        auto& mod = m->model;
        mod.kernel_spec = k->spec;
        mod.C = c;
        mod.bias = bias;
        mod.sv_threshold = 1e-8 * c;
        for (size_t s = 0; s < n_sv; ++s) {
            mod.support_indices.push_back(s);
            mod.support_points.emplace_back(sv_points + s * p, sv_points + (s + 1) * p);
            mod.support_labels.push_back(sv_labels[s]);
            mod.support_alphas.push_back(sv_alphas[s]);
            mod.alphas.push_back(sv_alphas[s]);
        }
        *out = m.release();
        return QKSVM_OK;
    });
}

/* ------------------------------------------------------------------ */
/* Coherent-state primitives                                           */

qksvm_status qksvm_povm_probs(double a1_re, double a1_im, double a2_re, double a2_im,
                              int prepared, double out[4]) {
    if (!out) return fail_null("qksvm_povm_probs");
    return wrap([&] {
        const auto p = qksvm::povm_probs({a1_re, a1_im}, {a2_re, a2_im},
                                         to_prepared(prepared));
        for (int i = 0; i < 4; ++i) out[i] = p[i];
        return QKSVM_OK;
    });
}

qksvm_status qksvm_fock_oracle_probs(double a1_re, double a1_im, double a2_re, double a2_im,
                                     int prepared, int dim, double out[4]) {
    if (!out) return fail_null("qksvm_fock_oracle_probs");
    return wrap([&] {
        const qksvm::Complex a1{a1_re, a1_im}, a2{a2_re, a2_im};
        const int use_dim = dim > 0 ? dim
                                    : qksvm::fock::truncation_dim(
                                          std::max(std::abs(a1), std::abs(a2)));
        const auto p = qksvm::fock::fock_oracle_probs(a1, a2, to_prepared(prepared), use_dim);
        for (int i = 0; i < 4; ++i) out[i] = p[i];
        return QKSVM_OK;
    });
}

qksvm_status qksvm_sample_shots(double a1_re, double a1_im, double a2_re, double a2_im,
                                int prepared, uint64_t shots, uint64_t seed,
                                uint64_t out_counts[4]) {
    if (!out_counts) return fail_null("qksvm_sample_shots");
    return wrap([&] {
        qksvm::RngStream rng(seed, 0);
        const auto rec = qksvm::sample_shots({a1_re, a1_im}, {a2_re, a2_im},
                                             to_prepared(prepared), shots, rng);
        for (int i = 0; i < 4; ++i) out_counts[i] = rec.per_mode_counts.front()[i];
        return QKSVM_OK;
    });
}

qksvm_status qksvm_estimate_gauss_kernel(const double* x, const double* y, size_t p,
                                         double sigma, uint64_t shots, uint64_t seed,
                                         double* out) {
    if (!x || !y || !out) return fail_null("qksvm_estimate_gauss_kernel");
    return wrap([&] {
        const qksvm::FeatureVector xv(x, x + p), yv(y, y + p);
        *out = qksvm::estimate_gauss_kernel(xv, yv, sigma, shots, qksvm::RngStream(seed, 0));
        return QKSVM_OK;
    });
}

qksvm_status qksvm_usd_probs(const double states_re_im[8], int prepared, double out_q[5],
                             double* min_q) {
    if (!states_re_im || !out_q) return fail_null("qksvm_usd_probs");
    return wrap([&] {
        std::array<qksvm::Complex, 4> states;
        for (int i = 0; i < 4; ++i)
            states[i] = qksvm::Complex(states_re_im[2 * i], states_re_im[2 * i + 1]);
        const auto r = qksvm::usd_probs(states, prepared);
        for (int i = 0; i < 4; ++i) out_q[i] = r.q[i];
        out_q[4] = r.inconclusive;
        if (min_q) *min_q = r.min_q;
        return QKSVM_OK;
    });
}

} /* extern "C" */
