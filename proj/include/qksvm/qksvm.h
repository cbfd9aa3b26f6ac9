/*
 * qksvm — kernel-machine toolkit with coherent-state kernel evaluation.
 *
 * C interface of the shared library. All objects are opaque handles created
 * by qksvm_*_create-style functions and released with the matching
 * qksvm_*_destroy. Functions return QKSVM_OK on success; on failure they
 * return a status code and leave a human-readable message in thread-local
 * storage, retrievable via qksvm_last_error(). Output parameters are only
 * written on success.
 *
 * Handles are immutable after creation and safe to share across threads.
 */

#ifndef QKSVM_H
#define QKSVM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qksvm_status {
    QKSVM_OK = 0,
    QKSVM_ERROR_INVALID_ARGUMENT = 1, /* bad parameter or dimension mismatch */
    QKSVM_ERROR_DATA = 2,             /* malformed dataset                   */
    QKSVM_ERROR_NUMERIC = 3,          /* convergence/truncation/singularity  */
    QKSVM_ERROR_INTERNAL = 4
} qksvm_status;

typedef enum qksvm_kernel_family {
    QKSVM_KERNEL_LINEAR = 0,
    QKSVM_KERNEL_POLYNOMIAL = 1,
    QKSVM_KERNEL_GAUSSIAN = 2,
    QKSVM_KERNEL_ORNSTEIN_UHLENBECK = 3,
    QKSVM_KERNEL_SIGMOID = 4,
    QKSVM_KERNEL_ADS = 5,
    QKSVM_KERNEL_POSCHL_TELLER = 6,
    QKSVM_KERNEL_LAGUERRE_CS = 7,
    QKSVM_KERNEL_SUM = 8,
    QKSVM_KERNEL_PRODUCT = 9
} qksvm_kernel_family_t;

typedef enum qksvm_gram_kind {
    QKSVM_GRAM_EXACT = 0,
    QKSVM_GRAM_SHOT_ESTIMATED = 1,
    QKSVM_GRAM_PARTIAL_TRACE = 2
} qksvm_gram_kind_t;

typedef struct qksvm_dataset qksvm_dataset;
typedef struct qksvm_kernel qksvm_kernel;
typedef struct qksvm_gram qksvm_gram;
typedef struct qksvm_model qksvm_model;

/* ------------------------------------------------------------------ */
/* Library                                                             */

const char* qksvm_version(void);

/* Message of the most recent failure on this thread; empty on success. */
const char* qksvm_last_error(void);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

/* features: row-major n x p; labels: n entries in {-1, +1}. */
qksvm_status qksvm_dataset_create(const double* features, const int* labels, size_t n,
                                  size_t p, qksvm_dataset** out);
void qksvm_dataset_destroy(qksvm_dataset* d);

size_t qksvm_dataset_size(const qksvm_dataset* d);
size_t qksvm_dataset_dim(const qksvm_dataset* d);
qksvm_status qksvm_dataset_label(const qksvm_dataset* d, size_t i, int* out);
qksvm_status qksvm_dataset_point(const qksvm_dataset* d, size_t i, double* out_p);

/* ok = 1 when the dataset is usable. The report (errors then warnings,
 * newline separated) is truncated to buf_len - 1 characters. */
qksvm_status qksvm_dataset_validate(const qksvm_dataset* d, int* ok, char* report_buf,
                                    size_t buf_len);

/* Seeded benchmark generators. */
qksvm_status qksvm_dataset_two_clusters(uint64_t seed, size_t n, size_t p, double separation,
                                        qksvm_dataset** out);
qksvm_status qksvm_dataset_two_moons(uint64_t seed, size_t n, double noise,
                                     qksvm_dataset** out);

/* ------------------------------------------------------------------ */
/* Kernel specifications                                               */

qksvm_status qksvm_kernel_linear(qksvm_kernel** out);
qksvm_status qksvm_kernel_polynomial(int degree, qksvm_kernel** out);
qksvm_status qksvm_kernel_gaussian(double sigma, qksvm_kernel** out);
qksvm_status qksvm_kernel_ornstein_uhlenbeck(double gamma_len, qksvm_kernel** out);
qksvm_status qksvm_kernel_sigmoid(double alpha, double beta, qksvm_kernel** out);
qksvm_status qksvm_kernel_ads(double gamma, double disk_scale, qksvm_kernel** out);
qksvm_status qksvm_kernel_poschl_teller(double nu, double encode_scale, qksvm_kernel** out);
qksvm_status qksvm_kernel_laguerre_cs(int n, double encode_scale, qksvm_kernel** out);
/* Children are deep-copied; the arguments remain owned by the caller. */
qksvm_status qksvm_kernel_sum(const qksvm_kernel* left, const qksvm_kernel* right,
                              qksvm_kernel** out);
qksvm_status qksvm_kernel_product(const qksvm_kernel* left, const qksvm_kernel* right,
                                  qksvm_kernel** out);
void qksvm_kernel_destroy(qksvm_kernel* k);

int qksvm_kernel_get_family(const qksvm_kernel* k);
/* Family-specific parameters (integer ones widened to double):
 *   polynomial: p0 = degree        gaussian: p0 = sigma
 *   ou:         p0 = gamma         sigmoid:  p0 = alpha, p1 = beta
 *   ads:        p0 = gamma, p1 = disk_scale
 *   pt:         p0 = nu,    p1 = encode_scale
 *   laguerre:   p0 = n,     p1 = encode_scale
 * Others leave both untouched. */
qksvm_status qksvm_kernel_get_params(const qksvm_kernel* k, double* p0, double* p1);
/* Copy of a sum/product child (which = 0 left, 1 right); caller owns the
 * result. Fails with QKSVM_ERROR_INVALID_ARGUMENT for leaf families. */
qksvm_status qksvm_kernel_get_child(const qksvm_kernel* k, int which, qksvm_kernel** out);

qksvm_status qksvm_kernel_eval(const qksvm_kernel* k, const double* x, const double* y,
                               size_t p, double* out);

/* ------------------------------------------------------------------ */
/* Gram matrices                                                       */

/* threads <= 0 selects hardware concurrency; results are identical for any
 * thread count. */
qksvm_status qksvm_gram_exact(const qksvm_kernel* k, const qksvm_dataset* d, int threads,
                              qksvm_gram** out);
/* Shot-estimated Gaussian Gram from the simulated two-state measurement,
 * shots draws per pair and mode; symmetric by construction. */
qksvm_status qksvm_gram_povm(const qksvm_dataset* d, double sigma, uint64_t shots,
                             uint64_t seed, int threads, qksvm_gram** out);
/* Linear-kernel Gram through the reduced density matrix of the training
 * superposition. */
qksvm_status qksvm_gram_partial_trace(const qksvm_dataset* d, qksvm_gram** out);
void qksvm_gram_destroy(qksvm_gram* g);

size_t qksvm_gram_size(const qksvm_gram* g);
int qksvm_gram_get_kind(const qksvm_gram* g);
/* Copies the n x n entries row-major into out. */
qksvm_status qksvm_gram_entries(const qksvm_gram* g, double* out);

/* psd = 1 when min_eig >= -tol * max(1, max_eig). */
qksvm_status qksvm_gram_mercer_check(const qksvm_gram* g, double tol, double* min_eig,
                                     double* max_eig, int* psd);
/* Spectral clip to the PSD cone; provenance is preserved. */
qksvm_status qksvm_gram_psd_repair(const qksvm_gram* g, qksvm_gram** out);

/* ------------------------------------------------------------------ */
/* Training and prediction                                             */

/* Soft-margin dual solver (pairwise updates). On QKSVM_ERROR_NUMERIC the
 * last error names the failure; no model is produced. */
qksvm_status qksvm_train_smo(const qksvm_gram* g, const qksvm_dataset* d, double c,
                             double kkt_tol, int max_passes, uint64_t seed,
                             qksvm_model** out);
/* Least-squares variant: one linear solve, every point a support vector. */
qksvm_status qksvm_train_lssvm(const qksvm_gram* g, const qksvm_dataset* d, double reg,
                               qksvm_model** out);
void qksvm_model_destroy(qksvm_model* m);

qksvm_status qksvm_model_decision(const qksvm_model* m, const double* x, size_t p,
                                  double* out);
/* Sign of the decision value; an exact zero maps to +1. */
qksvm_status qksvm_model_predict(const qksvm_model* m, const double* x, size_t p, int* out);

size_t qksvm_model_num_sv(const qksvm_model* m);
size_t qksvm_model_dim(const qksvm_model* m);
double qksvm_model_bias(const qksvm_model* m);
double qksvm_model_cost(const qksvm_model* m);
/* Fresh copy of the model's kernel; caller owns it. */
qksvm_status qksvm_model_get_kernel(const qksvm_model* m, qksvm_kernel** out);
/* Copies support data: points row-major nsv x p, labels and alphas nsv.
 * Any of the output pointers may be NULL to skip that field. */
qksvm_status qksvm_model_support(const qksvm_model* m, double* points, int* labels,
                                 double* alphas);
/* Training diagnostics captured at solve time: dual objective and worst
 * KKT violation. NaN for models rebuilt from parts. */
qksvm_status qksvm_model_train_info(const qksvm_model* m, double* objective,
                                    double* kkt_worst);

/* Rebuild a model from persisted parts (support rows only). */
qksvm_status qksvm_model_create(const qksvm_kernel* k, double c, double bias,
                                const double* sv_points, const int* sv_labels,
                                const double* sv_alphas, size_t n_sv, size_t p,
                                qksvm_model** out);

/* ------------------------------------------------------------------ */
/* Coherent-state measurement primitives                               */

/* Analytic outcome probabilities (detector 1, detector 2, both, neither)
 * for the two-state discrimination measurement; prepared is 1 or 2. */
qksvm_status qksvm_povm_probs(double a1_re, double a1_im, double a2_re, double a2_im,
                              int prepared, double out[4]);

/* Numeric truncated-Fock-space simulation of the same measurement.
 * dim <= 0 selects the truncation rule automatically. */
qksvm_status qksvm_fock_oracle_probs(double a1_re, double a1_im, double a2_re, double a2_im,
                                     int prepared, int dim, double out[4]);

/* shots categorical draws from the analytic distribution using the stream
 * (seed, 0); outcome counts land in out_counts. */
qksvm_status qksvm_sample_shots(double a1_re, double a1_im, double a2_re, double a2_im,
                                int prepared, uint64_t shots, uint64_t seed,
                                uint64_t out_counts[4]);

/* Monte Carlo estimate of exp(-|x-y|^2/(2 sigma^2)) from shots draws per
 * mode. */
qksvm_status qksvm_estimate_gauss_kernel(const double* x, const double* y, size_t p,
                                         double sigma, uint64_t shots, uint64_t seed,
                                         double* out);

/* Unambiguous discrimination among four coherent amplitudes
 * (states_re_im = re0, im0, ..., re3, im3; prepared in 1..4).
 * out_q holds the four conclusive probabilities then the inconclusive one;
 * min_q reports the smallest value (negative means the operator set is not
 * positive for these amplitudes). */
qksvm_status qksvm_usd_probs(const double states_re_im[8], int prepared, double out_q[5],
                             double* min_q);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QKSVM_H */
