#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace qksvm {

struct SolverConfig {
    double C = 1.0;
    double kkt_tol = 1e-3;
    int max_passes = 10000;
    double objective_tol = 1e-8; // minimum relative multiplier change to accept a step
    std::uint64_t seed = 0;      // working-pair tie breaking
    bool check_monotone_objective = false; // debug: assert L_D never decreases
    std::function<void(const std::string&)> warn; // optional diagnostics sink
};

// Everything needed to evaluate the decision function: dual coefficients,
// bias, retained support rows, kernel. `alphas` keeps the full training
// vector; the support_* arrays are the rows with alpha above sv_threshold.
// For the least-squares variant the multipliers are unconstrained in sign
// and every training point is a support vector.
struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<std::size_t> support_indices;
    std::vector<FeatureVector> support_points;
    std::vector<int> support_labels;
    std::vector<double> support_alphas;
    KernelSpec kernel_spec;
    double C = 0.0;
    double sv_threshold = 0.0;
};

struct KktReport {
    std::vector<double> margins;    // y_i f(X_i)
    std::vector<double> slacks;     // max(0, 1 - margin)
    std::vector<double> violations; // per-point KKT violation magnitude
    double worst_violation = 0.0;
    bool converged = false; // worst_violation <= tolerance used
};

// Thrown when the pairwise optimizer runs out of passes or stalls; carries
// the best feasible iterate (box and equality constraints still hold).
class SolverNonConvergence : public NumericError {
  public:
    SolverNonConvergence(const std::string& msg, SvmModel best, int passes)
        : NumericError(msg), best_model(std::move(best)), passes(passes) {}

    SvmModel best_model;
    int passes;
};

// Maximizes the dual soft-margin objective
//   L_D = sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
// subject to sum_i a_i y_i = 0 and 0 <= a_i <= C, by pairwise updates with
// the analytic two-variable solve and box clipping. Pair selection: first
// KKT violator in index order, partner by largest |E_i - E_j| with seeded
// tie breaking. Bias is recovered by averaging over free support vectors.
// Throws DataError on single-class labels, SolverNonConvergence on stall.
SvmModel solve_dual(const GramMatrix& g, const Dataset& d, const SolverConfig& cfg);

// sum over support set of a_i y_i K(X_i, x) + bias. An empty support set
// yields the bias alone.
double decision(const SvmModel& m, const FeatureVector& x);

// Sign of the decision value; exact zero maps to +1.
int predict(const SvmModel& m, const FeatureVector& x);

// Complementary-slackness audit of a trained model against its Gram:
//   a_i ~ 0      -> margin >= 1 - tol
//   0 < a_i < C  -> |margin - 1| <= tol
//   a_i ~ C      -> margin <= 1 + tol
KktReport kkt_report(const SvmModel& m, const GramMatrix& g, const std::vector<int>& y,
                     double kkt_tol = 1e-3);

// W = sum a_i y_i X_i; only defined for the linear family.
FeatureVector primal_weights(const SvmModel& m);

// Least-squares SVM: solves the (N+1)x(N+1) saddle system
//   [ 0  y^T       ] [b]     [0]
//   [ y  Omega+I/r ] [a]  =  [1],   Omega_ij = y_i y_j K_ij,
// by full-pivot LU. Every point becomes a support vector.
// Throws DataError for N < 2, NumericError naming the rank on singularity.
SvmModel solve_lssvm(const GramMatrix& g, const Dataset& d, double reg);

// L_D at the given multipliers.
double dual_objective(const GramMatrix& g, const std::vector<int>& y,
                      const std::vector<double>& alphas);

} // namespace qksvm
