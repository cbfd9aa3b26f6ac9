#pragma once

#include <array>

#include <Eigen/Dense>

#include "coherent.hpp"

namespace qksvm::fock {

// State in the truncated number basis |0> .. |D-1>.
struct FockState {
    Eigen::VectorXcd coeffs;

    int dim() const { return static_cast<int>(coeffs.size()); }
    double norm_sq() const { return coeffs.squaredNorm(); }
};

// Truncated annihilation operator a, D x D.
Eigen::MatrixXcd annihilation(int dim);

// Displacement D(alpha) = exp(alpha a† - alpha* a) as a dense matrix
// exponential of the truncated generator (exactly unitary at any D).
Eigen::MatrixXcd displacement(Complex alpha, int dim);

// D(alpha)|0>.
FockState coherent_state(Complex alpha, int dim);

// Smallest truncation satisfying the working rule D >= |a|^2 + 10|a| + 20,
// which keeps the truncated-norm defect of |a> below 1e-10.
int truncation_dim(double max_abs_alpha);

// Numeric probabilities of the two-state discrimination measurement,
// simulated end to end in a truncated two-mode Fock space: prepared
// coherent input against vacuum, 50-50 beam-splitter unitary, then the four
// detector projectors built from displaced vacua at a1/sqrt(2), a2/sqrt(2).
// Independent of the analytic route; agreement is the validation target.
// Throws NumericError if dim is too small for the amplitudes involved.
std::array<double, 4> fock_oracle_probs(Complex a1, Complex a2, Prepared prepared, int dim);

} // namespace qksvm::fock
