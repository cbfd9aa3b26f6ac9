#pragma once

#include <Eigen/Dense>

#include "types.hpp"

namespace qksvm {

// Reduced density matrix of the training-data superposition: the normalized
// N*P amplitude vector is formed, its rank-one density matrix built, and the
// feature register traced out. rho_aux is N x N, Hermitian, unit trace, PSD.
struct PartialTraceResult {
    Eigen::MatrixXcd rho_aux;
    double n_psi = 0.0; // sum_i |X^i|^2, the superposition normalization
};

// Throws DataError on an invalid or all-zero dataset.
PartialTraceResult partial_trace_density(const Dataset& d);

// rho_aux * n_psi, which equals the linear-kernel Gram X^i . X^j exactly.
// Provenance is PartialTrace with a linear kernel spec.
GramMatrix gram_via_partial_trace(const Dataset& d);

} // namespace qksvm
