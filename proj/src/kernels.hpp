#pragma once

#include "types.hpp"

namespace qksvm {

// Closed-form kernel value for a pair of observations. Pure; Sum/Product
// nodes evaluate children and combine. The disk (ads) and coherent-overlap
// (laguerre-cs) families return the squared modulus of their complex form,
// which keeps them real Mercer kernels; the Bessel (pt) family is real as
// defined and is returned as-is.
// Throws InvalidArgument on dimension mismatch or a disk-boundary hit.
double eval_kernel(const KernelSpec& spec, const FeatureVector& x, const FeatureVector& y);

// Exact N x N Gram matrix; symmetric by construction (each unordered pair is
// evaluated once). threads <= 0 selects hardware concurrency; the result is
// identical for any thread count.
GramMatrix gram(const KernelSpec& spec, const Dataset& d, int threads = 1);

// Finite-sample Mercer surrogate: eigenvalue extremes of a symmetric Gram.
struct MercerReport {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool psd = false;
    double tolerance = 0.0; // psd == (min >= -tolerance * max(1, max_eigenvalue))
};

// Eigenvalue check of the Gram. Throws InvalidArgument if the matrix is
// asymmetric beyond 1e-9.
MercerReport mercer_check(const GramMatrix& g, double tol = 1e-8);

// Spectral clip: eigendecompose, zero out negative eigenvalues, rebuild.
// Output is PSD to 1e-10 and keeps the input's provenance and kernel spec.
GramMatrix psd_repair(const GramMatrix& g);

// G~(i,j) = G(i,j) / sqrt(G(i,i) G(j,j)); unit diagonal. Used before PSD
// checks of kernels whose raw diagonal is not 1.
// Throws InvalidArgument if any diagonal entry is <= 0.
GramMatrix diagonal_normalize(const GramMatrix& g);

} // namespace qksvm
