#pragma once

namespace qksvm::specfun {

// Truncation control for the power series below.
struct SeriesParams {
    int max_terms = 200;
    double abs_tol = 1e-16;
};

// Gamma function for x > 0 (Lanczos approximation, relative error < 1e-12).
// Throws InvalidArgument for x <= 0 or non-finite x.
double gamma_fn(double x);

// Modified Bessel function of the first kind I_nu(z) for nu >= 0, z >= 0,
// by its ascending power series
//   I_nu(z) = sum_k (z/2)^(2k+nu) / (k! Gamma(k+nu+1)).
// Terms are generated iteratively, so no intermediate Gamma overflow occurs.
// Throws NumericError if the series has not dropped below abs_tol within
// max_terms terms.
double bessel_i(double nu, double z, SeriesParams params = {});

// The entire function I_nu(z) / (z/2)^nu = sum_k (z/2)^(2k) / (k! Gamma(k+nu+1)),
// well defined at z = 0 (value 1/Gamma(nu+1)). Used by kernels that need
// the small-argument limit without a 0/0.
double bessel_i_ratio(double nu, double z, SeriesParams params = {});

// Laguerre polynomial L_n(x) via the three-term recurrence
//   (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1},  L_0 = 1, L_1 = 1 - x.
double laguerre(int n, double x);

} // namespace qksvm::specfun
