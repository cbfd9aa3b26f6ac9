#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace qksvm::gcs {

using Complex = std::complex<double>;

// Quadrature region, centred at the origin. Square means the full
// [-radius, radius]^2 box; Disk additionally zeroes the measure outside
// |z| = radius (for genuinely disk-supported measures).
struct Domain {
    enum Kind { Square, Disk };
    Kind kind = Square;
    double radius = 6.0;
};

// An orthonormal function system psi_n with its measure density, defining
// generalized coherent states |X> = N(X)^(-1/2) sum_n psi_n*(X) |a_n>.
struct BasisSystem {
    std::function<Complex(int n, Complex x)> eval; // psi_n(X)
    std::function<double(Complex)> measure_weight; // d mu density wrt dx dy
    Domain domain;
    int truncation = 64; // N_max: series cut after index N_max inclusive
};

// Canonical system: psi_n(a) = e^(-|a|^2/2) (a*)^n / sqrt(n!), measure
// d^2a / pi, normalization identically 1.
BasisSystem canonical_basis(int n_max = 64, Domain domain = {Domain::Square, 6.0});

// N(X) = sum_{n=0}^{N_max} |psi_n(X)|^2. Throws NumericError when the last
// retained term is not below 1e-12 (series not converged at this truncation).
double normalization(const BasisSystem& basis, Complex point);

// K(x1, x2) = sqrt(N(x1) N(x2)) <x1|x2> = sum_n psi_n(x1) psi_n*(x2),
// truncated at N_max with the same tail guard as normalization.
Complex gcs_kernel(const BasisSystem& basis, Complex x1, Complex x2);

// Coefficients psi_n*(X) / sqrt(N(X)) of the state |X>; unit norm to 1e-8
// by construction (NumericError otherwise).
struct GcsState {
    Complex point;
    std::vector<Complex> coeffs;

    double norm_sq() const;
};

GcsState make_state(const BasisSystem& basis, Complex point);

// Tensor-product Gauss-Legendre grid resolution. Both checks rerun
// themselves on a doubled grid and report NumericError("quadrature not
// converged") when refinement moves the answer by more than 10% above a
// 1e-10 floor; set check_convergence = false to skip the second pass.
struct QuadratureGrid {
    int points_per_axis = 200;
    bool check_convergence = true;
};

// max_{n,m <= N_max/2} | integral psi_n*(X) psi_m(X) mu(dX) - delta_nm |.
double identity_check(const BasisSystem& basis, QuadratureGrid grid = {});

// Residual of the reproducing property for the test function
// psi = sum_n coeffs[n] psi_n (coefficients only up to N_max/2):
//   max over probe points X of | integral K(X', X) psi(X') mu(dX') - psi(X) |.
// Probe points sit in the inner third of the domain (radii {0, R/6, R/3},
// five angles), where domain truncation of the integral is negligible.
double reproducing_check(const BasisSystem& basis, std::span<const Complex> coeffs,
                         QuadratureGrid grid = {});

} // namespace qksvm::gcs
