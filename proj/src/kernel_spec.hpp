#pragma once

#include <memory>
#include <string>
#include <variant>

namespace qksvm {

struct KernelSpec;
using KernelRef = std::shared_ptr<const KernelSpec>;

namespace kernel {

struct Linear {};

struct Polynomial {
    int degree; // d >= 1
};

struct Gaussian {
    double sigma; // > 0
};

struct OrnsteinUhlenbeck {
    double gamma_len; // length scale, > 0
};

struct Sigmoid {
    double alpha;
    double beta;
};

// Disk kernel with exponent gamma > 1/2; features are mapped into the open
// unit disk componentwise via tanh(disk_scale * x_p) before evaluation.
struct AdS {
    double gamma;
    double disk_scale; // > 0
};

// Modified-Bessel kernel of real order nu > 0 on amplitudes
// alpha_p = encode_scale * x_p, combined multiplicatively over components.
struct PoschlTeller {
    double nu;
    double encode_scale; // > 0
};

// Laguerre-weighted Gaussian overlap kernel of integer index n >= 0 on
// amplitudes alpha_p = encode_scale * x_p; n = 0 reduces to a Gaussian.
struct LaguerreCS {
    int n;
    double encode_scale; // > 0
};

struct Sum {
    KernelRef left, right;
};

struct Product {
    KernelRef left, right;
};

} // namespace kernel

// Tagged description of a kernel family plus hyperparameters. Immutable
// after construction; Sum/Product nodes share children by const reference
// so copies are cheap.
struct KernelSpec {
    std::variant<kernel::Linear, kernel::Polynomial, kernel::Gaussian,
                 kernel::OrnsteinUhlenbeck, kernel::Sigmoid, kernel::AdS,
                 kernel::PoschlTeller, kernel::LaguerreCS, kernel::Sum,
                 kernel::Product>
        family{kernel::Linear{}};
};

// Validating factories; throw InvalidArgument on out-of-range parameters.
KernelSpec linear_kernel();
KernelSpec polynomial_kernel(int degree);
KernelSpec gaussian_kernel(double sigma);
KernelSpec ou_kernel(double gamma_len);
KernelSpec sigmoid_kernel(double alpha, double beta);
KernelSpec ads_kernel(double gamma, double disk_scale);
KernelSpec poschl_teller_kernel(double nu, double encode_scale);
KernelSpec laguerre_cs_kernel(int n, double encode_scale);
KernelSpec sum_kernel(KernelSpec left, KernelSpec right);
KernelSpec product_kernel(KernelSpec left, KernelSpec right);

// Short lowercase family tag ("gauss", "sum", ...), stable across versions;
// used by the CLI model format and diagnostics.
std::string kernel_family_name(const KernelSpec& spec);

} // namespace qksvm
