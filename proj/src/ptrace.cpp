#include "ptrace.hpp"

#include <cmath>

#include "coherent.hpp"
#include "errors.hpp"

namespace qksvm {

PartialTraceResult partial_trace_density(const Dataset& d) {
    const auto report = validate_dataset(d);
    for (const auto& e : report.errors) throw DataError("partial_trace_density: " + e);

    const std::size_t n = d.size();
    const std::size_t p = d.dim();

    double n_psi = 0.0;
    for (const auto& x : d.points)
        for (double v : x) n_psi += v * v;
    if (n_psi == 0.0)
        throw DataError("partial_trace_density: all-zero dataset (normalization vanishes)");

    // |Psi> lives on the N*P product space; index (i, p) flattens to i*P + p.
    const double inv_sqrt = 1.0 / std::sqrt(n_psi);
    Eigen::VectorXcd psi(n * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < p; ++q)
            psi(i * p + q) = Complex(d.points[i][q] * inv_sqrt, 0.0);

    const Eigen::MatrixXcd rho = psi * psi.adjoint();

    PartialTraceResult res;
    res.n_psi = n_psi;
    res.rho_aux = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t q = 0; q < p; ++q) acc += rho(i * p + q, j * p + q);
            res.rho_aux(i, j) = acc;
        }
    return res;
}

GramMatrix gram_via_partial_trace(const Dataset& d) {
    const PartialTraceResult res = partial_trace_density(d);
    GramMatrix g;
    g.entries = (res.rho_aux * res.n_psi).real();
    g.provenance = {Provenance::PartialTrace, 0};
    g.kernel_spec = linear_kernel();
    return g;
}

} // namespace qksvm
