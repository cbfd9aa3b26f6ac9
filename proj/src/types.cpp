#include "types.hpp"

#include <cmath>

#include "errors.hpp"

namespace qksvm {

ValidationReport validate_dataset(const Dataset& d) {
    ValidationReport r;
    r.n = d.points.size();

    if (r.n == 0) {
        r.errors.push_back("dataset is empty");
        return r;
    }
    if (d.labels.size() != r.n) {
        r.errors.push_back("label count (" + std::to_string(d.labels.size()) +
                           ") does not match point count (" + std::to_string(r.n) + ")");
    }

    r.p = d.points.front().size();
    if (r.p == 0) r.errors.push_back("points have dimension 0");

    bool dim_mismatch = false;
    bool non_finite = false;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        if (d.points[i].size() != r.p) dim_mismatch = true;
        for (double v : d.points[i])
            if (!std::isfinite(v)) non_finite = true;
    }
    if (dim_mismatch) r.errors.push_back("points have inconsistent dimensions");
    if (non_finite) r.errors.push_back("dataset contains NaN or Inf entries");

    bool bad_label = false;
    for (std::size_t i = 0; i < d.labels.size() && i < r.n; ++i) {
        if (d.labels[i] == 1)
            ++r.n_pos;
        else if (d.labels[i] == -1)
            ++r.n_neg;
        else
            bad_label = true;
    }
    if (bad_label) r.errors.push_back("labels must be -1 or +1");
    if (!bad_label && (r.n_pos == 0 || r.n_neg == 0))
        r.warnings.push_back("single class: all labels are " +
                             std::string(r.n_pos > 0 ? "+1" : "-1"));

    return r;
}

std::string Provenance::to_string() const {
    switch (kind) {
        case Exact: return "exact";
        case ShotEstimated: return "shot-estimated(" + std::to_string(shots) + ")";
        case PartialTrace: return "partial-trace";
    }
    return "unknown";
}

GramMatrix symmetrize(const Eigen::MatrixXd& raw, Provenance provenance,
                      KernelSpec kernel_spec) {
    if (raw.rows() != raw.cols())
        throw InvalidArgument("symmetrize: input must be square, got " +
                              std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
    GramMatrix g;
    g.entries = 0.5 * (raw + raw.transpose());
    g.provenance = provenance;
    g.kernel_spec = std::move(kernel_spec);
    return g;
}

} // namespace qksvm
