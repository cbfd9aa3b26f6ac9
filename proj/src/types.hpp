#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kernel_spec.hpp"

namespace qksvm {

// One P-dimensional observation.
using FeatureVector = std::vector<double>;

// N observations with binary labels in {-1, +1}. The struct itself is a
// plain aggregate; validate_dataset is the gate, and consumers that need a
// well-formed dataset check it (or their own preconditions) explicitly.
struct Dataset {
    std::vector<FeatureVector> points;
    std::vector<int> labels;

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

struct ValidationReport {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    std::vector<std::string> errors;   // dataset unusable
    std::vector<std::string> warnings; // usable but degenerate

    bool ok() const { return errors.empty(); }
};

// Report-only: never throws, collects every problem it can find
// (empty set, dimension mismatch, non-finite entries, bad or single-class
// labels, label/point count mismatch).
ValidationReport validate_dataset(const Dataset& d);

// How a Gram matrix was produced; downstream steps branch on it
// (e.g. PSD repair is only expected to matter for shot-estimated Grams).
struct Provenance {
    enum Kind { Exact, ShotEstimated, PartialTrace };
    Kind kind = Exact;
    std::uint64_t shots = 0; // per pair and mode; ShotEstimated only

    std::string to_string() const;
};

// N x N symmetric matrix of kernel evaluations, tagged with provenance and
// the kernel that produced it. Immutable by convention after construction.
struct GramMatrix {
    Eigen::MatrixXd entries;
    Provenance provenance;
    KernelSpec kernel_spec;

    std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

// (in(i,j) + in(j,i)) / 2 written to both triangles; idempotent.
// Throws InvalidArgument on a non-square input.
GramMatrix symmetrize(const Eigen::MatrixXd& raw, Provenance provenance = {},
                      KernelSpec kernel_spec = {});

} // namespace qksvm
