#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace qksvm {

using Complex = std::complex<double>;

// P-tuple of complex amplitudes encoding a feature vector, one mode per
// feature component.
struct CoherentPoint {
    std::vector<Complex> amplitudes;

    std::size_t modes() const { return amplitudes.size(); }
};

// Which of the two candidate states the simulated source emits.
enum class Prepared { State1 = 1, State2 = 2 };

// Single-mode discrimination outcomes: detector 1 only, detector 2 only,
// both, neither.
enum class PovmOutcome { Pi1 = 0, Pi2 = 1, Pi3 = 2, Pi4 = 3 };

// Outcome counts of repeated single-shot measurements, one row per mode.
struct ShotRecord {
    std::vector<std::array<std::uint64_t, 4>> per_mode_counts;
    std::uint64_t shots = 0;
};

// alpha_p = scale * x_p (real-amplitude embedding; phases carry nothing for
// distance-based kernels).
CoherentPoint encode(const FeatureVector& x, double scale);

// |<a|b>|^2 = prod_p exp(-|a_p - b_p|^2) = exp(-|a - b|^2).
double overlap_sq(const CoherentPoint& a, const CoherentPoint& b);

// Coherent-state expectation of a normal-ordered product of Gaussian
// projector factors centred at the given amplitudes:
//   <probe| :prod_i R_i: |probe> = prod_i exp(-|probe - c_i|^2 / 2).
// Factors multiply left to right in the order given.
double normal_ordered_expectation(Complex probe, std::span<const Complex> centers);

// Analytic outcome distribution of the two-state discrimination measurement.
// With R = exp(-|a1-a2|^2/2): State1 -> (1-R, 0, R, 0), State2 -> (0, 1-R, R, 0).
// The four entries always sum to 1 exactly.
std::array<double, 4> povm_probs(Complex a1, Complex a2, Prepared prepared);

// M categorical draws from povm_probs; deterministic given the stream.
// Returns a single-mode record.
ShotRecord sample_shots(Complex a1, Complex a2, Prepared prepared, std::uint64_t m,
                        RngStream& rng);

// Monte Carlo estimator of the Gaussian kernel exp(-|x-y|^2 / (2 sigma^2)):
// encode both points with scale 1/sigma, estimate the per-mode
// both-detectors frequency with M shots each, and return the product of the
// per-mode frequencies. Mode p draws from rng.substream(p), so the caller's
// stream object is not consumed.
double estimate_gauss_kernel(const FeatureVector& x, const FeatureVector& y, double sigma,
                             std::uint64_t m, const RngStream& rng);

// Shot-estimated Gaussian Gram over a dataset. Pair (i, j) uses the stream
// (seed, i*N+j), with per-mode substreams inside, so results are identical
// for any thread count. The matrix is symmetric by construction.
GramMatrix gram_povm_estimated(const Dataset& d, double sigma, std::uint64_t shots,
                               std::uint64_t seed, int threads = 1);

// Four-state unambiguous discrimination probabilities. q[j] is the
// probability of the conclusive outcome "state j" given the prepared index
// (1-based); inconclusive = 1 - sum q. Unambiguity means q[j] = 0 for
// j != prepared. The operators behind these probabilities are not positive
// for every amplitude set, so any negative value is reported through min_q
// rather than clamped.
struct UsdProbs {
    std::array<double, 4> q{};
    double inconclusive = 0.0;
    double min_q = 0.0;

    double sum() const { return q[0] + q[1] + q[2] + q[3] + inconclusive; }
};

UsdProbs usd_probs(const std::array<Complex, 4>& states, int prepared);

} // namespace qksvm
