#include "coherent.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "errors.hpp"

namespace qksvm {

namespace {

double abs_sq(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

int categorical_draw(const std::array<double, 4>& p, double u) {
    double cum = 0.0;
    for (int k = 0; k < 3; ++k) {
        cum += p[k];
        if (u < cum) return k;
    }
    return 3;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

CoherentPoint encode(const FeatureVector& x, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw InvalidArgument("encode: scale must be positive and finite");
    CoherentPoint c;
    c.amplitudes.reserve(x.size());
    for (double v : x) c.amplitudes.emplace_back(scale * v, 0.0);
    return c;
}

double overlap_sq(const CoherentPoint& a, const CoherentPoint& b) {
    if (a.modes() != b.modes())
        throw InvalidArgument("overlap_sq: mode count mismatch (" + std::to_string(a.modes()) +
                              " vs " + std::to_string(b.modes()) + ")");
    double prod = 1.0;
    for (std::size_t p = 0; p < a.modes(); ++p)
        prod *= std::exp(-abs_sq(a.amplitudes[p] - b.amplitudes[p]));
    return prod;
}

double normal_ordered_expectation(Complex probe, std::span<const Complex> centers) {
    // Left-to-right in the given order; a center equal to the probe
    // contributes exactly 1.0, which the inclusion-exclusion sums in
    // usd_probs rely on for exact cancellation.
    double prod = 1.0;
    for (const Complex& c : centers) prod *= std::exp(-0.5 * abs_sq(probe - c));
    return prod;
}

std::array<double, 4> povm_probs(Complex a1, Complex a2, Prepared prepared) {
    const double r = std::exp(-0.5 * abs_sq(a1 - a2));
    if (prepared == Prepared::State1) return {1.0 - r, 0.0, r, 0.0};
    return {0.0, 1.0 - r, r, 0.0};
}

ShotRecord sample_shots(Complex a1, Complex a2, Prepared prepared, std::uint64_t m,
                        RngStream& rng) {
    if (m < 1) throw InvalidArgument("sample_shots: shot count must be >= 1");
    const std::array<double, 4> p = povm_probs(a1, a2, prepared);
    ShotRecord rec;
    rec.shots = m;
    rec.per_mode_counts.push_back({0, 0, 0, 0});
    auto& counts = rec.per_mode_counts.front();
    for (std::uint64_t s = 0; s < m; ++s) ++counts[categorical_draw(p, rng.next_unit())];
    return rec;
}

double estimate_gauss_kernel(const FeatureVector& x, const FeatureVector& y, double sigma,
                             std::uint64_t m, const RngStream& rng) {
    if (x.size() != y.size())
        throw InvalidArgument("estimate_gauss_kernel: dimension mismatch");
    if (!(sigma > 0.0)) throw InvalidArgument("estimate_gauss_kernel: sigma must be > 0");
    if (m < 1) throw InvalidArgument("estimate_gauss_kernel: shot count must be >= 1");

    const CoherentPoint a = encode(x, 1.0 / sigma);
    const CoherentPoint b = encode(y, 1.0 / sigma);

    double prod = 1.0;
    for (std::size_t p = 0; p < a.modes(); ++p) {
        RngStream mode_rng = rng.substream(p);
        const ShotRecord rec =
            sample_shots(a.amplitudes[p], b.amplitudes[p], Prepared::State1, m, mode_rng);
        const auto pi3 = rec.per_mode_counts.front()[static_cast<int>(PovmOutcome::Pi3)];
        prod *= static_cast<double>(pi3) / static_cast<double>(m);
    }
    return prod;
}

GramMatrix gram_povm_estimated(const Dataset& d, double sigma, std::uint64_t shots,
                               std::uint64_t seed, int threads) {
    const std::size_t n = d.size();
    if (n == 0) throw DataError("gram_povm_estimated: empty dataset");

    GramMatrix g;
    g.entries.resize(n, n);
    g.provenance = {Provenance::ShotEstimated, shots};
    g.kernel_spec = gaussian_kernel(sigma);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

    const int nthreads = std::min<int>(resolve_threads(threads), static_cast<int>(pairs.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= pairs.size()) return;
                const auto [i, j] = pairs[k];
                const RngStream pair_rng(seed, static_cast<std::uint64_t>(i) * n + j);
                const double v = estimate_gauss_kernel(d.points[i], d.points[j], sigma, shots,
                                                       pair_rng);
                g.entries(i, j) = v;
                g.entries(j, i) = v;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(pairs.size());
        }
    };

    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return g;
}

UsdProbs usd_probs(const std::array<Complex, 4>& states, int prepared) {
    if (prepared < 1 || prepared > 4)
        throw InvalidArgument("usd_probs: prepared index must be in 1..4");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (states[i] == states[j])
                throw InvalidArgument("usd_probs: amplitudes must be pairwise distinct");

    const Complex probe = states[prepared - 1];

    // Conclusive outcome i: R_i minus all pair products containing i, plus
    // all triple products containing i, minus the full four-fold product,
    // each term evaluated as a normal-ordered coherent-state expectation.
    UsdProbs out;
    for (int i = 0; i < 4; ++i) {
        std::vector<Complex> centers;
        double qi = 0.0;
        for (unsigned mask = 1; mask < 16; ++mask) {
            if (!(mask & (1u << i))) continue;
            centers.clear();
            for (int b = 0; b < 4; ++b)
                if (mask & (1u << b)) centers.push_back(states[b]);
            const double sign = (centers.size() % 2 == 1) ? 1.0 : -1.0;
            qi += sign * normal_ordered_expectation(probe, centers);
        }
        out.q[i] = qi;
    }
    out.inconclusive = 1.0 - (out.q[0] + out.q[1] + out.q[2] + out.q[3]);
    out.min_q = std::min({out.q[0], out.q[1], out.q[2], out.q[3], out.inconclusive});
    return out;
}

} // namespace qksvm
