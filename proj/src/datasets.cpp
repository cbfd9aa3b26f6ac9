#include "datasets.hpp"

#include <cmath>

#include "errors.hpp"

namespace qksvm::data {

double normal(RngStream& rng) {
    const double u1 = 1.0 - rng.next_unit(); // (0, 1], keeps the log finite
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Dataset make_two_clusters(std::uint64_t seed, std::size_t n, std::size_t p,
                          double separation) {
    if (n < 2 || p < 1) throw InvalidArgument("make_two_clusters: need n >= 2 and p >= 1");
    RngStream rng(seed, 0x636c7573ull); // "clus"
    Dataset d;
    d.points.reserve(n);
    d.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = (i % 2 == 0) ? 1 : -1;
        FeatureVector x(p);
        x[0] = label * 0.5 * separation + normal(rng);
        for (std::size_t q = 1; q < p; ++q) x[q] = normal(rng);
        d.points.push_back(std::move(x));
        d.labels.push_back(label);
    }
    return d;
}

Dataset make_two_moons(std::uint64_t seed, std::size_t n, double noise) {
    if (n < 2) throw InvalidArgument("make_two_moons: need n >= 2");
    RngStream rng(seed, 0x6d6f6f6eull); // "moon"
    Dataset d;
    d.points.reserve(n);
    d.labels.reserve(n);
    const std::size_t upper = (n + 1) / 2;
    const std::size_t lower = n - upper;
    for (std::size_t i = 0; i < n; ++i) {
        const bool is_upper = (i % 2 == 0);
        const std::size_t k = i / 2;
        const std::size_t count = is_upper ? upper : lower;
        const double t = count > 1 ? M_PI * k / (count - 1) : 0.0;
        FeatureVector x(2);
        if (is_upper) {
            x[0] = std::cos(t) + noise * normal(rng);
            x[1] = std::sin(t) + noise * normal(rng);
        } else {
            x[0] = 1.0 - std::cos(t) + noise * normal(rng);
            x[1] = 0.5 - std::sin(t) + noise * normal(rng);
        }
        d.points.push_back(std::move(x));
        d.labels.push_back(is_upper ? 1 : -1);
    }
    return d;
}

} // namespace qksvm::data
