#pragma once

#include <cstdint>

namespace qksvm {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer: full-avalanche 64-bit mix.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

} // namespace detail

// Deterministic counter-based random stream. A stream is identified by
// (seed, stream_id); equal identities reproduce bit-identical draw
// sequences on every platform, and distinct stream_ids give statistically
// independent sequences (SplitMix64 over a mixed per-stream base point).
//
// Substreams are derived from the identity, not from the current state, so
// parallel workers can derive per-task streams in any order and still agree
// with a serial run.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed),
          stream_id_(stream_id),
          state_(detail::mix64(seed + detail::kGolden) ^
                 detail::mix64(stream_id ^ 0x6A09E667F3BCC909ull)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Child stream independent of this stream's consumption state.
    RngStream substream(std::uint64_t child_id) const {
        return RngStream(seed_, detail::mix64(stream_id_ + detail::kGolden * (child_id + 1)));
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
};

} // namespace qksvm
