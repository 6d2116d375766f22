#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace subfbm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ 0x2545f4914f6cdd1dULL * splitmix64(b));
}

}  // namespace detail

/// Reproducible random stream. The pair (seed, stream_id) fully determines
/// the sequence; distinct stream_id values give statistically independent
/// streams. Monte Carlo ensembles should hand one child per path:
///   auto path_rng = rng.child(path_index);
/// child() never consumes state, so distinct labels are the caller's job.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          engine_(detail::mix(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw on (0, 1].
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        constexpr double two_pi = 6.28318530717958647692528676655900577;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Exponential with rate 1.
    double exponential() { return -std::log(uniform()); }

    /// Derived independent stream; deterministic in (seed, stream_id, label).
    RngStream child(std::uint64_t label) const {
        return RngStream(detail::mix(seed_, stream_id_), detail::mix(stream_id_, label));
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace subfbm
