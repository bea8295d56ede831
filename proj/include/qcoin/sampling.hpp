#pragma once

#include "qcoin/coin.hpp"
#include "qcoin/patterns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qcoin {

// Reproducible sequential-measurement sampling. Each shot draws its own
// splitmix64 substream keyed by (seed, shot index), so the sample stream is
// identical no matter how shots are ordered or partitioned across workers.

struct RngSpec {
    std::uint64_t seed = 0;
    static constexpr const char* kAlgorithm = "splitmix64-per-shot";
};

class ShotRng {
public:
    ShotRng(std::uint64_t seed, std::uint64_t shot)
        : state_(mix(seed + 0x9E3779B97F4A7C15ull * (shot + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform in [0, 1), 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

struct SampleResult {
    long long shots = 0;
    std::vector<long long> event_counts;  // aligned with the requested patterns
};

// Draws `shots` i.i.d. length-n outcome strings from the coin and counts how
// many satisfy each pattern event. Deterministic for a fixed RngSpec.
inline SampleResult sample_trials(const CoinSpec& coin, int n, long long shots, RngSpec rng,
                                  std::span<const PatternSpec> events) {
    if (shots < 1) throw std::invalid_argument("sample_trials: shots must be >= 1");
    if (n < 1) throw std::invalid_argument("sample_trials: n must be >= 1");
    for (const PatternSpec& event : events) {
        if (event.alphabet != coin.alphabet()) {
            throw std::invalid_argument("sample_trials: event alphabet does not match coin");
        }
        validate(event);
        detail::check_at_range(event, n);
    }

    // inverse-CDF table; last entry pinned to 1 so a draw never falls through
    std::vector<double> cumulative = coin.real_probs();
    for (std::size_t i = 1; i < cumulative.size(); ++i) cumulative[i] += cumulative[i - 1];
    cumulative.back() = 1.0;

    SampleResult result{shots, std::vector<long long>(events.size(), 0)};
    std::vector<std::uint8_t> outcome(static_cast<std::size_t>(n));
    for (long long shot = 0; shot < shots; ++shot) {
        ShotRng stream(rng.seed, static_cast<std::uint64_t>(shot));
        for (int site = 0; site < n; ++site) {
            const double u = stream.next_unit();
            std::uint8_t symbol = 0;
            while (u >= cumulative[symbol]) ++symbol;
            outcome[static_cast<std::size_t>(site)] = symbol;
        }
        for (std::size_t e = 0; e < events.size(); ++e) {
            if (detail::allowed_unchecked(std::span<const std::uint8_t>(outcome), events[e])) {
                ++result.event_counts[e];
            }
        }
    }
    return result;
}

}  // namespace qcoin
