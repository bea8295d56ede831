#pragma once

#include "qcoin/coin.hpp"
#include "qcoin/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace qcoin {

// Run-pattern predicate over outcome strings, and the brute-force
// enumerator built on it. A string is "allowed" when the block of
// run_length consecutive target symbols occurs as a substring exactly
// once, at the requested location. Occurrences are counted at every
// offset, so a longer run produces overlapping occurrences and the
// string is rejected; no separate max-run rule is needed.

enum class Position { End, At, Anywhere };

struct PatternSpec {
    int alphabet = 2;
    int target = 1;
    int run_length = 2;
    Position position = Position::End;
    int at_index = 0;  // 1-based start of the run, Position::At only

    static PatternSpec end(int alphabet, int run_length, int target = 1) {
        return {alphabet, target, run_length, Position::End, 0};
    }
    static PatternSpec at(int alphabet, int run_length, int k, int target = 1) {
        return {alphabet, target, run_length, Position::At, k};
    }
    static PatternSpec anywhere(int alphabet, int run_length, int target = 1) {
        return {alphabet, target, run_length, Position::Anywhere, 0};
    }
};

inline void validate(const PatternSpec& spec) {
    if (spec.alphabet < 2 || spec.alphabet > 256)
        throw std::invalid_argument("pattern: alphabet must be in [2, 256]");
    if (spec.target < 0 || spec.target >= spec.alphabet)
        throw std::invalid_argument("pattern: target symbol outside alphabet");
    if (spec.run_length < 1) throw std::invalid_argument("pattern: run length must be >= 1");
    if (spec.position == Position::At && spec.at_index < 1)
        throw std::invalid_argument("pattern: run start index is 1-based");
}

struct OutcomeString {
    int alphabet = 2;
    std::vector<std::uint8_t> symbols;

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (alphabet > 10 && i > 0) out.push_back('.');
            if (alphabet > 10) {
                out += std::to_string(static_cast<int>(symbols[i]));
            } else {
                out.push_back(static_cast<char>('0' + symbols[i]));
            }
        }
        return out;
    }
};

namespace detail {

inline bool allowed_unchecked(std::span<const std::uint8_t> symbols, const PatternSpec& spec) {
    const int n = static_cast<int>(symbols.size());
    int run = 0;
    int occurrences = 0;
    int first_start = 0;  // 1-based
    for (int i = 0; i < n; ++i) {
        run = symbols[static_cast<std::size_t>(i)] == spec.target ? run + 1 : 0;
        if (run >= spec.run_length) {
            ++occurrences;
            if (occurrences == 1) first_start = i - spec.run_length + 2;
            if (occurrences > 1) return false;
        }
    }
    if (occurrences != 1) return false;

    switch (spec.position) {
        case Position::End:
            return first_start == n - spec.run_length + 1;
        case Position::At:
            return first_start == spec.at_index;
        case Position::Anywhere:
            return true;
    }
    return false;
}

inline void check_at_range(const PatternSpec& spec, int n) {
    if (spec.position == Position::At && spec.at_index > n - spec.run_length + 1) {
        throw std::out_of_range("pattern: run start index exceeds n - N + 1");
    }
}

}  // namespace detail

inline bool is_allowed(std::span<const std::uint8_t> symbols, const PatternSpec& spec) {
    validate(spec);
    detail::check_at_range(spec, static_cast<int>(symbols.size()));
    return detail::allowed_unchecked(symbols, spec);
}

inline bool is_allowed(const OutcomeString& s, const PatternSpec& spec) {
    if (s.alphabet != spec.alphabet)
        throw std::invalid_argument("is_allowed: alphabet mismatch");
    return is_allowed(std::span<const std::uint8_t>(s.symbols), spec);
}

// Enumeration is capped so the full sweep stays interactive. Counting and
// weighting stream through the strings; only enumerate_allowed materializes.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 24;

inline std::uint64_t checked_string_count(int alphabet, int n) {
    if (n < 1) throw std::invalid_argument("string length must be >= 1");
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(alphabet);
        if (total > kEnumerationBudget) {
            throw std::runtime_error("enumeration budget exceeded: " + std::to_string(alphabet) +
                                     "^" + std::to_string(n) + " > 2^24");
        }
    }
    return total;
}

// Visits every length-n string in lexicographic order and calls fn on the
// allowed ones. The visitor receives a span that is only valid during the call.
template <typename Fn>
void for_each_allowed(int n, const PatternSpec& spec, Fn&& fn) {
    validate(spec);
    detail::check_at_range(spec, n);
    const std::uint64_t total = checked_string_count(spec.alphabet, n);
    std::vector<std::uint8_t> s(static_cast<std::size_t>(n), 0);
    const auto d = static_cast<std::uint8_t>(spec.alphabet);
    for (std::uint64_t i = 0; i < total; ++i) {
        if (detail::allowed_unchecked(std::span<const std::uint8_t>(s), spec)) {
            fn(std::span<const std::uint8_t>(s));
        }
        for (int pos = n - 1; pos >= 0; --pos) {
            auto& digit = s[static_cast<std::size_t>(pos)];
            if (++digit < d) break;
            digit = 0;
        }
    }
}

inline std::vector<OutcomeString> enumerate_allowed(int n, const PatternSpec& spec) {
    std::vector<OutcomeString> out;
    for_each_allowed(n, spec, [&](std::span<const std::uint8_t> s) {
        out.push_back(OutcomeString{spec.alphabet, {s.begin(), s.end()}});
    });
    return out;
}

inline BigInt count_allowed(int n, const PatternSpec& spec) {
    std::uint64_t count = 0;
    for_each_allowed(n, spec, [&](std::span<const std::uint8_t>) { ++count; });
    return BigInt(count);
}

// Born-rule weight of the allowed set: sum over allowed strings of the
// product of per-symbol probabilities. Strings sharing a symbol histogram
// share a weight, so the strings are binned first and the (expensive)
// products are taken once per histogram.
template <typename T>
T weighted_count(int n, const PatternSpec& spec, std::span<const T> probs) {
    if (static_cast<int>(probs.size()) != spec.alphabet) {
        throw std::invalid_argument("weighted_count: coin size does not match alphabet");
    }
    T sum = 0;
    for (const T& p : probs) sum += p;
    if constexpr (std::is_same_v<T, Rational>) {
        if (sum != 1) throw std::invalid_argument("weighted_count: coin must sum to 1");
    } else {
        if (std::abs(static_cast<double>(sum) - 1.0) > kRealNormalizationTol) {
            throw std::invalid_argument("weighted_count: coin must sum to 1 within 1e-12");
        }
    }

    std::map<std::vector<std::uint8_t>, std::uint64_t> histogram_counts;
    std::vector<std::uint8_t> histogram(static_cast<std::size_t>(spec.alphabet));
    for_each_allowed(n, spec, [&](std::span<const std::uint8_t> s) {
        std::fill(histogram.begin(), histogram.end(), std::uint8_t{0});
        for (std::uint8_t symbol : s) ++histogram[symbol];
        ++histogram_counts[histogram];
    });

    T total = 0;
    for (const auto& [counts, multiplicity] : histogram_counts) {
        T weight(static_cast<long long>(multiplicity));
        for (std::size_t symbol = 0; symbol < counts.size(); ++symbol) {
            if (counts[symbol] != 0) {
                weight *= value_pow(probs[symbol], counts[symbol]);
            }
        }
        total += weight;
    }
    return total;
}

inline std::uint64_t pack_base_d(std::span<const std::uint8_t> symbols, int alphabet) {
    std::uint64_t value = 0;
    for (std::uint8_t symbol : symbols) {
        value = value * static_cast<std::uint64_t>(alphabet) + symbol;
    }
    return value;
}

inline std::vector<std::uint8_t> unpack_base_d(std::uint64_t value, int alphabet, int n) {
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        symbols[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(value % static_cast<std::uint64_t>(alphabet));
        value /= static_cast<std::uint64_t>(alphabet);
    }
    return symbols;
}

// Allowed binary strings read as integers, most significant bit first,
// ascending. Defined for the binary alphabet only.
inline std::vector<std::uint64_t> decimal_states(int n, const PatternSpec& spec) {
    if (spec.alphabet != 2) {
        throw std::invalid_argument("decimal_states: defined for the binary alphabet only");
    }
    std::vector<std::uint64_t> out;
    for_each_allowed(n, spec, [&](std::span<const std::uint8_t> s) {
        out.push_back(pack_base_d(s, 2));
    });
    // lexicographic enumeration of fixed-width strings is already ascending
    return out;
}

}  // namespace qcoin
