#pragma once

#include "qcoin/numeric.hpp"

#include <cstdlib>
#include <vector>

namespace qcoin {

// Exact integer sequences behind the run-pattern counts: Fibonacci, Lucas,
// Tribonacci, and the multiplier-generalized N-step recurrences. Everything
// is evaluated iteratively with a sliding window; no floating point.

inline constexpr long kMaxSequenceIndex = 10000;

struct SequenceParams {
    int run_length = 2;   // how many previous terms the recurrence sums
    int multiplier = 1;   // scale factor applied to the sum (d-1 for alphabet d)
};

namespace detail {

inline void check_index(long n) {
    if (n > kMaxSequenceIndex || n < -kMaxSequenceIndex) {
        throw std::out_of_range("sequence index " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kMaxSequenceIndex));
    }
}

inline BigInt fibonacci_nonneg(long n) {
    BigInt a = 0, b = 1;  // F_0, F_1
    for (long i = 0; i < n; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

inline BigInt lucas_nonneg(long n) {
    BigInt a = 2, b = 1;  // L_0, L_1
    for (long i = 0; i < n; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

}  // namespace detail

// F_0 = 0, F_1 = 1; negative indices extended by F_{-k} = (-1)^{k+1} F_k.
inline BigInt fibonacci(long n) {
    detail::check_index(n);
    if (n >= 0) return detail::fibonacci_nonneg(n);
    BigInt value = detail::fibonacci_nonneg(-n);
    return (-n) % 2 == 0 ? -value : value;
}

// L_0 = 2, L_1 = 1; negative indices extended by L_{-k} = (-1)^k L_k.
inline BigInt lucas(long n) {
    detail::check_index(n);
    if (n >= 0) return detail::lucas_nonneg(n);
    BigInt value = detail::lucas_nonneg(-n);
    return (-n) % 2 == 0 ? value : -value;
}

// G_0 = ... = G_{N-2} = 0, G_{N-1} = 1, G_n = m * (G_{n-1} + ... + G_{n-N}).
inline BigInt gen_nbonacci(const SequenceParams& params, long n) {
    if (params.run_length < 1) throw std::invalid_argument("gen_nbonacci: run length must be >= 1");
    if (params.multiplier < 1) throw std::invalid_argument("gen_nbonacci: multiplier must be >= 1");
    if (n < 0) throw std::out_of_range("gen_nbonacci: index must be >= 0");
    detail::check_index(n);

    const int window = params.run_length;
    if (n < window) return n == window - 1 ? 1 : 0;

    std::vector<BigInt> recent(static_cast<std::size_t>(window), BigInt(0));
    recent.back() = 1;  // holds G_{N-1}
    for (long i = window; i <= n; ++i) {
        BigInt next = 0;
        for (const BigInt& term : recent) next += term;
        next *= params.multiplier;
        for (std::size_t j = 0; j + 1 < recent.size(); ++j) recent[j] = std::move(recent[j + 1]);
        recent.back() = std::move(next);
    }
    return recent.back();
}

inline BigInt gen_nbonacci(int run_length, int multiplier, long n) {
    return gen_nbonacci(SequenceParams{run_length, multiplier}, n);
}

inline BigInt nbonacci(int run_length, long n) { return gen_nbonacci(run_length, 1, n); }

inline BigInt tribonacci(long n) { return gen_nbonacci(3, 1, n); }

// F_m * F_n computed through Lucas numbers, (L_{m+n} - (-1)^n L_{m-n}) / 5.
// The division is exact only with the L_0 = 2, L_1 = 1 initial values.
inline BigInt fibonacci_product_lucas(long m, long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("fibonacci_product_lucas: indices must be >= 1");
    const BigInt cross = lucas(m + n);
    const BigInt diff = lucas(m - n);
    return exact_div(n % 2 == 0 ? BigInt(cross - diff) : BigInt(cross + diff), 5);
}

// Sum of F_k * F_{n-k} over k = 1..n-1, via the closed form (n L_n - F_n) / 5.
inline BigInt fibonacci_convolution_lucas(long n) {
    if (n < 2) throw std::invalid_argument("fibonacci_convolution_lucas: n must be >= 2");
    return exact_div(BigInt(n) * lucas(n) - fibonacci(n), 5);
}

}  // namespace qcoin
