#pragma once

#include "qcoin/coin.hpp"
#include "qcoin/numeric.hpp"
#include "qcoin/sequences.hpp"

#include <cmath>
#include <vector>

namespace qcoin {

// Measurement probabilities for the run-at-position events. Closed forms
// divide an exact sequence count by d^n; the generic-coin path runs the
// polynomial recursion in whatever number type the coin carries.

// Probability that a maximally random d-ary coin shows the target run only
// in the last run_length trials of n. Too-short strings have probability 0.
inline Rational prob_end_uniform(int d, int run_length, long n) {
    if (d < 2) throw std::invalid_argument("prob_end_uniform: alphabet must be >= 2");
    if (run_length < 1) throw std::invalid_argument("prob_end_uniform: run length must be >= 1");
    if (n < run_length) return Rational(0);
    return Rational(gen_nbonacci(run_length, d - 1, n - 1),
                    int_pow(d, static_cast<unsigned>(n)));
}

// Recursion for a generic coin with target probability p:
//   P_1 = ... = P_{N-1} = 0,  P_N = p^N,
//   P_n = (1 - p) * (P_{n-1} + p P_{n-2} + ... + p^{N-1} P_{n-N}).
// Only the target's probability enters; the other d-1 outcomes act as one
// "anything else" symbol. Instantiated with Rational or double.
template <typename T>
T run_end_probability(const T& p_target, int run_length, long n) {
    if (run_length < 1) throw std::invalid_argument("run_end_probability: run length must be >= 1");
    if (n < 1) throw std::invalid_argument("run_end_probability: n must be >= 1");
    const int window = run_length;
    if (n < window) return T(0);

    std::vector<T> powers(static_cast<std::size_t>(window));
    powers[0] = T(1);
    for (int j = 1; j < window; ++j) powers[static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j - 1)] * p_target;

    const T complement = T(1) - p_target;
    std::vector<T> recent(static_cast<std::size_t>(window), T(0));  // P_{n-N} .. P_{n-1}
    recent.back() = value_pow(p_target, static_cast<unsigned>(window));  // P_N
    for (long i = window + 1; i <= n; ++i) {
        T next(0);
        for (int j = 0; j < window; ++j) {
            // recent[window-1-j] is P_{i-1-j}, weighted by p^j
            next += powers[static_cast<std::size_t>(j)] *
                    recent[static_cast<std::size_t>(window - 1 - j)];
        }
        next *= complement;
        for (std::size_t j = 0; j + 1 < recent.size(); ++j) recent[j] = std::move(recent[j + 1]);
        recent.back() = std::move(next);
    }
    return recent.back();
}

// Exact generic-coin probability; requires a rational coin.
inline Rational prob_end_generic(const CoinSpec& coin, int target, int run_length, long n) {
    if (target < 0 || target >= coin.alphabet())
        throw std::invalid_argument("prob_end_generic: target outside alphabet");
    return run_end_probability<Rational>(coin.rational_prob(target), run_length, n);
}

// binary64 route, usable for either tower (explicit conversion).
inline double prob_end_generic_real(const CoinSpec& coin, int target, int run_length, long n) {
    if (target < 0 || target >= coin.alphabet())
        throw std::invalid_argument("prob_end_generic_real: target outside alphabet");
    return run_end_probability<double>(coin.real_prob(target), run_length, n);
}

// Fair qubit coin, run at positions k..k+N-1 only: B_{k+N-2} B_{n-k} / 2^n.
inline Rational prob_position(int run_length, long n, long k) {
    if (run_length < 2) throw std::invalid_argument("prob_position: run length must be >= 2");
    if (k < 1 || k > n - run_length + 1)
        throw std::out_of_range("prob_position: k must be in [1, n - N + 1]");
    const BigInt left = nbonacci(run_length, k + run_length - 2);
    const BigInt right = nbonacci(run_length, n - k);
    return Rational(left * right, int_pow(2, static_cast<unsigned>(n)));
}

// Same quantity for N = 2 through Lucas numbers: (L_n - (-1)^k L_{n-2k}) / (5 * 2^n).
inline Rational prob_position_lucas(long n, long k) {
    if (k < 1 || k > n - 1) throw std::out_of_range("prob_position_lucas: k must be in [1, n - 1]");
    const BigInt diff = lucas(n - 2 * k);
    const BigInt numerator = exact_div(k % 2 == 0 ? BigInt(lucas(n) - diff) : BigInt(lucas(n) + diff), 5);
    return Rational(numerator, int_pow(2, static_cast<unsigned>(n)));
}

// Run exactly once, anywhere in the string: sum of the position formulas.
inline Rational prob_anywhere(int run_length, long n) {
    if (n < run_length) return Rational(0);
    Rational sum(0);
    for (long k = 1; k <= n - run_length + 1; ++k) {
        sum += prob_position(run_length, n, k);
    }
    return sum;
}

// N = 2 closed form for the same sum: (n L_n - F_n) / (5 * 2^n).
inline Rational prob_anywhere_lucas(long n) {
    if (n < 2) return Rational(0);
    return Rational(fibonacci_convolution_lucas(n), int_pow(2, static_cast<unsigned>(n)));
}

// Qubit coin at Bloch angle theta; the probabilities are polynomials in cos(theta).
inline double prob_end_bloch(double theta, int run_length, long n) {
    const double s = std::sin(theta / 2.0);
    return run_end_probability<double>(s * s, run_length, n);
}

}  // namespace qcoin
