#pragma once

#include "qcoin/numeric.hpp"
#include "qcoin/probability.hpp"
#include "qcoin/sequences.hpp"

#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

namespace qcoin {

// Series-level view of the end-run probabilities: generating functions,
// completeness sums, ratio limits, and the Shannon entropy of the
// distribution over trial counts.

inline double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

template <typename T>
struct SeriesResult {
    T partial_sum{};
    int terms_used = 0;
    double tail_bound = 0.0;
};

template <typename T>
T from_rational(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) {
        return q;
    } else {
        return to_double(q);
    }
}

// Smallest positive root by bisection; the polynomials handled here are
// strictly decreasing on x >= 0 (positive constant, negative higher terms).
inline double smallest_positive_root(std::span<const double> coeffs) {
    const auto eval = [&](double x) {
        double value = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) value = value * x + coeffs[i];
        return value;
    };
    if (eval(0.0) <= 0.0) throw std::invalid_argument("smallest_positive_root: p(0) must be > 0");
    double hi = 1.0;
    while (eval(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e9) throw std::invalid_argument("smallest_positive_root: no sign change found");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Dominant root of x^N = m (x^{N-1} + ... + x + 1); lies in (m, m+1) for N >= 2.
inline double dominant_root(int run_length, int multiplier) {
    if (run_length < 1 || multiplier < 1)
        throw std::invalid_argument("dominant_root: bad recurrence parameters");
    if (run_length == 1) return static_cast<double>(multiplier);
    const auto eval = [&](double x) {
        double geometric = 0.0;
        double power = 1.0;
        for (int j = 0; j < run_length; ++j) {
            geometric += power;
            power *= x;
        }
        return power - multiplier * geometric;  // power = x^N after the loop
    };
    double lo = static_cast<double>(multiplier);
    double hi = static_cast<double>(multiplier) + 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

inline double radius_duplicated_prob() {
    static const double r = smallest_positive_root(std::vector<double>{4.0, -2.0, -1.0});
    return r;
}
inline double radius_tribonacci_numbers() {
    static const double r = smallest_positive_root(std::vector<double>{1.0, -1.0, -1.0, -1.0});
    return r;
}
inline double radius_tribonacci_prob() {
    static const double r = smallest_positive_root(std::vector<double>{8.0, -4.0, -2.0, -1.0});
    return r;
}

template <typename T>
void check_inside_radius(const T& x, double radius) {
    const double xv = [&] {
        if constexpr (std::is_same_v<T, Rational>) return to_double(x);
        else return static_cast<double>(x);
    }();
    if (!(std::abs(xv) < radius)) {
        throw std::domain_error("generating function evaluated at or outside its convergence radius");
    }
}

}  // namespace detail

// g(x) = sum_{n>=0} P_{n+2} x^n = 1 / (4 - 2x - x^2) for the duplicated-run
// probabilities of the fair qubit coin; g(1) = 1 is the completeness relation.
template <typename T>
T genfun_duplicated_prob(const T& x) {
    detail::check_inside_radius(x, detail::radius_duplicated_prob());
    return T(1) / (T(4) - T(2) * x - x * x);
}

// Generating function of the Tribonacci numbers, x^2 / (1 - x - x^2 - x^3).
template <typename T>
T genfun_tribonacci_numbers(const T& x) {
    detail::check_inside_radius(x, detail::radius_tribonacci_numbers());
    return x * x / (T(1) - x - x * x - x * x * x);
}

// g(x) = sum_{n>=0} P_{n+3} x^n = 1 / (8 - 4x - 2x^2 - x^3) for triplicated runs.
template <typename T>
T genfun_tribonacci_prob(const T& x) {
    detail::check_inside_radius(x, detail::radius_tribonacci_prob());
    return T(1) / (T(8) - T(4) * x - T(2) * x * x - x * x * x);
}

// Truncated counterparts, built from the probability / sequence values so
// they stay an independent route to the closed forms above.
template <typename T>
T series_duplicated_prob(const T& x, int terms) {
    T sum(0), xpow(1);
    for (int j = 0; j < terms; ++j) {
        sum += from_rational<T>(prob_end_uniform(2, 2, j + 2)) * xpow;
        xpow *= x;
    }
    return sum;
}

template <typename T>
T series_tribonacci_numbers(const T& x, int terms) {
    T sum(0), xpow(1);
    for (int j = 0; j < terms; ++j) {
        sum += from_rational<T>(Rational(tribonacci(j))) * xpow;
        xpow *= x;
    }
    return sum;
}

template <typename T>
T series_tribonacci_prob(const T& x, int terms) {
    T sum(0), xpow(1);
    for (int j = 0; j < terms; ++j) {
        sum += from_rational<T>(prob_end_uniform(2, 3, j + 3)) * xpow;
        xpow *= x;
    }
    return sum;
}

// Exact partial sum of the end-run probabilities, n = N..n_max, plus a
// geometric bound on the rest. With r = root/d the probability recurrence
// has sum of coefficients r^{-j} equal to 1, so c = max over the last N
// terms of P_j / r^j propagates: P_n <= c r^n for every later n by
// induction, and the tail is at most c r^{n_max+1} / (1 - r).
inline SeriesResult<Rational> completeness_partial_sum(int d, int run_length, long n_max) {
    if (n_max < run_length)
        throw std::invalid_argument("completeness_partial_sum: n_max must be >= run length");
    Rational sum(0);
    std::vector<double> last_terms;
    for (long n = run_length; n <= n_max; ++n) {
        const Rational term = prob_end_uniform(d, run_length, n);
        sum += term;
        last_terms.push_back(to_double(term));
        if (last_terms.size() > static_cast<std::size_t>(run_length)) {
            last_terms.erase(last_terms.begin());
        }
    }
    const double ratio = dominant_root(run_length, d - 1) / d;
    double coeff = 0.0;
    for (std::size_t i = 0; i < last_terms.size(); ++i) {
        const long n = n_max - static_cast<long>(last_terms.size() - 1 - i);
        coeff = std::max(coeff, last_terms[i] / std::pow(ratio, static_cast<double>(n)));
    }
    // the envelope argument is exact; the 1e-9 headroom absorbs binary64
    // rounding, which can otherwise eat the (geometrically small) margin
    const double tail = coeff * (1.0 + 1e-9) *
                        std::pow(ratio, static_cast<double>(n_max + 1)) / (1.0 - ratio);
    return {sum, static_cast<int>(n_max - run_length + 1), tail};
}

// Consecutive-term ratios that converge to the Golden ratio (counts) or to
// half of it (probabilities), for the end-run and run-anywhere families.
enum class RatioKind { Count, Probability, AnywhereCount, AnywhereProbability };

inline double golden_ratio_limit(RatioKind kind, long n) {
    switch (kind) {
        case RatioKind::Count: {
            const BigInt den = fibonacci(n);
            if (den == 0) throw std::domain_error("golden_ratio_limit: zero denominator");
            return to_double(Rational(fibonacci(n + 1), den));
        }
        case RatioKind::Probability: {
            const BigInt den = fibonacci(n - 1);
            if (den == 0) throw std::domain_error("golden_ratio_limit: zero denominator");
            return to_double(Rational(fibonacci(n), 2 * den));
        }
        case RatioKind::AnywhereCount:
        case RatioKind::AnywhereProbability: {
            if (n < 2) throw std::domain_error("golden_ratio_limit: need n >= 2");
            const BigInt den = fibonacci_convolution_lucas(n);
            if (den == 0) throw std::domain_error("golden_ratio_limit: zero denominator");
            const Rational ratio(fibonacci_convolution_lucas(n + 1), den);
            return kind == RatioKind::AnywhereCount ? to_double(ratio) : to_double(ratio) / 2.0;
        }
    }
    throw std::invalid_argument("golden_ratio_limit: unknown kind");
}

// One term of the entropy series, -P_n log2 P_n, with the probability taken
// exactly and converted once.
inline double entropy_term(int d, int run_length, long n) {
    const double p = to_double(prob_end_uniform(d, run_length, n));
    return p > 0.0 ? -p * std::log2(p) : 0.0;
}

// Large-n model of the qubit duplicated-run term: n (phi/2)^n log2(2/phi) / sqrt(5).
inline double entropy_term_asymptotic(long n) {
    const double phi = golden_ratio();
    return static_cast<double>(n) * std::pow(phi / 2.0, static_cast<double>(n)) *
           std::log2(2.0 / phi) / std::sqrt(5.0);
}

// Partial sum of the Shannon entropy over trial counts. The tail field is an
// estimate: the asymptotic term summed in closed form for the qubit
// duplicated case, a geometric extrapolation of the last term otherwise.
inline SeriesResult<double> entropy_series(int d, int run_length, long n_max) {
    if (n_max < run_length)
        throw std::invalid_argument("entropy_series: n_max must be >= run length");
    double sum = 0.0;
    double last = 0.0;
    for (long n = run_length; n <= n_max; ++n) {
        last = entropy_term(d, run_length, n);
        sum += last;
    }
    double tail = 0.0;
    if (d == 2 && run_length == 2) {
        // sum_{n > K} n a^n = a^{K+1} ((K+1) - a K) / (1-a)^2
        const double a = golden_ratio() / 2.0;
        const double k = static_cast<double>(n_max);
        tail = std::log2(2.0 / golden_ratio()) / std::sqrt(5.0) *
               std::pow(a, k + 1.0) * ((k + 1.0) - a * k) / ((1.0 - a) * (1.0 - a));
    } else {
        const double ratio = dominant_root(run_length, d - 1) / d;
        const double stretched = std::min(0.999, ratio * (1.0 + 1.0 / static_cast<double>(n_max)));
        tail = last * stretched / (1.0 - stretched);
    }
    return {sum, static_cast<int>(n_max - run_length + 1), tail};
}

}  // namespace qcoin
