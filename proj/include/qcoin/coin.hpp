#pragma once

#include "qcoin/numeric.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <utility>
#include <vector>

namespace qcoin {

inline constexpr double kRealNormalizationTol = 1e-12;

// One trial's measurement distribution over a d-letter alphabet.
// Carries either exact rational probabilities or binary64 ones; the two
// towers never mix implicitly. real_prob() is the explicit conversion.
class CoinSpec {
public:
    static CoinSpec from_rationals(std::vector<Rational> probs) {
        validate_size(probs.size());
        Rational sum = 0;
        for (const Rational& p : probs) {
            if (p < 0) throw std::invalid_argument("coin probability is negative");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("coin probabilities must sum to 1 exactly");
        CoinSpec coin;
        coin.exact_ = std::move(probs);
        coin.is_exact_ = true;
        return coin;
    }

    static CoinSpec from_reals(std::vector<double> probs) {
        validate_size(probs.size());
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0)) throw std::invalid_argument("coin probability is negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRealNormalizationTol) {
            throw std::invalid_argument("coin probabilities must sum to 1 within 1e-12");
        }
        CoinSpec coin;
        coin.real_ = std::move(probs);
        coin.is_exact_ = false;
        return coin;
    }

    static CoinSpec uniform(int alphabet) {
        validate_size(static_cast<std::size_t>(alphabet > 0 ? alphabet : 0));
        std::vector<Rational> probs(static_cast<std::size_t>(alphabet), Rational(1, alphabet));
        return from_rationals(std::move(probs));
    }

    int alphabet() const {
        return static_cast<int>(is_exact_ ? exact_.size() : real_.size());
    }

    bool is_exact() const { return is_exact_; }

    const Rational& rational_prob(int symbol) const {
        if (!is_exact_) throw std::logic_error("rational_prob: coin holds binary64 probabilities");
        return exact_.at(static_cast<std::size_t>(symbol));
    }

    const std::vector<Rational>& rational_probs() const {
        if (!is_exact_) throw std::logic_error("rational_probs: coin holds binary64 probabilities");
        return exact_;
    }

    // Explicit binary64 view, valid for both towers.
    double real_prob(int symbol) const {
        return is_exact_ ? to_double(exact_.at(static_cast<std::size_t>(symbol)))
                         : real_.at(static_cast<std::size_t>(symbol));
    }

    std::vector<double> real_probs() const {
        if (!is_exact_) return real_;
        std::vector<double> out;
        out.reserve(exact_.size());
        for (const Rational& p : exact_) out.push_back(to_double(p));
        return out;
    }

private:
    CoinSpec() = default;

    static void validate_size(std::size_t d) {
        if (d < 2) throw std::invalid_argument("coin needs at least two outcomes");
        if (d > 256) throw std::invalid_argument("coin alphabet capped at 256");
    }

    std::vector<Rational> exact_;
    std::vector<double> real_;
    bool is_exact_ = true;
};

// Qubit coin at polar angle theta: p0 = cos^2(theta/2), p1 = sin^2(theta/2).
// The azimuthal angle is a phase and never reaches the probabilities.
inline CoinSpec bloch_coin(double theta, double /*phi*/ = 0.0) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    double p0 = c * c;
    double p1 = s * s;
    // c^2 + s^2 can be off by one ulp; pin the pair to an exact sum of 1
    const double sum = p0 + p1;
    p0 /= sum;
    p1 = 1.0 - p0;
    return CoinSpec::from_reals({p0, p1});
}

// Outcome probabilities of the superposition a|+> + b|->.
inline std::pair<double, double> superposition_probs(std::complex<double> a,
                                                     std::complex<double> b) {
    const double norm = std::norm(a) + std::norm(b);
    if (std::abs(norm - 1.0) > kRealNormalizationTol) {
        throw std::invalid_argument("superposition_probs: |a|^2 + |b|^2 must be 1");
    }
    const double overlap = (a * std::conj(b)).real();
    return {0.5 + overlap, 0.5 - overlap};
}

// Shannon entropy of one trial, in bits, with 0 log 0 = 0.
inline double shannon_entropy_bits(const CoinSpec& coin) {
    double entropy = 0.0;
    for (int i = 0; i < coin.alphabet(); ++i) {
        const double p = coin.real_prob(i);
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    return entropy;
}

}  // namespace qcoin
