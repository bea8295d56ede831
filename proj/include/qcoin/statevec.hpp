#pragma once

#include "qcoin/numeric.hpp"
#include "qcoin/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace qcoin {

// Dense state vector over the d^n computational basis, index = base-d
// reading of the outcome label (leftmost digit most significant), and the
// diagonal projectors onto the allowed-string subspaces. Projectors are
// index sets, never matrices: the operator algebra here is masking.

inline constexpr std::uint64_t kAmplitudeBudget = std::uint64_t{1} << 22;

struct StateVector {
    int alphabet = 2;
    int sites = 1;
    std::vector<std::complex<double>> amplitudes;

    double norm_sq() const {
        double sum = 0.0;
        for (const auto& a : amplitudes) sum += std::norm(a);
        return sum;
    }
};

inline std::uint64_t checked_dimension(int alphabet, int sites) {
    if (alphabet < 2) throw std::invalid_argument("state: alphabet must be >= 2");
    if (sites < 1) throw std::invalid_argument("state: need at least one site");
    std::uint64_t dim = 1;
    for (int i = 0; i < sites; ++i) {
        dim *= static_cast<std::uint64_t>(alphabet);
        if (dim > kAmplitudeBudget) {
            throw std::runtime_error("state budget exceeded: " + std::to_string(alphabet) + "^" +
                                     std::to_string(sites) + " > 2^22 amplitudes");
        }
    }
    return dim;
}

// Equal amplitude 1/sqrt(d^n) on every basis state.
inline StateVector uniform_state(int alphabet, int sites) {
    const std::uint64_t dim = checked_dimension(alphabet, sites);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return {alphabet, sites,
            std::vector<std::complex<double>>(static_cast<std::size_t>(dim), {amp, 0.0})};
}

struct TreeProjector {
    int alphabet = 2;
    int sites = 1;
    PatternSpec spec;
    std::vector<std::uint64_t> indices;  // sorted ascending

    std::uint64_t dimension() const { return indices.size(); }
};

// Projector onto the allowed strings of the pattern; the index set is the
// base-d packing of the enumeration, already ascending.
inline TreeProjector build_projector(int sites, const PatternSpec& spec) {
    TreeProjector projector{spec.alphabet, sites, spec, {}};
    for_each_allowed(sites, spec, [&](std::span<const std::uint8_t> s) {
        projector.indices.push_back(pack_base_d(s, spec.alphabet));
    });
    return projector;
}

inline TreeProjector complement(const TreeProjector& projector) {
    const std::uint64_t dim = checked_dimension(projector.alphabet, projector.sites);
    TreeProjector out{projector.alphabet, projector.sites, projector.spec, {}};
    out.indices.reserve(static_cast<std::size_t>(dim) - projector.indices.size());
    auto it = projector.indices.begin();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (it != projector.indices.end() && *it == i) {
            ++it;
        } else {
            out.indices.push_back(i);
        }
    }
    return out;
}

namespace detail {

inline void check_compatible(const StateVector& psi, const TreeProjector& projector) {
    if (psi.alphabet != projector.alphabet || psi.sites != projector.sites) {
        throw std::invalid_argument("state and projector dimensions do not match");
    }
}

}  // namespace detail

// <psi| P |psi> = sum of |c_i|^2 over the projector's index set.
inline double born_probability(const StateVector& psi, const TreeProjector& projector) {
    detail::check_compatible(psi, projector);
    double sum = 0.0;
    for (std::uint64_t index : projector.indices) {
        sum += std::norm(psi.amplitudes[static_cast<std::size_t>(index)]);
    }
    return sum;
}

// Masks amplitudes outside the subspace; no renormalization.
inline StateVector project(const StateVector& psi, const TreeProjector& projector) {
    detail::check_compatible(psi, projector);
    StateVector out{psi.alphabet, psi.sites,
                    std::vector<std::complex<double>>(psi.amplitudes.size(), {0.0, 0.0})};
    for (std::uint64_t index : projector.indices) {
        out.amplitudes[static_cast<std::size_t>(index)] =
            psi.amplitudes[static_cast<std::size_t>(index)];
    }
    return out;
}

// Collapse: mask, then rescale to unit norm.
inline StateVector project_and_normalize(const StateVector& psi, const TreeProjector& projector) {
    StateVector out = project(psi, projector);
    const double weight = out.norm_sq();
    if (weight <= 0.0) {
        throw std::domain_error("project_and_normalize: projection has zero probability");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (auto& amplitude : out.amplitudes) amplitude *= scale;
    return out;
}

}  // namespace qcoin
