// Copyright 2026 The qarm-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qarm/statevector.hpp"

namespace qarm {

/// Measurement outcome table: bitstring -> probability (exact mode,
/// total = 1) or bitstring -> count (sampled mode, total = shots).
/// Bitstrings follow the print order declared in `bit_order`: the first
/// measured qubit is the leftmost, most significant character.
struct Histogram {
    std::map<std::string, double> entries;
    double total = 1.0;
    std::string bit_order;
    uint64_t shots = 0; // 0 = exact probabilities
    uint64_t seed = 0;

    double probability(const std::string &bitstring) const {
        auto it = entries.find(bitstring);
        if (it == entries.end()) {
            return 0.0;
        }
        return shots == 0 ? it->second : it->second / static_cast<double>(shots);
    }
};

namespace detail {

/// Packs the bits of `basis_index` selected by `qubits` (first qubit becomes
/// the most significant bit of the result).
inline uint64_t pack_measured_bits(uint64_t basis_index, const std::vector<uint32_t> &qubits) {
    uint64_t packed = 0;
    for (uint32_t q : qubits) {
        packed = (packed << 1) | ((basis_index >> q) & 1);
    }
    return packed;
}

inline std::string bits_to_string(uint64_t packed, size_t width) {
    std::string s(width, '0');
    for (size_t i = 0; i < width; ++i) {
        if ((packed >> (width - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

inline std::vector<double> marginal_probabilities(const StateVector &state,
                                                  const std::vector<uint32_t> &qubits) {
    if (qubits.empty()) {
        throw std::invalid_argument("measured qubit subset must be nonempty");
    }
    for (uint32_t q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("measured qubit out of range");
        }
    }
    std::vector<double> probs(size_t{1} << qubits.size(), 0.0);
    const auto &amps = state.amplitudes();
    for (size_t idx = 0; idx < amps.size(); ++idx) {
        const double p = std::norm(amps[idx]);
        if (p > 0.0) {
            probs[pack_measured_bits(idx, qubits)] += p;
        }
    }
    return probs;
}

} // namespace detail

/// Marginal probability of each bitstring over the given qubits, listed in
/// print order (first = leftmost character). Entries below 1e-12 are omitted.
inline Histogram exact_distribution(const StateVector &state, const std::vector<uint32_t> &qubits) {
    const auto probs = detail::marginal_probabilities(state, qubits);
    Histogram h;
    h.total = 1.0;
    h.shots = 0;
    h.bit_order = "listed qubits, most significant first";
    for (size_t v = 0; v < probs.size(); ++v) {
        if (probs[v] >= 1e-12) {
            h.entries[detail::bits_to_string(v, qubits.size())] = probs[v];
        }
    }
    return h;
}

/// Multinomial draw from the exact distribution, deterministic for a given
/// seed. Uniform variates are derived from raw mt19937_64 output so the
/// counts do not depend on the standard library's distribution internals.
inline Histogram sample(const StateVector &state, const std::vector<uint32_t> &qubits,
                        uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const auto probs = detail::marginal_probabilities(state, qubits);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t v = 0; v < probs.size(); ++v) {
        acc += probs[v];
        cdf[v] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<uint64_t> counts(probs.size(), 0);
    for (uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        counts[static_cast<size_t>(it - cdf.begin())] += 1;
    }

    Histogram h;
    h.total = static_cast<double>(shots);
    h.shots = shots;
    h.seed = seed;
    h.bit_order = "listed qubits, most significant first";
    for (size_t v = 0; v < counts.size(); ++v) {
        if (counts[v] > 0) {
            h.entries[detail::bits_to_string(v, qubits.size())] = static_cast<double>(counts[v]);
        }
    }
    return h;
}

} // namespace qarm
