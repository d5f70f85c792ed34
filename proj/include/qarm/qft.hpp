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

#include <numbers>
#include <stdexcept>

#include "qarm/circuit.hpp"

namespace qarm {

namespace detail {

/// Swap as three CNOTs; the gate vocabulary has no native swap.
inline void append_swap(Circuit &c, uint32_t a, uint32_t b) {
    c.add(gate::cx(a, b));
    c.add(gate::cx(b, a));
    c.add(gate::cx(a, b));
}

} // namespace detail

/// Emits the forward QFT on qubits [start, start+count):
/// |x> -> sum_y exp(2*pi*i*x*y / 2^count) |y> / sqrt(2^count),
/// with bit b of x and y carried by qubit start+b. Terminal swaps keep the
/// emitted circuit self-contained (no index relabeling).
inline void append_qft(Circuit &c, uint32_t start, uint32_t count) {
    if (count == 0) {
        throw std::invalid_argument("qft register must be nonempty");
    }
    if (start + count > c.num_qubits()) {
        throw std::out_of_range("qft register exceeds circuit width");
    }
    for (uint32_t j = count; j-- > 0;) {
        c.add(gate::h(start + j));
        for (uint32_t m = j; m-- > 0;) {
            const double angle = std::numbers::pi / static_cast<double>(uint64_t{1} << (j - m));
            c.add(gate::cphase(start + m, start + j, angle));
        }
    }
    for (uint32_t i = 0; i < count / 2; ++i) {
        detail::append_swap(c, start + i, start + count - 1 - i);
    }
}

inline void append_inverse_qft(Circuit &c, uint32_t start, uint32_t count) {
    if (count == 0) {
        throw std::invalid_argument("qft register must be nonempty");
    }
    if (start + count > c.num_qubits()) {
        throw std::out_of_range("qft register exceeds circuit width");
    }
    for (uint32_t i = count / 2; i-- > 0;) {
        detail::append_swap(c, start + i, start + count - 1 - i);
    }
    for (uint32_t j = 0; j < count; ++j) {
        for (uint32_t m = 0; m < j; ++m) {
            const double angle = -std::numbers::pi / static_cast<double>(uint64_t{1} << (j - m));
            c.add(gate::cphase(start + m, start + j, angle));
        }
        c.add(gate::h(start + j));
    }
}

inline Circuit qft(uint32_t num_qubits, uint32_t start, uint32_t count) {
    Circuit c(num_qubits);
    append_qft(c, start, count);
    return c;
}

inline Circuit qft(uint32_t count) { return qft(count, 0, count); }

/// Inverse QFT on [start, start+count) as a standalone circuit.
inline Circuit inverse_qft(uint32_t num_qubits, uint32_t start, uint32_t count) {
    Circuit c(num_qubits);
    append_inverse_qft(c, start, count);
    return c;
}

inline Circuit inverse_qft(uint32_t count) { return inverse_qft(count, 0, count); }

} // namespace qarm
