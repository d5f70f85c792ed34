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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qarm/circuit.hpp"

namespace qarm {

using Complex = std::complex<double>;

constexpr double kNormTolerance = 1e-9;

/// Dense statevector over 2^n complex amplitudes. Basis-state index
/// convention, fixed artifact-wide: qubit q contributes bit value at
/// position q; qubit 0 is least significant.
class StateVector {
  public:
    explicit StateVector(uint32_t num_qubits)
        : num_qubits_(num_qubits), amplitudes_(size_t{1} << num_qubits, Complex{0.0, 0.0}) {
        if (num_qubits > 28) {
            throw std::invalid_argument("statevector limited to 28 qubits");
        }
        amplitudes_[0] = Complex{1.0, 0.0};
    }

    StateVector(uint32_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != (size_t{1} << num_qubits)) {
            throw std::invalid_argument("amplitude count must be 2^num_qubits");
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw std::invalid_argument("statevector is not normalized");
        }
    }

    uint32_t num_qubits() const { return num_qubits_; }
    size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Complex> &amplitudes() const { return amplitudes_; }

    Complex amplitude(size_t basis_index) const { return amplitudes_.at(basis_index); }
    void set_amplitude(size_t basis_index, Complex value) { amplitudes_.at(basis_index) = value; }

    double norm_squared() const {
        double total = 0.0;
        for (const Complex &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

    /// Fidelity |<this|other>|^2.
    double fidelity(const StateVector &other) const {
        if (other.num_qubits_ != num_qubits_) {
            throw std::invalid_argument("fidelity requires equal widths");
        }
        Complex overlap{0.0, 0.0};
        for (size_t i = 0; i < amplitudes_.size(); ++i) {
            overlap += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        }
        return std::norm(overlap);
    }

  private:
    friend void apply_in_place(StateVector &state, const GateOp &op);

    uint32_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Applies one gate in place. Only basis states whose control bits match are
/// touched: the free-bit patterns are enumerated as submasks of the
/// complement mask via x' = (x - mask) & mask, so gates with many controls
/// visit few amplitudes and the loop body has no per-bit work.
inline void apply_in_place(StateVector &state, const GateOp &op) {
    const uint32_t n = state.num_qubits();
    uint64_t control_mask = 0;
    uint64_t control_value = 0;
    for (const Control &c : op.controls) {
        if (c.qubit >= n) {
            throw std::out_of_range("control qubit out of range");
        }
        control_mask |= uint64_t{1} << c.qubit;
        if (c.on_one) {
            control_value |= uint64_t{1} << c.qubit;
        }
    }
    if (op.is_phase_kind() && !std::isfinite(op.angle)) {
        throw std::invalid_argument("non-finite phase angle");
    }

    auto &amps = state.amplitudes_;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const uint64_t all_bits = (uint64_t{1} << n) - 1;

    for (uint32_t target : op.targets) {
        if (target >= n) {
            throw std::out_of_range("target qubit out of range");
        }
        const uint64_t target_bit = uint64_t{1} << target;
        const uint64_t free_mask = all_bits & ~(control_mask | target_bit);

        switch (op.kind) {
        case GateKind::H: {
            uint64_t x = 0;
            do {
                const uint64_t i0 = control_value | x;
                const uint64_t i1 = i0 | target_bit;
                const Complex a0 = amps[i0];
                const Complex a1 = amps[i1];
                amps[i0] = (a0 + a1) * inv_sqrt2;
                amps[i1] = (a0 - a1) * inv_sqrt2;
                x = (x - free_mask) & free_mask;
            } while (x != 0);
            break;
        }
        case GateKind::X:
        case GateKind::MultiControlledX: {
            uint64_t x = 0;
            do {
                const uint64_t i0 = control_value | x;
                std::swap(amps[i0], amps[i0 | target_bit]);
                x = (x - free_mask) & free_mask;
            } while (x != 0);
            break;
        }
        case GateKind::Z:
        case GateKind::MultiControlledZ: {
            uint64_t x = 0;
            do {
                const uint64_t i1 = control_value | x | target_bit;
                amps[i1] = -amps[i1];
                x = (x - free_mask) & free_mask;
            } while (x != 0);
            break;
        }
        case GateKind::Phase:
        case GateKind::MultiControlledPhase: {
            const Complex factor = std::polar(1.0, op.angle);
            uint64_t x = 0;
            do {
                const uint64_t i1 = control_value | x | target_bit;
                amps[i1] *= factor;
                x = (x - free_mask) & free_mask;
            } while (x != 0);
            break;
        }
        }
    }
}

inline StateVector apply(StateVector state, const GateOp &op) {
    apply_in_place(state, op);
    return state;
}

/// Runs a circuit on an initial state and returns the final state.
inline StateVector run(const Circuit &circuit, StateVector initial) {
    if (circuit.num_qubits() != initial.num_qubits()) {
        throw std::invalid_argument("circuit and state widths differ");
    }
    for (const GateOp &op : circuit.gates()) {
        apply_in_place(initial, op);
    }
    if (std::abs(initial.norm_squared() - 1.0) > kNormTolerance) {
        throw std::logic_error("statevector norm drifted beyond tolerance");
    }
    return initial;
}

inline StateVector run(const Circuit &circuit) {
    return run(circuit, StateVector(circuit.num_qubits()));
}

} // namespace qarm
