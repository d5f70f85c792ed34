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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qarm {

/// Gate vocabulary. Multi-controlled gates are first-class: the simulator
/// applies them directly, decomposition happens only at export time.
enum class GateKind {
    H,
    X,
    Z,
    Phase,
    MultiControlledX,
    MultiControlledZ,
    MultiControlledPhase,
};

/// A control condition: the gate fires only when `qubit` reads `on_one`.
/// 0-controls are explicit here, never left to X-conjugation by callers.
struct Control {
    uint32_t qubit;
    bool on_one;
};

struct GateOp {
    GateKind kind;
    std::vector<uint32_t> targets;
    std::vector<Control> controls;
    double angle = 0.0; // Phase / MultiControlledPhase only

    bool is_controlled_kind() const {
        return kind == GateKind::MultiControlledX || kind == GateKind::MultiControlledZ ||
               kind == GateKind::MultiControlledPhase;
    }
    bool is_phase_kind() const {
        return kind == GateKind::Phase || kind == GateKind::MultiControlledPhase;
    }
};

namespace gate {

inline GateOp h(uint32_t q) { return {GateKind::H, {q}, {}, 0.0}; }
inline GateOp x(uint32_t q) { return {GateKind::X, {q}, {}, 0.0}; }
inline GateOp z(uint32_t q) { return {GateKind::Z, {q}, {}, 0.0}; }
inline GateOp phase(uint32_t q, double angle) { return {GateKind::Phase, {q}, {}, angle}; }

inline GateOp mcx(std::vector<Control> controls, uint32_t target) {
    return {GateKind::MultiControlledX, {target}, std::move(controls), 0.0};
}
inline GateOp mcz(std::vector<Control> controls, uint32_t target) {
    return {GateKind::MultiControlledZ, {target}, std::move(controls), 0.0};
}
inline GateOp mcphase(std::vector<Control> controls, uint32_t target, double angle) {
    return {GateKind::MultiControlledPhase, {target}, std::move(controls), angle};
}
inline GateOp cx(uint32_t control, uint32_t target) { return mcx({{control, true}}, target); }
inline GateOp cphase(uint32_t control, uint32_t target, double angle) {
    return mcphase({{control, true}}, target, angle);
}

} // namespace gate

/// A named contiguous qubit range. Registers of a circuit must be disjoint
/// and cover every declared qubit.
struct Register {
    std::string name;
    uint32_t start;
    uint32_t size;
};

/// Ordered list of gate applications over named qubit registers: the unit of
/// synthesis, simulation and export. `measured_qubits` is metadata recording
/// which qubits a measurement reads and in which print order (leftmost char
/// of a result bitstring first, i.e. most significant first).
class Circuit {
  public:
    explicit Circuit(uint32_t num_qubits) : num_qubits_(num_qubits) {
        check_width(num_qubits);
        if (num_qubits > 0) {
            registers_.push_back({"q", 0, num_qubits});
        }
    }

    Circuit(uint32_t num_qubits, std::vector<Register> registers)
        : num_qubits_(num_qubits), registers_(std::move(registers)) {
        check_width(num_qubits);
        validate_registers();
    }

    uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<GateOp> &gates() const { return gates_; }
    const std::vector<Register> &registers() const { return registers_; }

    /// Number of basic-oracle (database access) subcircuits instantiated in
    /// this circuit. Maintained by the synthesis layer, reported by the CLI.
    size_t ob_instantiations() const { return ob_instantiations_; }
    void note_ob_instantiation(size_t count = 1) { ob_instantiations_ += count; }

    const std::vector<uint32_t> &measured_qubits() const { return measured_qubits_; }
    void set_measured_qubits(std::vector<uint32_t> qubits) {
        for (uint32_t q : qubits) {
            check_index(q);
        }
        measured_qubits_ = std::move(qubits);
    }

    void add(GateOp op) {
        validate_gate(op);
        gates_.push_back(std::move(op));
    }

    /// Appends another circuit of the same width; oracle counts accumulate.
    void append(const Circuit &other) {
        if (other.num_qubits_ != num_qubits_) {
            throw std::invalid_argument("circuit width mismatch in append");
        }
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        ob_instantiations_ += other.ob_instantiations_;
    }

    /// Reverse-adjoint: gates in reverse order with negated phase angles.
    /// Every kind in the vocabulary is self-adjoint except the phase gates.
    Circuit adjoint() const {
        Circuit rev(num_qubits_, registers_);
        rev.gates_.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            GateOp g = *it;
            if (g.is_phase_kind()) {
                g.angle = -g.angle;
            }
            rev.gates_.push_back(std::move(g));
        }
        rev.ob_instantiations_ = ob_instantiations_;
        return rev;
    }

  private:
    static void check_width(uint32_t num_qubits) {
        // qubit sets are tracked in 64-bit masks
        if (num_qubits > 60) {
            throw std::invalid_argument("circuit width limited to 60 qubits");
        }
    }

    void check_index(uint32_t q) const {
        if (q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                    std::to_string(num_qubits_) + "-qubit circuit");
        }
    }

    void validate_gate(const GateOp &op) const {
        if (op.targets.empty()) {
            throw std::invalid_argument("gate has no target");
        }
        if (op.is_controlled_kind() && op.targets.size() != 1) {
            throw std::invalid_argument("multi-controlled gate takes exactly one target");
        }
        if (!op.is_controlled_kind() && !op.controls.empty()) {
            throw std::invalid_argument("plain gate kinds take no controls; use a multi-controlled kind");
        }
        if (op.is_phase_kind() && !std::isfinite(op.angle)) {
            throw std::invalid_argument("non-finite phase angle");
        }
        uint64_t seen = 0;
        auto mark = [&](uint32_t q) {
            check_index(q);
            uint64_t bit = uint64_t{1} << q;
            if (seen & bit) {
                throw std::invalid_argument("gate indices must be distinct");
            }
            seen |= bit;
        };
        for (uint32_t t : op.targets) {
            mark(t);
        }
        for (const Control &c : op.controls) {
            mark(c.qubit);
        }
    }

    void validate_registers() const {
        std::vector<bool> covered(num_qubits_, false);
        for (const Register &r : registers_) {
            for (uint32_t q = r.start; q < r.start + r.size; ++q) {
                if (q >= num_qubits_) {
                    throw std::invalid_argument("register '" + r.name + "' exceeds circuit width");
                }
                if (covered[q]) {
                    throw std::invalid_argument("registers overlap at qubit " + std::to_string(q));
                }
                covered[q] = true;
            }
        }
        for (uint32_t q = 0; q < num_qubits_; ++q) {
            if (!covered[q]) {
                throw std::invalid_argument("registers do not cover qubit " + std::to_string(q));
            }
        }
    }

    uint32_t num_qubits_;
    std::vector<Register> registers_;
    std::vector<GateOp> gates_;
    std::vector<uint32_t> measured_qubits_;
    size_t ob_instantiations_ = 0;
};

} // namespace qarm
