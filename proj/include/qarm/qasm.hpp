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

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qarm/circuit.hpp"

namespace qarm {

struct QasmExport {
    std::string text;
    size_t gate_statements = 0;
    size_t scratch_qubits = 0;
};

namespace detail {

inline std::string sanitize_register_name(const std::string &name) {
    std::string out;
    for (char ch : name) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        } else {
            out.push_back('_');
        }
    }
    if (out.empty() || !std::islower(static_cast<unsigned char>(out.front()))) {
        out.insert(out.begin(), 'r');
    }
    return out;
}

inline std::string format_angle(double angle) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

class QasmWriter {
  public:
    explicit QasmWriter(const Circuit &circuit) : circuit_(circuit) {
        for (const Register &r : circuit.registers()) {
            const std::string name = sanitize_register_name(r.name);
            for (uint32_t q = r.start; q < r.start + r.size; ++q) {
                if (qubit_names_.size() <= q) {
                    qubit_names_.resize(q + 1);
                }
                qubit_names_[q] = name + "[" + std::to_string(q - r.start) + "]";
            }
        }
        scratch_needed_ = scratch_requirement();
    }

    QasmExport write() {
        std::ostringstream out;
        out << "OPENQASM 2.0;\n";
        out << "include \"qelib1.inc\";\n";
        for (const Register &r : circuit_.registers()) {
            if (r.size > 0) {
                out << "qreg " << sanitize_register_name(r.name) << "[" << r.size << "];\n";
            }
        }
        if (scratch_needed_ > 0) {
            out << "qreg scratch[" << scratch_needed_ << "];\n";
        }
        const auto &measured = circuit_.measured_qubits();
        if (!measured.empty()) {
            out << "creg c[" << measured.size() << "];\n";
        }

        for (const GateOp &op : circuit_.gates()) {
            emit_gate(out, op);
        }

        // Classical bit i holds the i-th character of the printed bitstring,
        // i.e. c[0] is the leftmost, most significant bit.
        for (size_t i = 0; i < measured.size(); ++i) {
            out << "measure " << qubit_names_[measured[i]] << " -> c[" << i << "];\n";
        }

        QasmExport result;
        result.text = out.str();
        result.gate_statements = gate_statements_;
        result.scratch_qubits = scratch_needed_;
        return result;
    }

  private:
    size_t scratch_requirement() const {
        size_t needed = 0;
        for (const GateOp &op : circuit_.gates()) {
            const size_t m = op.controls.size();
            if (op.kind == GateKind::MultiControlledX || op.kind == GateKind::MultiControlledZ) {
                if (m >= 3) {
                    needed = std::max(needed, m - 2);
                }
            } else if (op.kind == GateKind::MultiControlledPhase) {
                if (m >= 2) {
                    needed = std::max(needed, m - 1);
                }
            }
        }
        return needed;
    }

    void stmt(std::ostringstream &out, const std::string &line) {
        out << line << ";\n";
        ++gate_statements_;
    }

    std::string scratch(size_t i) const { return "scratch[" + std::to_string(i) + "]"; }

    void emit_gate(std::ostringstream &out, const GateOp &op) {
        // 0-controls become X conjugation here, at the lowering boundary.
        std::vector<uint32_t> controls;
        std::vector<uint32_t> inverted;
        for (const Control &c : op.controls) {
            controls.push_back(c.qubit);
            if (!c.on_one) {
                inverted.push_back(c.qubit);
            }
        }
        for (uint32_t q : inverted) {
            stmt(out, "x " + qubit_names_[q]);
        }
        for (uint32_t target : op.targets) {
            switch (op.kind) {
            case GateKind::H:
                stmt(out, "h " + qubit_names_[target]);
                break;
            case GateKind::X:
                stmt(out, "x " + qubit_names_[target]);
                break;
            case GateKind::Z:
                stmt(out, "z " + qubit_names_[target]);
                break;
            case GateKind::Phase:
                stmt(out, "u1(" + format_angle(op.angle) + ") " + qubit_names_[target]);
                break;
            case GateKind::MultiControlledX:
                emit_mcx(out, controls, qubit_names_[target]);
                break;
            case GateKind::MultiControlledZ:
                stmt(out, "h " + qubit_names_[target]);
                emit_mcx(out, controls, qubit_names_[target]);
                stmt(out, "h " + qubit_names_[target]);
                break;
            case GateKind::MultiControlledPhase:
                emit_mcphase(out, controls, qubit_names_[target], op.angle);
                break;
            }
        }
        for (uint32_t q : inverted) {
            stmt(out, "x " + qubit_names_[q]);
        }
    }

    /// AND-chain of `controls` into scratch; returns the wire holding the
    /// conjunction. Caller must invoke uncompute_chain afterwards.
    std::string compute_chain(std::ostringstream &out, const std::vector<uint32_t> &controls) {
        stmt(out, "ccx " + qubit_names_[controls[0]] + "," + qubit_names_[controls[1]] + "," +
                      scratch(0));
        for (size_t i = 2; i < controls.size(); ++i) {
            stmt(out, "ccx " + qubit_names_[controls[i]] + "," + scratch(i - 2) + "," +
                          scratch(i - 1));
        }
        return scratch(controls.size() - 2);
    }

    void uncompute_chain(std::ostringstream &out, const std::vector<uint32_t> &controls) {
        for (size_t i = controls.size(); i-- > 2;) {
            stmt(out, "ccx " + qubit_names_[controls[i]] + "," + scratch(i - 2) + "," +
                          scratch(i - 1));
        }
        stmt(out, "ccx " + qubit_names_[controls[0]] + "," + qubit_names_[controls[1]] + "," +
                      scratch(0));
    }

    void emit_mcx(std::ostringstream &out, const std::vector<uint32_t> &controls,
                  const std::string &target) {
        const size_t m = controls.size();
        if (m == 0) {
            stmt(out, "x " + target);
        } else if (m == 1) {
            stmt(out, "cx " + qubit_names_[controls[0]] + "," + target);
        } else if (m == 2) {
            stmt(out, "ccx " + qubit_names_[controls[0]] + "," + qubit_names_[controls[1]] + "," +
                          target);
        } else {
            const std::vector<uint32_t> chain(controls.begin(), controls.end() - 1);
            const std::string top = compute_chain(out, chain);
            stmt(out, "ccx " + qubit_names_[controls.back()] + "," + top + "," + target);
            uncompute_chain(out, chain);
        }
    }

    void emit_mcphase(std::ostringstream &out, const std::vector<uint32_t> &controls,
                      const std::string &target, double angle) {
        const std::string a = format_angle(angle);
        const size_t m = controls.size();
        if (m == 0) {
            stmt(out, "u1(" + a + ") " + target);
        } else if (m == 1) {
            stmt(out, "cu1(" + a + ") " + qubit_names_[controls[0]] + "," + target);
        } else {
            const std::string top = compute_chain(out, controls);
            stmt(out, "cu1(" + a + ") " + top + "," + target);
            uncompute_chain(out, controls);
        }
    }

    const Circuit &circuit_;
    std::vector<std::string> qubit_names_;
    size_t scratch_needed_ = 0;
    size_t gate_statements_ = 0;
};

} // namespace detail

/// Lowers a circuit to OpenQASM 2.0. Multi-controlled gates with more than
/// two controls become Toffoli ladders over an explicit clean scratch
/// register appended after the circuit's own registers. Output is a pure
/// function of the circuit.
inline QasmExport export_circuit(const Circuit &circuit) {
    return detail::QasmWriter(circuit).write();
}

inline std::string export_circuit_text(const Circuit &circuit) {
    return export_circuit(circuit).text;
}

} // namespace qarm
