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
#include <numbers>
#include <optional>

#include "qarm/circuit.hpp"
#include "qarm/statevector.hpp"
#include "qarm/transaction_db.hpp"

namespace qarm {

/// Qubit assignment for the mining circuits: estimation register first,
/// then the transaction register, k item sub-registers, and ancillas last.
/// Qubit (start + b) of a register carries bit b of that register's value.
/// For k = 1 the only ancilla is the phase ancilla (the basic oracle kicks
/// back on it directly); for k >= 2 there are k item-flag ancillas followed
/// by the phase ancilla.
struct RegisterLayout {
    uint32_t t = 0;                 // estimation qubits (0 = no estimation register)
    uint32_t transaction_qubits = 0;
    uint32_t item_qubits = 0;       // per block
    uint32_t k = 1;                 // item blocks
    uint32_t original_transactions = 0;
    uint32_t original_items = 0;

    static RegisterLayout for_database(const TransactionDatabase &db, uint32_t k, uint32_t t) {
        if (k < 1) {
            throw std::invalid_argument("k must be >= 1");
        }
        if (!db.is_power_of_two_shape()) {
            throw std::invalid_argument("unpadded dimensions; call pad_to_power_of_two first");
        }
        RegisterLayout lay;
        lay.t = t;
        lay.transaction_qubits = log2_exact(db.num_transactions());
        lay.item_qubits = log2_exact(db.num_items());
        lay.k = k;
        lay.original_transactions = db.original_transactions();
        lay.original_items = db.original_items();
        return lay;
    }

    uint32_t estimation_start() const { return 0; }
    uint32_t transaction_start() const { return t; }
    uint32_t item_block_start(uint32_t block) const { // block is 1-based
        return t + transaction_qubits + (block - 1) * item_qubits;
    }
    uint32_t num_flag_ancillas() const { return k >= 2 ? k : 0; }
    uint32_t flag_ancilla(uint32_t block) const {
        return t + transaction_qubits + k * item_qubits + (block - 1);
    }
    uint32_t phase_ancilla() const {
        return t + transaction_qubits + k * item_qubits + num_flag_ancillas();
    }
    uint32_t num_qubits() const { return phase_ancilla() + 1; }
    uint32_t num_ancillas() const { return num_flag_ancillas() + 1; }

    std::vector<Register> registers() const {
        std::vector<Register> regs;
        if (t > 0) {
            regs.push_back({"est", estimation_start(), t});
        }
        if (transaction_qubits > 0) {
            regs.push_back({"trans", transaction_start(), transaction_qubits});
        }
        for (uint32_t block = 1; block <= k; ++block) {
            if (item_qubits > 0) {
                regs.push_back({"item" + std::to_string(block), item_block_start(block), item_qubits});
            }
        }
        regs.push_back({"anc", t + transaction_qubits + k * item_qubits, num_ancillas()});
        return regs;
    }

    Circuit make_circuit() const { return Circuit(num_qubits(), registers()); }

    /// Measurement print order: item blocks first (block 1 leftmost), then
    /// the estimation register, each most-significant qubit first.
    std::vector<uint32_t> measured_qubits() const {
        std::vector<uint32_t> qubits;
        for (uint32_t block = 1; block <= k; ++block) {
            for (uint32_t b = item_qubits; b-- > 0;) {
                qubits.push_back(item_block_start(block) + b);
            }
        }
        for (uint32_t b = t; b-- > 0;) {
            qubits.push_back(estimation_start() + b);
        }
        return qubits;
    }

    /// Basis index of an encoded candidate within the item region, relative
    /// to the first item qubit.
    uint64_t encode_candidate(const Itemset &candidate) const {
        if (candidate.cardinality() != k) {
            throw std::invalid_argument("candidate cardinality does not match layout");
        }
        uint64_t encoding = 0;
        for (uint32_t block = 1; block <= k; ++block) {
            const uint64_t j = candidate.items[block - 1];
            if (j >= (uint64_t{1} << item_qubits)) {
                throw std::invalid_argument("candidate encoding exceeds register width");
            }
            encoding |= j << ((block - 1) * item_qubits);
        }
        return encoding;
    }

  private:
    static uint32_t log2_exact(uint32_t v) {
        uint32_t b = 0;
        while ((uint32_t{1} << b) < v) {
            ++b;
        }
        return b;
    }
};

/// Support grid point of the t-qubit estimation register: measured integer m
/// encodes theta = pi*m/2^t and support sin^2(theta). m and 2^t - m encode
/// the same support.
struct GridAngle {
    uint32_t m;
    uint32_t t;

    double theta_over_pi() const { return static_cast<double>(m) / static_cast<double>(uint64_t{1} << t); }

    /// sin^2(pi*m/2^t), evaluated on the canonical half of the grid so that
    /// paired outcomes give bitwise-identical supports. The three grid
    /// points with exactly representable supports (0, 1/2, 1) are returned
    /// exactly rather than through the libm round trip.
    double support() const {
        const uint64_t size = uint64_t{1} << t;
        const uint64_t canonical = std::min<uint64_t>(m, size - m);
        if (canonical == 0) {
            return 0.0;
        }
        if (4 * canonical == size) {
            return 0.5;
        }
        if (2 * canonical == size) {
            return 1.0;
        }
        const double s =
            std::sin(std::numbers::pi * static_cast<double>(canonical) / static_cast<double>(size));
        return s * s;
    }
};

inline double grid_support(uint32_t m, uint32_t t) { return GridAngle{m, t}.support(); }

/// Marked set {m in [1, 2^t) : sin^2(pi*m/2^t) >= s_min}. m = 0 (support 0)
/// is never marked; the boundary counts as marked, evaluated with a 1e-12
/// slack so grid values that equal s_min exactly survive rounding.
inline std::vector<uint32_t> marked_estimation_values(uint32_t t, double s_min) {
    if (t < 1) {
        throw std::invalid_argument("t must be >= 1");
    }
    if (!(s_min > 0.0) || s_min > 1.0) {
        throw std::invalid_argument("s_min must satisfy 0 < s_min <= 1");
    }
    std::vector<uint32_t> marked;
    for (uint32_t m = 1; m < (uint32_t{1} << t); ++m) {
        if (grid_support(m, t) >= s_min - 1e-12) {
            marked.push_back(m);
        }
    }
    return marked;
}

/// Canonical grid value nearest to a support, as m in [0, 2^(t-1)]
/// (ties resolved toward smaller m).
inline uint32_t nearest_grid_m(double support_value, uint32_t t) {
    uint32_t best = 0;
    double best_dist = std::abs(grid_support(0, t) - support_value);
    for (uint32_t m = 1; m <= (uint32_t{1} << (t - 1)); ++m) {
        const double dist = std::abs(grid_support(m, t) - support_value);
        if (dist < best_dist - 1e-15) {
            best = m;
            best_dist = dist;
        }
    }
    return best;
}

inline bool grid_representable(double support_value, uint32_t t, double tol = 1e-9) {
    return std::abs(grid_support(nearest_grid_m(support_value, t), t) - support_value) <= tol;
}

namespace detail {

inline void append_bit_pattern_controls(std::vector<Control> &controls, uint64_t value,
                                        uint32_t start, uint32_t count) {
    for (uint32_t b = 0; b < count; ++b) {
        controls.push_back({start + b, ((value >> b) & 1) != 0});
    }
}

/// Phase flip of one full bit pattern over `qubits`: a multi-controlled Z
/// whose target takes the role of the pattern's lowest bit.
inline void append_pattern_phase_flip(Circuit &c, const std::vector<uint32_t> &qubits,
                                      uint64_t pattern, std::vector<Control> extra_controls) {
    const uint32_t target = qubits.front();
    std::vector<Control> controls = std::move(extra_controls);
    for (size_t b = 1; b < qubits.size(); ++b) {
        controls.push_back({qubits[b], ((pattern >> b) & 1) != 0});
    }
    const bool target_low = (pattern & 1) != 0;
    if (!target_low) {
        c.add(gate::x(target));
    }
    c.add(gate::mcz(controls, target));
    if (!target_low) {
        c.add(gate::x(target));
    }
}

/// 2|0...0><0...0| - I on the given qubits, exact including the scalar sign:
/// a phase flip of |0...0> followed by a global -1 realized as Z X Z X.
/// The sign matters under control (it becomes a relative phase), so it is
/// never dropped. With `control` set, emits the controlled reflection.
inline void append_zero_reflection(Circuit &c, const std::vector<uint32_t> &qubits,
                                   std::optional<uint32_t> control = std::nullopt) {
    if (qubits.empty()) {
        return; // scalar 1
    }
    std::vector<Control> extra;
    if (control) {
        extra.push_back({*control, true});
    }
    append_pattern_phase_flip(c, qubits, 0, extra);
    if (control) {
        c.add(gate::z(*control));
    } else {
        const uint32_t q = qubits.front();
        c.add(gate::z(q));
        c.add(gate::x(q));
        c.add(gate::z(q));
        c.add(gate::x(q));
    }
}

/// One basic-oracle instantiation: for every D_ij = 1, a multi-controlled X
/// on `target` conditioned on the full bit patterns of |i> and |j> (block
/// `block` holds |j>). Zero rows/columns contribute no gates.
inline void append_ob(Circuit &c, const TransactionDatabase &db, const RegisterLayout &lay,
                      uint32_t block, uint32_t target,
                      const std::vector<Control> &extra_controls = {}) {
    for (uint32_t i = 0; i < db.num_transactions(); ++i) {
        for (uint32_t j = 0; j < db.num_items(); ++j) {
            if (db.entry(i, j) == 0) {
                continue;
            }
            std::vector<Control> controls = extra_controls;
            append_bit_pattern_controls(controls, i, lay.transaction_start(),
                                        lay.transaction_qubits);
            append_bit_pattern_controls(controls, j, lay.item_block_start(block), lay.item_qubits);
            c.add(gate::mcx(std::move(controls), target));
        }
    }
    c.note_ob_instantiation();
}

/// Phase oracle O^(k): kicks phase (-1)^(prod_l D_{i,j_l}) on basis states
/// of (transaction, item blocks), assuming the phase ancilla is in
/// (|0>-|1>)/sqrt(2). For k = 1 this is one basic oracle aimed at the phase
/// ancilla; for k >= 2 the per-block bits are computed into flag ancillas,
/// combined onto the phase ancilla, and uncomputed (2k basic oracles).
///
/// With `control` set, emits controlled-O^(k). Only the phase-producing
/// gates need the control: for k >= 2 the compute/uncompute pairs cancel on
/// their own when the control reads 0.
inline void append_phase_oracle(Circuit &c, const TransactionDatabase &db,
                                const RegisterLayout &lay,
                                std::optional<uint32_t> control = std::nullopt) {
    std::vector<Control> extra;
    if (control) {
        extra.push_back({*control, true});
    }
    if (lay.k == 1) {
        append_ob(c, db, lay, 1, lay.phase_ancilla(), extra);
        return;
    }
    for (uint32_t block = 1; block <= lay.k; ++block) {
        append_ob(c, db, lay, block, lay.flag_ancilla(block));
    }
    std::vector<Control> combine = extra;
    for (uint32_t block = 1; block <= lay.k; ++block) {
        combine.push_back({lay.flag_ancilla(block), true});
    }
    c.add(gate::mcx(std::move(combine), lay.phase_ancilla()));
    for (uint32_t block = lay.k; block >= 1; --block) {
        append_ob(c, db, lay, block, lay.flag_ancilla(block));
    }
}

/// Reflection about the uniform superposition on the transaction register:
/// H-layer, zero reflection, H-layer. Under control, only the inner
/// reflection is controlled; the H layers cancel by themselves.
inline void append_diffusion(Circuit &c, const RegisterLayout &lay,
                             std::optional<uint32_t> control = std::nullopt) {
    std::vector<uint32_t> qubits;
    for (uint32_t b = 0; b < lay.transaction_qubits; ++b) {
        qubits.push_back(lay.transaction_start() + b);
    }
    for (uint32_t q : qubits) {
        c.add(gate::h(q));
    }
    append_zero_reflection(c, qubits, control);
    for (uint32_t q : qubits) {
        c.add(gate::h(q));
    }
}

inline void append_grover(Circuit &c, const TransactionDatabase &db, const RegisterLayout &lay,
                          std::optional<uint32_t> control = std::nullopt) {
    append_phase_oracle(c, db, lay, control);
    append_diffusion(c, lay, control);
}

} // namespace detail

/// Basic oracle O_B as a standalone circuit: |i>|j>|a> -> |i>|j>|a xor D_ij>.
inline Circuit synth_OB(const TransactionDatabase &db) {
    const RegisterLayout lay = RegisterLayout::for_database(db, 1, 0);
    Circuit c = lay.make_circuit();
    detail::append_ob(c, db, lay, 1, lay.phase_ancilla());
    return c;
}

/// Phase oracle O^(k) as a standalone circuit over the k-block layout.
inline Circuit synth_Ok(const TransactionDatabase &db, uint32_t k) {
    const RegisterLayout lay = RegisterLayout::for_database(db, k, 0);
    Circuit c = lay.make_circuit();
    detail::append_phase_oracle(c, db, lay);
    return c;
}

/// Reflection 2|chi><chi| - I about the uniform superposition on
/// `num_transaction_qubits` qubits, as a standalone circuit.
inline Circuit synth_diffusion(uint32_t num_transaction_qubits) {
    Circuit c(num_transaction_qubits);
    std::vector<uint32_t> qubits;
    for (uint32_t q = 0; q < num_transaction_qubits; ++q) {
        qubits.push_back(q);
        c.add(gate::h(q));
    }
    detail::append_zero_reflection(c, qubits);
    for (uint32_t q : qubits) {
        c.add(gate::h(q));
    }
    return c;
}

/// Grover operator G^(k): phase oracle followed by the diffusion on the
/// transaction register only. Item registers are untouched by the diffusion.
inline Circuit synth_grover(const TransactionDatabase &db, uint32_t k) {
    const RegisterLayout lay = RegisterLayout::for_database(db, k, 0);
    Circuit c = lay.make_circuit();
    detail::append_grover(c, db, lay);
    return c;
}

/// Threshold marker O_smin: phase-flips every estimation basis state |m>
/// whose grid support meets s_min. The marked set is computed classically;
/// one multi-controlled phase flip is emitted per marked value.
inline Circuit synth_smin_marker(uint32_t t, double s_min) {
    Circuit c(t);
    std::vector<uint32_t> qubits;
    for (uint32_t q = 0; q < t; ++q) {
        qubits.push_back(q);
    }
    for (uint32_t m : marked_estimation_values(t, s_min)) {
        detail::append_pattern_phase_flip(c, qubits, m, {});
    }
    return c;
}

enum class PrepMethod { HadamardLayer, ExactInit };

/// Preparation recipe for the uniform candidate superposition
/// sum_j |C_j> / sqrt(M_c) on the item registers. A Hadamard layer covers
/// the k = 1 all-items case (power-of-two M); any other candidate set is
/// initialized directly in the statevector, and the method flag records
/// which route was taken.
struct CandidatePrep {
    PrepMethod method;
    std::vector<GateOp> layer_gates;      // HadamardLayer only
    std::vector<uint64_t> encodings;      // item-region basis indices, all methods
};

inline CandidatePrep prep_candidate_superposition(const std::vector<Itemset> &candidates,
                                                  const RegisterLayout &lay) {
    if (candidates.empty()) {
        throw std::invalid_argument("candidate list must be nonempty");
    }
    CandidatePrep prep;
    for (const Itemset &candidate : candidates) {
        prep.encodings.push_back(lay.encode_candidate(candidate));
    }

    bool all_single_items = lay.k == 1 && candidates.size() == (size_t{1} << lay.item_qubits);
    if (all_single_items) {
        for (size_t c = 0; c < candidates.size(); ++c) {
            if (candidates[c].items != std::vector<uint32_t>{static_cast<uint32_t>(c)}) {
                all_single_items = false;
                break;
            }
        }
    }
    if (all_single_items) {
        prep.method = PrepMethod::HadamardLayer;
        for (uint32_t b = 0; b < lay.item_qubits; ++b) {
            prep.layer_gates.push_back(gate::h(lay.item_block_start(1) + b));
        }
    } else {
        prep.method = PrepMethod::ExactInit;
    }
    return prep;
}

/// Builds the initial statevector for a prep recipe: |0...0> when the
/// candidates are prepared by gates, otherwise |0> everywhere except the
/// item region carrying the uniform candidate superposition.
inline StateVector initial_state_for_prep(const CandidatePrep &prep, const RegisterLayout &lay) {
    StateVector state(lay.num_qubits());
    if (prep.method == PrepMethod::HadamardLayer) {
        return state;
    }
    state.set_amplitude(0, Complex{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(prep.encodings.size()));
    const uint32_t item_region_start = lay.item_block_start(1);
    for (uint64_t enc : prep.encodings) {
        state.set_amplitude(enc << item_region_start, Complex{amp, 0.0});
    }
    return state;
}

} // namespace qarm
