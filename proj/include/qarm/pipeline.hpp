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

#include <optional>

#include "qarm/apriori.hpp"
#include "qarm/histogram.hpp"
#include "qarm/oracle_synth.hpp"
#include "qarm/qft.hpp"

namespace qarm {

enum class MiningMode { EstimateOnly, FullQarm };

struct PipelineConfig {
    uint32_t t = 4;
    uint64_t shots = 0; // 0 = exact probabilities
    uint64_t seed = 0;
    Rational s_min{1, 2};
    uint32_t aa_rounds = 1;
    MiningMode mode = MiningMode::FullQarm;

    void validate() const {
        if (t < 1) {
            throw std::invalid_argument("t must be >= 1");
        }
        if (s_min <= Rational(0, 1) || s_min > Rational(1, 1)) {
            throw std::invalid_argument("s_min must satisfy 0 < s_min <= 1");
        }
    }
};

/// An executable mining circuit: the gate list plus the initial state it
/// expects (|0...0> unless the candidate superposition was initialized
/// directly) and the layout used to build it.
struct PaeProgram {
    Circuit circuit;
    StateVector initial;
    CandidatePrep prep;
    RegisterLayout layout;
};

/// Support estimate read back from a histogram for one candidate itemset.
struct DecodedSupport {
    Itemset itemset;
    std::vector<uint32_t> m_values;           // one or two estimation outcomes
    std::optional<double> support_estimate;   // empty iff the candidate never appeared
    double nearest_db_support = 0.0;          // estimate snapped to multiples of 1/N
    double confidence = 0.0;                  // probability mass (exact) or counts (sampled)
    bool paired = false;

    bool flagged_absent() const { return !support_estimate.has_value(); }
};

struct IterationRecord {
    uint32_t k = 0;
    std::vector<Itemset> candidates;
    uint32_t qubits = 0;
    size_t gate_count = 0;
    size_t ob_count = 0;
    PrepMethod prep_method = PrepMethod::HadamardLayer;
    bool amplitude_amplification = false;
    uint32_t aa_rounds = 0;
    Histogram histogram;
    std::vector<DecodedSupport> decoded;
    std::vector<std::pair<Itemset, double>> frequent;
};

struct MiningReport {
    std::vector<IterationRecord> iterations;
    std::vector<std::pair<Itemset, double>> frequent_itemsets;
    PipelineConfig config;
    std::vector<std::string> item_labels;
    /// Grid resolution around the steepest part of the support curve:
    /// the largest support step between adjacent estimation values.
    double grid_epsilon = 0.0;
};

namespace detail {

inline void append_smin_marker(Circuit &c, const RegisterLayout &lay, double s_min) {
    std::vector<uint32_t> est;
    for (uint32_t b = 0; b < lay.t; ++b) {
        est.push_back(lay.estimation_start() + b);
    }
    for (uint32_t m : marked_estimation_values(lay.t, s_min)) {
        append_pattern_phase_flip(c, est, m, {});
    }
}

/// Everything of U_PAE except the phase-ancilla preparation: uniform
/// superpositions on the estimation and transaction registers, candidate
/// prep gates, controlled Grover powers (2^p controlled applications from
/// estimation qubit p), and the inverse QFT with terminal swaps.
inline Circuit build_pae_core(const TransactionDatabase &db, const RegisterLayout &lay,
                              const CandidatePrep &prep) {
    Circuit c = lay.make_circuit();
    for (uint32_t b = 0; b < lay.t; ++b) {
        c.add(gate::h(lay.estimation_start() + b));
    }
    for (uint32_t b = 0; b < lay.transaction_qubits; ++b) {
        c.add(gate::h(lay.transaction_start() + b));
    }
    for (const GateOp &g : prep.layer_gates) {
        c.add(g);
    }
    for (uint32_t p = 0; p < lay.t; ++p) {
        const uint64_t reps = uint64_t{1} << p;
        for (uint64_t r = 0; r < reps; ++r) {
            append_grover(c, db, lay, lay.estimation_start() + p);
        }
    }
    append_inverse_qft(c, lay.estimation_start(), lay.t);
    return c;
}

inline void append_phase_ancilla_prep(Circuit &c, const RegisterLayout &lay) {
    c.add(gate::x(lay.phase_ancilla()));
    c.add(gate::h(lay.phase_ancilla()));
}

inline std::string candidate_prefix(const RegisterLayout &lay, const Itemset &candidate) {
    std::string prefix;
    for (uint32_t block = 1; block <= lay.k; ++block) {
        const uint32_t j = candidate.items[block - 1];
        for (uint32_t b = lay.item_qubits; b-- > 0;) {
            prefix.push_back(((j >> b) & 1) ? '1' : '0');
        }
    }
    return prefix;
}

} // namespace detail

/// Parallel amplitude estimation circuit for the given candidate k-itemsets:
/// phase-ancilla prep, state prep, controlled-G^(k) powers, inverse QFT.
/// Measuring the item and estimation registers yields the paired-outcome
/// support distribution.
inline PaeProgram build_pae(const TransactionDatabase &db, uint32_t k,
                            const std::vector<Itemset> &candidates, uint32_t t) {
    if (t < 1) {
        throw std::invalid_argument("t must be >= 1");
    }
    const RegisterLayout lay = RegisterLayout::for_database(db, k, t);
    const CandidatePrep prep = prep_candidate_superposition(candidates, lay);

    Circuit c = lay.make_circuit();
    detail::append_phase_ancilla_prep(c, lay);
    c.append(detail::build_pae_core(db, lay, prep));
    c.set_measured_qubits(lay.measured_qubits());

    return PaeProgram{std::move(c), initial_state_for_prep(prep, lay), prep, lay};
}

/// Full qARM iteration circuit: U_PAE followed by aa_rounds repetitions of
/// [O_smin, U_PAE^dag, (2|0...0><0...0| - I), U_PAE]. The reflection spans
/// the estimation, transaction and item registers; ancillas are excluded
/// (they sit in fixed states throughout). Amplification needs the candidate
/// prep to be gate-realizable, so exact-init candidate sets are rejected
/// when aa_rounds > 0.
inline PaeProgram build_qarm_iteration(const TransactionDatabase &db, uint32_t k,
                                       const std::vector<Itemset> &candidates,
                                       const PipelineConfig &config) {
    config.validate();
    const RegisterLayout lay = RegisterLayout::for_database(db, k, config.t);
    const CandidatePrep prep = prep_candidate_superposition(candidates, lay);
    if (config.aa_rounds > 0 && prep.method != PrepMethod::HadamardLayer) {
        throw std::invalid_argument(
            "amplitude amplification requires gate-realizable candidate preparation");
    }

    const Circuit core = detail::build_pae_core(db, lay, prep);
    const Circuit core_adjoint = core.adjoint();

    Circuit c = lay.make_circuit();
    detail::append_phase_ancilla_prep(c, lay);
    c.append(core);
    std::vector<uint32_t> non_ancilla;
    for (uint32_t q = 0; q < lay.t + lay.transaction_qubits + lay.k * lay.item_qubits; ++q) {
        non_ancilla.push_back(q);
    }
    for (uint32_t round = 0; round < config.aa_rounds; ++round) {
        detail::append_smin_marker(c, lay, config.s_min.to_double());
        c.append(core_adjoint);
        detail::append_zero_reflection(c, non_ancilla);
        c.append(core);
    }
    c.set_measured_qubits(lay.measured_qubits());

    return PaeProgram{std::move(c), initial_state_for_prep(prep, lay), prep, lay};
}

/// Reads per-candidate support estimates out of a measured histogram using
/// the outcome-pairing rule: take the two most probable estimation outcomes
/// for the candidate; if they satisfy m + m' = 2^t they encode the same
/// support and are reported together, otherwise the more probable one wins.
/// Outcomes 0 and 2^(t-1) (supports 0 and 1) have no distinct partner and
/// stand alone. Ties prefer the smaller m. A candidate absent from the
/// histogram is reported with confidence 0 and no estimate, never fabricated.
///
/// support_estimate is the raw grid value sin^2(pi*m/2^t), which estimates
/// the containing-transaction fraction of the PADDED matrix. Since true
/// supports are integer counts over the original transactions,
/// nearest_db_support snaps the grid value to a count (via the padded N)
/// and divides by the original N, undoing any padding dilution.
inline std::vector<DecodedSupport> decode_supports(const Histogram &histogram,
                                                   const RegisterLayout &lay,
                                                   const std::vector<Itemset> &candidates) {
    const uint32_t t = lay.t;
    const size_t prefix_len = static_cast<size_t>(lay.k) * lay.item_qubits;
    std::vector<DecodedSupport> decoded;
    decoded.reserve(candidates.size());

    for (const Itemset &candidate : candidates) {
        const std::string prefix = detail::candidate_prefix(lay, candidate);
        std::vector<std::pair<double, uint32_t>> outcomes; // (weight, m)
        for (const auto &[bits, weight] : histogram.entries) {
            if (bits.size() != prefix_len + t || bits.compare(0, prefix_len, prefix) != 0) {
                continue;
            }
            uint32_t m = 0;
            for (size_t i = prefix_len; i < bits.size(); ++i) {
                m = (m << 1) | (bits[i] == '1' ? 1 : 0);
            }
            outcomes.emplace_back(weight, m);
        }
        std::sort(outcomes.begin(), outcomes.end(), [](const auto &a, const auto &b) {
            if (a.first != b.first) {
                return a.first > b.first;
            }
            return a.second < b.second;
        });

        DecodedSupport d;
        d.itemset = candidate;
        if (outcomes.empty()) {
            decoded.push_back(std::move(d));
            continue;
        }
        const uint32_t grid_size = uint32_t{1} << t;
        if (outcomes.size() >= 2 && outcomes[0].second + outcomes[1].second == grid_size) {
            const uint32_t low = std::min(outcomes[0].second, outcomes[1].second);
            d.m_values = {low, grid_size - low};
            d.support_estimate = grid_support(low, t);
            d.confidence = outcomes[0].first + outcomes[1].first;
            d.paired = true;
        } else {
            const uint32_t m = outcomes[0].second;
            d.m_values = {m};
            d.support_estimate = grid_support(std::min(m, grid_size - m), t);
            d.confidence = outcomes[0].first;
        }
        const double n_padded = static_cast<double>(uint64_t{1} << lay.transaction_qubits);
        const double n_original = static_cast<double>(lay.original_transactions);
        const double count =
            std::min(std::round(*d.support_estimate * n_padded), n_original);
        d.nearest_db_support = count / n_original;
        decoded.push_back(std::move(d));
    }
    return decoded;
}

/// The quantum mining loop. Iteration k evaluates the candidate k-itemsets
/// with one circuit execution (exact probabilities or sampled shots),
/// decodes supports, filters against s_min, and generates the next
/// candidates classically by join and prune. Amplitude amplification is
/// applied where the candidate prep is gate-realizable (the all-items k = 1
/// iteration); other iterations run estimation-only, which leaves the
/// decoded estimates unchanged.
///
/// The frequent/infrequent decision compares the snapped support
/// (nearest_db_support) against s_min: true supports are multiples of 1/N,
/// so an estimate is deemed equal to the nearest such value. The raw grid
/// estimate would misclassify off-grid candidates once amplification has
/// boosted the marked tail of their outcome distribution.
inline MiningReport mine(const TransactionDatabase &db, const PipelineConfig &config) {
    config.validate();
    const TransactionDatabase padded = pad_to_power_of_two(db);

    MiningReport report;
    report.config = config;
    report.item_labels = db.item_labels();
    report.grid_epsilon = grid_support(1, config.t) - grid_support(0, config.t);
    for (uint32_t m = 0; m + 1 <= (uint32_t{1} << (config.t - 1)); ++m) {
        report.grid_epsilon = std::max(report.grid_epsilon,
                                       grid_support(m + 1, config.t) - grid_support(m, config.t));
    }

    std::vector<Itemset> candidates;
    for (uint32_t j = 0; j < db.original_items(); ++j) {
        candidates.push_back(Itemset({j}));
    }

    const double s_min_value = config.s_min.to_double();
    uint32_t k = 1;
    while (!candidates.empty()) {
        const RegisterLayout lay = RegisterLayout::for_database(padded, k, config.t);
        const CandidatePrep probe = prep_candidate_superposition(candidates, lay);
        const bool use_aa = config.mode == MiningMode::FullQarm && config.aa_rounds > 0 &&
                            probe.method == PrepMethod::HadamardLayer;

        PaeProgram program = use_aa ? build_qarm_iteration(padded, k, candidates, config)
                                    : build_pae(padded, k, candidates, config.t);
        const StateVector final_state = run(program.circuit, program.initial);
        Histogram histogram =
            config.shots == 0
                ? exact_distribution(final_state, program.circuit.measured_qubits())
                : sample(final_state, program.circuit.measured_qubits(), config.shots,
                         config.seed + k);
        histogram.bit_order =
            "item registers (block 1 first), then estimation register; most significant qubit first";

        IterationRecord record;
        record.k = k;
        record.candidates = candidates;
        record.qubits = program.circuit.num_qubits();
        record.gate_count = program.circuit.gates().size();
        record.ob_count = program.circuit.ob_instantiations();
        record.prep_method = program.prep.method;
        record.amplitude_amplification = use_aa;
        record.aa_rounds = use_aa ? config.aa_rounds : 0;
        record.decoded = decode_supports(histogram, lay, candidates);
        record.histogram = std::move(histogram);

        std::vector<Itemset> frequent_itemsets;
        for (const DecodedSupport &d : record.decoded) {
            if (d.support_estimate && d.nearest_db_support >= s_min_value - 1e-12) {
                record.frequent.emplace_back(d.itemset, *d.support_estimate);
                frequent_itemsets.push_back(d.itemset);
            }
        }
        for (const auto &[itemset, sup] : record.frequent) {
            report.frequent_itemsets.emplace_back(itemset, sup);
        }
        report.iterations.push_back(std::move(record));

        candidates = generate_candidates(frequent_itemsets);
        ++k;
    }
    return report;
}

/// Side-by-side verification of the quantum miner against classical Apriori.
struct EquivalenceReport {
    bool equal_sets = false;
    double max_support_discrepancy = 0.0;
    std::vector<Itemset> only_quantum;
    std::vector<Itemset> only_classical;
    std::vector<Itemset> off_grid_candidates; // true support not on the t-grid
    MiningReport quantum;
    FrequentSet classical;
};

inline EquivalenceReport compare_with_classical(const TransactionDatabase &db,
                                                const PipelineConfig &config) {
    EquivalenceReport report;
    report.quantum = mine(db, config);
    report.classical = apriori_mine(db, config.s_min);

    std::set<Itemset> quantum_sets;
    for (const auto &[itemset, sup] : report.quantum.frequent_itemsets) {
        quantum_sets.insert(itemset);
    }
    const std::set<Itemset> classical_sets = report.classical.itemsets();

    for (const Itemset &s : quantum_sets) {
        if (!classical_sets.count(s)) {
            report.only_quantum.push_back(s);
        }
    }
    for (const Itemset &s : classical_sets) {
        if (!quantum_sets.count(s)) {
            report.only_classical.push_back(s);
        }
    }
    report.equal_sets = report.only_quantum.empty() && report.only_classical.empty();

    for (const auto &[itemset, estimate] : report.quantum.frequent_itemsets) {
        if (classical_sets.count(itemset)) {
            const double exact = support(db, itemset).value();
            report.max_support_discrepancy =
                std::max(report.max_support_discrepancy, std::abs(estimate - exact));
        }
    }
    for (const IterationRecord &iter : report.quantum.iterations) {
        for (const Itemset &candidate : iter.candidates) {
            if (!grid_representable(support(db, candidate).value(), config.t)) {
                report.off_grid_candidates.push_back(candidate);
            }
        }
    }
    return report;
}

} // namespace qarm
