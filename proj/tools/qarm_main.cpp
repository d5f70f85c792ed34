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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qarm/qarm.hpp"

namespace {

using namespace qarm;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string input_path;
    std::string format = "auto"; // auto | csv | json
    std::string smin = "0.5";
    uint32_t t = 4;
    uint64_t shots = 0;
    bool exact = false;
    int64_t seed = -1; // -1: fall back to QARM_SEED, then 0
    uint32_t aa_rounds = 1;
    std::string mode = "full-qarm";
    std::string output_path;
    std::string output_format = "json"; // json | csv | text-table
};

uint64_t resolve_seed(int64_t flag_value) {
    if (flag_value >= 0) {
        return static_cast<uint64_t>(flag_value);
    }
    if (const char *env = std::getenv("QARM_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write output file: " + path);
    }
    out << content;
}

DatabaseFormat resolve_format(const CommonOptions &opt) {
    if (opt.format == "csv") {
        return DatabaseFormat::CsvTransactions;
    }
    if (opt.format == "json") {
        return DatabaseFormat::JsonMatrix;
    }
    if (opt.input_path.size() >= 4 && opt.input_path.substr(opt.input_path.size() - 4) == ".csv") {
        return DatabaseFormat::CsvTransactions;
    }
    if (opt.input_path.size() >= 5 && opt.input_path.substr(opt.input_path.size() - 5) == ".json") {
        return DatabaseFormat::JsonMatrix;
    }
    throw std::invalid_argument("cannot infer input format from '" + opt.input_path +
                                "'; pass --format csv|json");
}

TransactionDatabase load_database(const CommonOptions &opt) {
    return parse_database(read_file(opt.input_path), resolve_format(opt));
}

PipelineConfig make_pipeline_config(const CommonOptions &opt) {
    PipelineConfig config;
    config.t = opt.t;
    config.shots = opt.exact ? 0 : opt.shots;
    config.seed = resolve_seed(opt.seed);
    config.s_min = Rational::from_decimal(opt.smin);
    config.aa_rounds = opt.aa_rounds;
    config.mode = opt.mode == "estimate-only" ? MiningMode::EstimateOnly : MiningMode::FullQarm;
    config.validate();
    return config;
}

/// "I0,I2;I1,I3" -> itemsets over the database's labels.
std::vector<Itemset> parse_candidates(const std::string &text, const TransactionDatabase &db,
                                      uint32_t k) {
    std::vector<Itemset> candidates;
    std::istringstream sets(text);
    std::string one;
    while (std::getline(sets, one, ';')) {
        std::vector<uint32_t> items;
        std::istringstream labels(one);
        std::string label;
        while (std::getline(labels, label, ',')) {
            const auto begin = label.find_first_not_of(" \t");
            const auto end = label.find_last_not_of(" \t");
            if (begin == std::string::npos) {
                throw std::invalid_argument("empty item label in candidate list");
            }
            items.push_back(db.item_index(label.substr(begin, end - begin + 1)));
        }
        std::sort(items.begin(), items.end());
        const Itemset itemset(items);
        if (itemset.cardinality() != k) {
            throw std::invalid_argument("candidate " + itemset_label(db, itemset) +
                                        " does not have cardinality " + std::to_string(k));
        }
        candidates.push_back(itemset);
    }
    if (candidates.empty()) {
        throw std::invalid_argument("empty candidate list");
    }
    return candidates;
}

std::vector<Itemset> all_k_itemsets(const TransactionDatabase &db, uint32_t k) {
    std::vector<Itemset> out;
    std::vector<uint32_t> items;
    const uint32_t m = db.original_items();
    const auto recurse = [&](auto &&self, uint32_t next) -> void {
        if (items.size() == k) {
            out.push_back(Itemset(items));
            return;
        }
        for (uint32_t j = next; j < m; ++j) {
            items.push_back(j);
            self(self, j + 1);
            items.pop_back();
        }
    };
    recurse(recurse, 0);
    if (out.empty()) {
        throw std::invalid_argument("database has fewer than k items");
    }
    return out;
}

void print_histogram(const Histogram &h) {
    std::vector<std::pair<std::string, double>> rows(h.entries.begin(), h.entries.end());
    std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    std::printf("%-12s %s\n", "outcome", h.shots == 0 ? "probability" : "count");
    for (const auto &[bits, weight] : rows) {
        if (h.shots == 0) {
            std::printf("%-12s %.6f\n", bits.c_str(), weight);
        } else {
            std::printf("%-12s %.0f\n", bits.c_str(), weight);
        }
    }
}

std::string frequent_table(const std::vector<std::pair<std::string, double>> &rows) {
    std::ostringstream out;
    size_t width = 8;
    for (const auto &[name, sup] : rows) {
        width = std::max(width, name.size() + 2);
    }
    out << "itemset";
    out << std::string(width > 7 ? width - 7 : 1, ' ') << "support\n";
    char buf[64];
    for (const auto &[name, sup] : rows) {
        std::snprintf(buf, sizeof(buf), "%.3f", sup);
        out << name << std::string(width - name.size(), ' ') << buf << "\n";
    }
    if (rows.empty()) {
        out << "(no frequent itemsets)\n";
    }
    return out.str();
}

std::string frequent_csv(const std::vector<std::tuple<uint32_t, std::string, double>> &rows) {
    std::ostringstream out;
    out << "k,itemset,support\n";
    char buf[64];
    for (const auto &[k, name, sup] : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g", sup);
        out << k << "," << name << "," << buf << "\n";
    }
    return out.str();
}

std::string itemset_csv_name(const TransactionDatabase &db, const Itemset &s) {
    std::string out;
    for (size_t i = 0; i < s.items.size(); ++i) {
        if (i) {
            out += ";";
        }
        out += db.item_label(s.items[i]);
    }
    return out;
}

int cmd_mine(const CommonOptions &opt, const std::string &engine) {
    const TransactionDatabase db = load_database(opt);

    std::vector<std::pair<std::string, double>> table_rows;
    std::vector<std::tuple<uint32_t, std::string, double>> csv_rows;
    std::string json_text;

    if (engine == "classical") {
        const FrequentSet fs = apriori_mine(db, Rational::from_decimal(opt.smin));
        for (const auto &[itemset, sup] : fs.all()) {
            table_rows.emplace_back(itemset_label(db, itemset), sup.value());
            csv_rows.emplace_back(itemset.cardinality(), itemset_csv_name(db, itemset),
                                  sup.value());
        }
        json_text = frequent_set_to_json(fs, db.item_labels()).dump(2) + "\n";
    } else {
        const PipelineConfig config = make_pipeline_config(opt);
        const MiningReport report = mine(db, config);
        for (const auto &[itemset, sup] : report.frequent_itemsets) {
            table_rows.emplace_back(itemset_label(db, itemset), sup);
            csv_rows.emplace_back(itemset.cardinality(), itemset_csv_name(db, itemset), sup);
        }
        json_text = mining_report_to_json(report).dump(2) + "\n";
    }

    std::cout << frequent_table(table_rows);
    if (!opt.output_path.empty()) {
        if (opt.output_format == "json") {
            write_file(opt.output_path, json_text);
        } else if (opt.output_format == "csv") {
            write_file(opt.output_path, frequent_csv(csv_rows));
        } else {
            write_file(opt.output_path, frequent_table(table_rows));
        }
        std::cout << "report written to " << opt.output_path << "\n";
    }
    return kExitOk;
}

int cmd_estimate(const CommonOptions &opt, uint32_t k, const std::string &candidates_arg) {
    const TransactionDatabase db = load_database(opt);
    const TransactionDatabase padded = pad_to_power_of_two(db);
    const uint64_t seed = resolve_seed(opt.seed);
    const uint64_t shots = opt.exact ? 0 : opt.shots;

    const std::vector<Itemset> candidates = candidates_arg.empty()
                                                ? all_k_itemsets(db, k)
                                                : parse_candidates(candidates_arg, db, k);

    const PaeProgram program = build_pae(padded, k, candidates, opt.t);
    const StateVector final_state = run(program.circuit, program.initial);
    Histogram histogram =
        shots == 0 ? exact_distribution(final_state, program.circuit.measured_qubits())
                   : sample(final_state, program.circuit.measured_qubits(), shots, seed);
    histogram.bit_order =
        "item registers (block 1 first), then estimation register; most significant qubit first";
    const auto decoded = decode_supports(histogram, program.layout, candidates);

    std::printf("%-16s %-10s %-10s %s\n", "itemset", "estimate", "nearest", "outcomes(m)");
    for (const DecodedSupport &d : decoded) {
        std::string ms;
        for (size_t i = 0; i < d.m_values.size(); ++i) {
            ms += (i ? "," : "") + std::to_string(d.m_values[i]);
        }
        if (d.support_estimate) {
            std::printf("%-16s %-10.4f %-10.4f %s%s\n", itemset_label(db, d.itemset).c_str(),
                        *d.support_estimate, d.nearest_db_support, ms.c_str(),
                        d.paired ? " (paired)" : "");
        } else {
            std::printf("%-16s %-10s %-10s %s\n", itemset_label(db, d.itemset).c_str(), "absent",
                        "-", "-");
        }
    }
    std::printf("\n");
    print_histogram(histogram);

    if (!opt.output_path.empty()) {
        Json decoded_json = Json::array();
        for (const DecodedSupport &d : decoded) {
            decoded_json.push_back(decoded_to_json(d, db.item_labels()));
        }
        Json candidates_json = Json::array();
        for (const Itemset &c : candidates) {
            candidates_json.push_back(itemset_to_json(c, db.item_labels()));
        }
        const Json out{{"k", k},
                       {"t", opt.t},
                       {"histogram", histogram_to_json(histogram)},
                       {"decoded", decoded_json},
                       {"candidates", candidates_json}};
        write_file(opt.output_path, out.dump(2) + "\n");
        std::cout << "histogram written to " << opt.output_path << "\n";
    }
    return kExitOk;
}

int cmd_export(const CommonOptions &opt, uint32_t k, const std::string &candidates_arg,
               const std::string &circuit_kind) {
    const TransactionDatabase db = load_database(opt);
    const TransactionDatabase padded = pad_to_power_of_two(db);

    const std::vector<Itemset> candidates = candidates_arg.empty()
                                                ? all_k_itemsets(db, k)
                                                : parse_candidates(candidates_arg, db, k);

    PaeProgram program = [&] {
        if (circuit_kind == "iteration") {
            return build_qarm_iteration(padded, k, candidates, make_pipeline_config(opt));
        }
        return build_pae(padded, k, candidates, opt.t);
    }();

    const QasmExport exported = export_circuit(program.circuit);
    const RegisterLayout &lay = program.layout;
    const uint32_t data_qubits = lay.t + lay.transaction_qubits + lay.k * lay.item_qubits;
    std::printf("qubits: %u (%u estimation + %u transaction + %u item + %u ancilla)\n",
                lay.num_qubits(), lay.t, lay.transaction_qubits, lay.k * lay.item_qubits,
                lay.num_ancillas());
    std::printf("data qubits before ancilla accounting: %u\n", data_qubits);
    std::printf("gates (ir): %zu\n", program.circuit.gates().size());
    std::printf("gates (lowered): %zu\n", exported.gate_statements);
    std::printf("basic-oracle instantiations: %zu\n", program.circuit.ob_instantiations());
    if (program.prep.method == PrepMethod::ExactInit) {
        std::printf("note: candidate superposition uses direct state initialization; "
                    "the exported text starts from that state\n");
    }

    if (!opt.output_path.empty()) {
        write_file(opt.output_path, exported.text);
        std::cout << "circuit written to " << opt.output_path << "\n";
    } else {
        std::cout << exported.text;
    }
    return kExitOk;
}

void add_common_flags(CLI::App *cmd, CommonOptions &opt, bool quantum_flags) {
    cmd->add_option("input", opt.input_path, "transaction database file")->required();
    cmd->add_option("--format", opt.format, "input format: csv | json (default: by extension)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    cmd->add_option("--output,-o", opt.output_path, "output file path");
    if (quantum_flags) {
        cmd->add_option("--t", opt.t, "estimation qubits (support grid resolution)")
            ->check(CLI::Range(1u, 12u));
        cmd->add_option("--shots", opt.shots, "shot count (omit or 0 for exact probabilities)");
        cmd->add_flag("--exact", opt.exact, "exact probability mode (default unless --shots)");
        cmd->add_option("--seed", opt.seed, "sampling seed (fallback: env QARM_SEED, then 0)");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"frequent-itemset mining on an exact statevector simulator"};
    app.require_subcommand(1);

    CommonOptions mine_opt;
    std::string engine = "classical";
    CLI::App *mine_cmd = app.add_subcommand("mine", "mine frequent itemsets");
    add_common_flags(mine_cmd, mine_opt, true);
    mine_cmd->add_option("--engine", engine, "classical | quantum")
        ->check(CLI::IsMember({"classical", "quantum"}));
    mine_cmd->add_option("--smin", mine_opt.smin, "minimum support threshold (decimal)")
        ->required();
    mine_cmd->add_option("--aa-rounds", mine_opt.aa_rounds, "amplitude amplification rounds");
    mine_cmd->add_option("--mode", mine_opt.mode, "estimate-only | full-qarm")
        ->check(CLI::IsMember({"estimate-only", "full-qarm"}));
    mine_cmd->add_option("--output-format", mine_opt.output_format, "json | csv | text-table")
        ->check(CLI::IsMember({"json", "csv", "text-table"}));

    CommonOptions est_opt;
    uint32_t est_k = 1;
    std::string est_candidates;
    CLI::App *est_cmd = app.add_subcommand("estimate", "estimate candidate supports");
    add_common_flags(est_cmd, est_opt, true);
    est_cmd->add_option("--k", est_k, "candidate itemset cardinality")->check(CLI::Range(1u, 8u));
    est_cmd->add_option("--candidates", est_candidates,
                        "semicolon-separated itemsets of comma-separated labels, "
                        "e.g. I0,I2;I1,I3 (default: all k-itemsets)");

    CommonOptions exp_opt;
    uint32_t exp_k = 1;
    std::string exp_candidates;
    std::string exp_circuit = "pae";
    CLI::App *exp_cmd = app.add_subcommand("export", "export circuit as OpenQASM 2.0");
    add_common_flags(exp_cmd, exp_opt, true);
    exp_cmd->add_option("--k", exp_k, "candidate itemset cardinality")->check(CLI::Range(1u, 8u));
    exp_cmd->add_option("--candidates", exp_candidates, "candidate list (default: all k-itemsets)");
    exp_cmd->add_option("--circuit", exp_circuit, "pae | iteration")
        ->check(CLI::IsMember({"pae", "iteration"}));
    exp_cmd->add_option("--smin", exp_opt.smin, "threshold for the iteration circuit's marker");
    exp_cmd->add_option("--aa-rounds", exp_opt.aa_rounds, "amplitude amplification rounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (mine_cmd->parsed()) {
            return cmd_mine(mine_opt, engine);
        }
        if (est_cmd->parsed()) {
            return cmd_estimate(est_opt, est_k, est_candidates);
        }
        return cmd_export(exp_opt, exp_k, exp_candidates, exp_circuit);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
