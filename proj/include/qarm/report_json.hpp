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

#include <nlohmann/json.hpp>

#include "qarm/pipeline.hpp"

namespace qarm {

using Json = nlohmann::json;

inline Json histogram_to_json(const Histogram &h) {
    Json entries = Json::object();
    for (const auto &[bits, weight] : h.entries) {
        entries[bits] = weight;
    }
    return Json{{"entries", entries},
                {"total", h.total},
                {"shots", h.shots},
                {"seed", h.seed},
                {"bit_order", h.bit_order}};
}

inline Histogram histogram_from_json(const Json &j) {
    Histogram h;
    for (const auto &[bits, weight] : j.at("entries").items()) {
        h.entries[bits] = weight.get<double>();
    }
    h.total = j.at("total").get<double>();
    h.shots = j.at("shots").get<uint64_t>();
    h.seed = j.at("seed").get<uint64_t>();
    h.bit_order = j.at("bit_order").get<std::string>();
    return h;
}

inline Json itemset_to_json(const Itemset &itemset, const std::vector<std::string> &labels) {
    Json j{{"items", itemset.items}};
    Json names = Json::array();
    for (uint32_t i : itemset.items) {
        names.push_back(i < labels.size() ? labels[i] : "?" + std::to_string(i));
    }
    j["labels"] = names;
    return j;
}

inline Itemset itemset_from_json(const Json &j) {
    return Itemset(j.at("items").get<std::vector<uint32_t>>());
}

inline Json config_to_json(const PipelineConfig &config) {
    return Json{{"t", config.t},
                {"shots", config.shots},
                {"seed", config.seed},
                {"s_min",
                 {{"numerator", config.s_min.numerator()},
                  {"denominator", config.s_min.denominator()},
                  {"value", config.s_min.to_double()}}},
                {"aa_rounds", config.aa_rounds},
                {"mode", config.mode == MiningMode::FullQarm ? "full-qarm" : "estimate-only"}};
}

inline PipelineConfig config_from_json(const Json &j) {
    PipelineConfig config;
    config.t = j.at("t").get<uint32_t>();
    config.shots = j.at("shots").get<uint64_t>();
    config.seed = j.at("seed").get<uint64_t>();
    config.s_min = Rational(j.at("s_min").at("numerator").get<int64_t>(),
                            j.at("s_min").at("denominator").get<int64_t>());
    config.aa_rounds = j.at("aa_rounds").get<uint32_t>();
    config.mode = j.at("mode").get<std::string>() == "full-qarm" ? MiningMode::FullQarm
                                                                 : MiningMode::EstimateOnly;
    return config;
}

inline Json decoded_to_json(const DecodedSupport &d, const std::vector<std::string> &labels) {
    Json j{{"itemset", itemset_to_json(d.itemset, labels)},
           {"m_values", d.m_values},
           {"confidence", d.confidence},
           {"paired", d.paired},
           {"absent", d.flagged_absent()}};
    if (d.support_estimate) {
        j["support_estimate"] = *d.support_estimate;
        j["nearest_db_support"] = d.nearest_db_support;
    } else {
        j["support_estimate"] = nullptr;
    }
    return j;
}

inline DecodedSupport decoded_from_json(const Json &j) {
    DecodedSupport d;
    d.itemset = itemset_from_json(j.at("itemset"));
    d.m_values = j.at("m_values").get<std::vector<uint32_t>>();
    d.confidence = j.at("confidence").get<double>();
    d.paired = j.at("paired").get<bool>();
    if (!j.at("support_estimate").is_null()) {
        d.support_estimate = j.at("support_estimate").get<double>();
        d.nearest_db_support = j.at("nearest_db_support").get<double>();
    }
    return d;
}

inline Json mining_report_to_json(const MiningReport &report) {
    Json iterations = Json::array();
    for (const IterationRecord &iter : report.iterations) {
        Json candidates = Json::array();
        for (const Itemset &c : iter.candidates) {
            candidates.push_back(itemset_to_json(c, report.item_labels));
        }
        Json decoded = Json::array();
        for (const DecodedSupport &d : iter.decoded) {
            decoded.push_back(decoded_to_json(d, report.item_labels));
        }
        Json frequent = Json::array();
        for (const auto &[itemset, sup] : iter.frequent) {
            Json f = itemset_to_json(itemset, report.item_labels);
            f["support"] = sup;
            frequent.push_back(f);
        }
        iterations.push_back(Json{{"k", iter.k},
                                  {"candidates", candidates},
                                  {"qubits", iter.qubits},
                                  {"gate_count", iter.gate_count},
                                  {"ob_count", iter.ob_count},
                                  {"prep", iter.prep_method == PrepMethod::HadamardLayer
                                               ? "hadamard-layer"
                                               : "exact-init"},
                                  {"amplitude_amplification", iter.amplitude_amplification},
                                  {"aa_rounds", iter.aa_rounds},
                                  {"histogram", histogram_to_json(iter.histogram)},
                                  {"decoded", decoded},
                                  {"frequent", frequent}});
    }
    Json frequent = Json::array();
    for (const auto &[itemset, sup] : report.frequent_itemsets) {
        Json f = itemset_to_json(itemset, report.item_labels);
        f["support"] = sup;
        frequent.push_back(f);
    }
    return Json{{"iterations", iterations},
                {"frequent_itemsets", frequent},
                {"config", config_to_json(report.config)},
                {"item_labels", report.item_labels},
                {"grid_epsilon", report.grid_epsilon}};
}

inline MiningReport mining_report_from_json(const Json &j) {
    MiningReport report;
    report.config = config_from_json(j.at("config"));
    report.item_labels = j.at("item_labels").get<std::vector<std::string>>();
    report.grid_epsilon = j.at("grid_epsilon").get<double>();
    for (const Json &it : j.at("iterations")) {
        IterationRecord iter;
        iter.k = it.at("k").get<uint32_t>();
        for (const Json &c : it.at("candidates")) {
            iter.candidates.push_back(itemset_from_json(c));
        }
        iter.qubits = it.at("qubits").get<uint32_t>();
        iter.gate_count = it.at("gate_count").get<size_t>();
        iter.ob_count = it.at("ob_count").get<size_t>();
        iter.prep_method = it.at("prep").get<std::string>() == "hadamard-layer"
                               ? PrepMethod::HadamardLayer
                               : PrepMethod::ExactInit;
        iter.amplitude_amplification = it.at("amplitude_amplification").get<bool>();
        iter.aa_rounds = it.at("aa_rounds").get<uint32_t>();
        iter.histogram = histogram_from_json(it.at("histogram"));
        for (const Json &d : it.at("decoded")) {
            iter.decoded.push_back(decoded_from_json(d));
        }
        for (const Json &f : it.at("frequent")) {
            iter.frequent.emplace_back(itemset_from_json(f), f.at("support").get<double>());
        }
        report.iterations.push_back(std::move(iter));
    }
    for (const Json &f : j.at("frequent_itemsets")) {
        report.frequent_itemsets.emplace_back(itemset_from_json(f), f.at("support").get<double>());
    }
    return report;
}

inline Json frequent_set_to_json(const FrequentSet &fs, const std::vector<std::string> &labels) {
    Json frequent = Json::array();
    for (const auto &[itemset, sup] : fs.all()) {
        Json f = itemset_to_json(itemset, labels);
        f["support"] = {{"numerator", sup.numerator},
                        {"denominator", sup.denominator},
                        {"value", sup.value()}};
        f["k"] = itemset.cardinality();
        frequent.push_back(f);
    }
    return Json{{"frequent_itemsets", frequent}, {"item_labels", labels}};
}

inline Json equivalence_report_to_json(const EquivalenceReport &report) {
    const auto &labels = report.quantum.item_labels;
    auto itemset_list = [&](const std::vector<Itemset> &sets) {
        Json arr = Json::array();
        for (const Itemset &s : sets) {
            arr.push_back(itemset_to_json(s, labels));
        }
        return arr;
    };
    return Json{{"equal_sets", report.equal_sets},
                {"max_support_discrepancy", report.max_support_discrepancy},
                {"only_quantum", itemset_list(report.only_quantum)},
                {"only_classical", itemset_list(report.only_classical)},
                {"off_grid_candidates", itemset_list(report.off_grid_candidates)},
                {"quantum", mining_report_to_json(report.quantum)},
                {"classical", frequent_set_to_json(report.classical, labels)}};
}

} // namespace qarm
