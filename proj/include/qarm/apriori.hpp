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
#include <map>
#include <set>
#include <vector>

#include "qarm/transaction_db.hpp"

namespace qarm {

/// Frequent itemsets grouped by cardinality, each with its exact support.
struct FrequentSet {
    std::map<uint32_t, std::vector<std::pair<Itemset, SupportValue>>> by_k;

    bool contains(const Itemset &itemset) const {
        auto it = by_k.find(itemset.cardinality());
        if (it == by_k.end()) {
            return false;
        }
        for (const auto &[set, sup] : it->second) {
            if (set == itemset) {
                return true;
            }
        }
        return false;
    }

    std::vector<std::pair<Itemset, SupportValue>> all() const {
        std::vector<std::pair<Itemset, SupportValue>> flat;
        for (const auto &[k, level] : by_k) {
            flat.insert(flat.end(), level.begin(), level.end());
        }
        return flat;
    }

    std::set<Itemset> itemsets() const {
        std::set<Itemset> out;
        for (const auto &[k, level] : by_k) {
            for (const auto &[set, sup] : level) {
                out.insert(set);
            }
        }
        return out;
    }

    size_t size() const {
        size_t n = 0;
        for (const auto &[k, level] : by_k) {
            n += level.size();
        }
        return n;
    }
};

/// Join + prune candidate generation. Join merges two frequent k-itemsets
/// sharing their first k-1 items (sorted order); prune removes candidates
/// with any k-subset missing from the frequent list. Output is sorted and
/// duplicate-free.
inline std::vector<Itemset> generate_candidates(const std::vector<Itemset> &frequent_k) {
    if (frequent_k.empty()) {
        return {};
    }
    const uint32_t k = frequent_k.front().cardinality();
    for (const Itemset &s : frequent_k) {
        if (s.cardinality() != k) {
            throw std::invalid_argument("generate_candidates requires equal cardinalities");
        }
    }
    std::vector<Itemset> sorted = frequent_k;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::set<Itemset> frequent_lookup(sorted.begin(), sorted.end());

    std::set<Itemset> candidates;
    for (size_t a = 0; a < sorted.size(); ++a) {
        for (size_t b = a + 1; b < sorted.size(); ++b) {
            const auto &x = sorted[a].items;
            const auto &y = sorted[b].items;
            if (!std::equal(x.begin(), x.end() - 1, y.begin(), y.end() - 1)) {
                continue;
            }
            std::vector<uint32_t> merged(x);
            merged.push_back(std::max(x.back(), y.back()));
            merged[merged.size() - 2] = std::min(x.back(), y.back());

            // prune: every k-subset must itself be frequent
            bool keep = true;
            for (size_t drop = 0; drop + 1 < merged.size() && keep; ++drop) {
                std::vector<uint32_t> subset;
                for (size_t i = 0; i < merged.size(); ++i) {
                    if (i != drop) {
                        subset.push_back(merged[i]);
                    }
                }
                keep = frequent_lookup.count(Itemset(subset)) > 0;
            }
            if (keep) {
                candidates.insert(Itemset(merged));
            }
        }
    }
    return {candidates.begin(), candidates.end()};
}

/// Classical Apriori. Iterates k = 1, 2, ... until no candidates remain,
/// keeping every candidate whose exact support is >= s_min (inclusive).
inline FrequentSet apriori_mine(const TransactionDatabase &db, const Rational &s_min) {
    if (s_min <= Rational(0, 1) || s_min > Rational(1, 1)) {
        throw std::invalid_argument("s_min must satisfy 0 < s_min <= 1");
    }
    FrequentSet result;
    std::vector<Itemset> candidates;
    for (uint32_t j = 0; j < db.original_items(); ++j) {
        candidates.push_back(Itemset({j}));
    }
    uint32_t k = 1;
    while (!candidates.empty()) {
        std::vector<Itemset> frequent;
        std::vector<std::pair<Itemset, SupportValue>> level;
        for (const Itemset &candidate : candidates) {
            const SupportValue sup = support(db, candidate);
            if (sup.exact() >= s_min) {
                frequent.push_back(candidate);
                level.emplace_back(candidate, sup);
            }
        }
        if (!level.empty()) {
            result.by_k[k] = std::move(level);
        }
        candidates = generate_candidates(frequent);
        ++k;
    }
    return result;
}

} // namespace qarm
