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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qarm/rational.hpp"

namespace qarm {

/// Sorted set of item indices. Indices always refer to the original
/// (unpadded) item columns.
struct Itemset {
    std::vector<uint32_t> items;

    Itemset() = default;
    explicit Itemset(std::vector<uint32_t> sorted_items) : items(std::move(sorted_items)) {
        for (size_t i = 1; i < items.size(); ++i) {
            if (items[i] <= items[i - 1]) {
                throw std::invalid_argument("itemset indices must be strictly increasing");
            }
        }
    }

    uint32_t cardinality() const { return static_cast<uint32_t>(items.size()); }

    friend bool operator==(const Itemset &a, const Itemset &b) { return a.items == b.items; }
    friend bool operator<(const Itemset &a, const Itemset &b) { return a.items < b.items; }
};

/// Exact support: the fraction of original transactions containing an
/// itemset. The denominator is always the unpadded transaction count.
struct SupportValue {
    uint64_t numerator = 0;
    uint64_t denominator = 1;

    Rational exact() const {
        return Rational(static_cast<int64_t>(numerator), static_cast<int64_t>(denominator));
    }
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

enum class DatabaseFormat { CsvTransactions, JsonMatrix };

/// Binary transaction-item matrix with item labels. Rows are transactions,
/// D[i][j] = 1 iff item j is in transaction i. Padding to power-of-two
/// dimensions appends all-zero rows/columns and never changes supports,
/// which are always computed against the original dimensions.
class TransactionDatabase {
  public:
    TransactionDatabase(std::vector<std::vector<uint8_t>> matrix, std::vector<std::string> labels)
        : matrix_(std::move(matrix)), item_labels_(std::move(labels)) {
        if (matrix_.empty() || matrix_.front().empty()) {
            throw std::invalid_argument("database must have at least one transaction and one item");
        }
        const size_t m = matrix_.front().size();
        for (const auto &row : matrix_) {
            if (row.size() != m) {
                throw std::invalid_argument("ragged matrix rows");
            }
            for (uint8_t v : row) {
                if (v > 1) {
                    throw std::invalid_argument("matrix entries must be 0 or 1");
                }
            }
        }
        if (item_labels_.size() != m) {
            throw std::invalid_argument("label count must match item count");
        }
        std::set<std::string> unique(item_labels_.begin(), item_labels_.end());
        if (unique.size() != item_labels_.size()) {
            throw std::invalid_argument("duplicate item labels");
        }
        original_transactions_ = static_cast<uint32_t>(matrix_.size());
        original_items_ = static_cast<uint32_t>(m);
    }

    uint32_t num_transactions() const { return static_cast<uint32_t>(matrix_.size()); }
    uint32_t num_items() const { return static_cast<uint32_t>(matrix_.front().size()); }
    uint32_t original_transactions() const { return original_transactions_; }
    uint32_t original_items() const { return original_items_; }
    uint32_t padded_rows() const { return num_transactions() - original_transactions_; }
    uint32_t padded_cols() const { return num_items() - original_items_; }
    bool is_power_of_two_shape() const {
        auto pow2 = [](uint32_t v) { return v != 0 && (v & (v - 1)) == 0; };
        return pow2(num_transactions()) && pow2(num_items());
    }

    uint8_t entry(uint32_t transaction, uint32_t item) const { return matrix_[transaction][item]; }
    const std::vector<std::string> &item_labels() const { return item_labels_; }

    const std::string &item_label(uint32_t item) const { return item_labels_.at(item); }
    uint32_t item_index(const std::string &label) const {
        for (uint32_t j = 0; j < item_labels_.size(); ++j) {
            if (item_labels_[j] == label) {
                return j;
            }
        }
        throw std::invalid_argument("unknown item label: " + label);
    }

  private:
    friend TransactionDatabase pad_to_power_of_two(const TransactionDatabase &db);

    std::vector<std::vector<uint8_t>> matrix_;
    std::vector<std::string> item_labels_;
    uint32_t original_transactions_;
    uint32_t original_items_;
};

namespace detail {

inline uint32_t next_power_of_two(uint32_t v) {
    uint32_t p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

inline std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        // trim surrounding whitespace
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    return fields;
}

} // namespace detail

/// CSV transaction format: one line per transaction, first field the
/// transaction label, remaining fields item labels. The item universe is the
/// set of labels seen anywhere in the file, ordered lexicographically.
inline TransactionDatabase parse_csv_transactions(const std::string &text) {
    std::vector<std::vector<std::string>> transactions;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> label_set;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto fields = detail::split(line, ',');
        if (fields.empty() || fields.front().empty()) {
            throw std::invalid_argument("transaction line missing label: " + line);
        }
        std::vector<std::string> items(fields.begin() + 1, fields.end());
        std::set<std::string> seen;
        for (const auto &item : items) {
            if (item.empty()) {
                throw std::invalid_argument("empty item label in line: " + line);
            }
            if (!seen.insert(item).second) {
                throw std::invalid_argument("duplicate item '" + item + "' in transaction " +
                                            fields.front());
            }
            label_set.insert(item);
        }
        transactions.push_back(std::move(items));
    }
    if (transactions.empty() || label_set.empty()) {
        throw std::invalid_argument("database must have at least one transaction and one item");
    }
    std::vector<std::string> labels(label_set.begin(), label_set.end());
    std::map<std::string, uint32_t> index;
    for (uint32_t j = 0; j < labels.size(); ++j) {
        index[labels[j]] = j;
    }
    std::vector<std::vector<uint8_t>> matrix(transactions.size(),
                                             std::vector<uint8_t>(labels.size(), 0));
    for (size_t i = 0; i < transactions.size(); ++i) {
        for (const auto &item : transactions[i]) {
            matrix[i][index[item]] = 1;
        }
    }
    return TransactionDatabase(std::move(matrix), std::move(labels));
}

/// JSON matrix format: {"items": [...], "matrix": [[0|1, ...], ...]}.
inline TransactionDatabase parse_json_matrix(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("items") || !doc.contains("matrix")) {
        throw std::invalid_argument("JSON database needs \"items\" and \"matrix\" fields");
    }
    std::vector<std::string> labels;
    for (const auto &item : doc["items"]) {
        if (!item.is_string()) {
            throw std::invalid_argument("item labels must be strings");
        }
        labels.push_back(item.get<std::string>());
    }
    std::vector<std::vector<uint8_t>> matrix;
    for (const auto &row : doc["matrix"]) {
        std::vector<uint8_t> r;
        for (const auto &cell : row) {
            if (!cell.is_number_integer() || (cell.get<int64_t>() != 0 && cell.get<int64_t>() != 1)) {
                throw std::invalid_argument("matrix entries must be 0 or 1");
            }
            r.push_back(static_cast<uint8_t>(cell.get<int64_t>()));
        }
        matrix.push_back(std::move(r));
    }
    return TransactionDatabase(std::move(matrix), std::move(labels));
}

inline TransactionDatabase parse_database(const std::string &text, DatabaseFormat format) {
    return format == DatabaseFormat::CsvTransactions ? parse_csv_transactions(text)
                                                     : parse_json_matrix(text);
}

/// Rounds both dimensions up to powers of two by appending zero rows and
/// columns. Supports are unchanged: the denominator stays the original N.
inline TransactionDatabase pad_to_power_of_two(const TransactionDatabase &db) {
    const uint32_t n = detail::next_power_of_two(db.num_transactions());
    const uint32_t m = detail::next_power_of_two(db.num_items());
    TransactionDatabase padded = db;
    for (auto &row : padded.matrix_) {
        row.resize(m, 0);
    }
    padded.matrix_.resize(n, std::vector<uint8_t>(m, 0));
    return padded;
}

/// Support per the standard definition: |{T_i : X subseteq T_i}| / N, with N
/// the original transaction count. The empty itemset has support 1 by
/// convention but is rejected here to keep candidates nondegenerate.
inline SupportValue support(const TransactionDatabase &db, const Itemset &itemset) {
    if (itemset.items.empty()) {
        throw std::invalid_argument("empty itemset");
    }
    for (uint32_t j : itemset.items) {
        if (j >= db.original_items()) {
            throw std::out_of_range("item index out of range");
        }
    }
    uint64_t count = 0;
    for (uint32_t i = 0; i < db.original_transactions(); ++i) {
        bool contains = true;
        for (uint32_t j : itemset.items) {
            if (db.entry(i, j) == 0) {
                contains = false;
                break;
            }
        }
        count += contains ? 1 : 0;
    }
    return SupportValue{count, db.original_transactions()};
}

inline std::string itemset_label(const TransactionDatabase &db, const Itemset &itemset) {
    std::string out = "{";
    for (size_t i = 0; i < itemset.items.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += db.item_label(itemset.items[i]);
    }
    return out + "}";
}

} // namespace qarm
