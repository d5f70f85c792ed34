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

#include "qarm/transaction_db.hpp"

#include <gtest/gtest.h>

#include "qarm/rational.hpp"
#include "test_util.hpp"

using namespace qarm;

namespace {

std::vector<Itemset> all_itemsets(uint32_t m) {
    std::vector<Itemset> out;
    for (uint32_t mask = 1; mask < (uint32_t{1} << m); ++mask) {
        std::vector<uint32_t> items;
        for (uint32_t j = 0; j < m; ++j) {
            if ((mask >> j) & 1) {
                items.push_back(j);
            }
        }
        out.push_back(Itemset(items));
    }
    return out;
}

TEST(Parse, CsvTwoByTwo) {
    const auto db = parse_database("T0,I1\nT1,I0,I1\n", DatabaseFormat::CsvTransactions);
    EXPECT_EQ(db.num_transactions(), 2u);
    EXPECT_EQ(db.num_items(), 2u);
    EXPECT_EQ(db.item_labels(), (std::vector<std::string>{"I0", "I1"}));
    EXPECT_EQ(db.entry(0, 0), 0);
    EXPECT_EQ(db.entry(0, 1), 1);
    EXPECT_EQ(db.entry(1, 0), 1);
    EXPECT_EQ(db.entry(1, 1), 1);
}

TEST(Parse, EmptyTransactionBecomesZeroRow) {
    const auto db = parse_database("T0,I1\nT1\nT2,I0\n", DatabaseFormat::CsvTransactions);
    EXPECT_EQ(db.num_transactions(), 3u);
    EXPECT_EQ(db.entry(1, 0), 0);
    EXPECT_EQ(db.entry(1, 1), 0);
}

TEST(Parse, JsonCanonicalD4) {
    const std::string text = R"({"items": ["I0","I1","I2","I3"],
        "matrix": [[1,0,1,0],[1,1,1,1],[1,1,1,1],[1,0,0,1]]})";
    const auto db = parse_database(text, DatabaseFormat::JsonMatrix);
    EXPECT_EQ(support(db, Itemset({0})).exact(), Rational(1, 1));
    EXPECT_EQ(support(db, Itemset({1, 3})).exact(), Rational(1, 2));
    EXPECT_EQ(support(db, Itemset({0, 2})).exact(), Rational(3, 4));
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_database(R"({"items": ["A","A"], "matrix": [[1,1]]})",
                                DatabaseFormat::JsonMatrix),
                 std::invalid_argument); // duplicate labels
    EXPECT_THROW(parse_database(R"({"items": ["A","B"], "matrix": [[1,2]]})",
                                DatabaseFormat::JsonMatrix),
                 std::invalid_argument); // non-binary entry
    EXPECT_THROW(parse_database(R"({"items": ["A","B"], "matrix": [[1,1],[0]]})",
                                DatabaseFormat::JsonMatrix),
                 std::invalid_argument); // ragged rows
    EXPECT_THROW(parse_database("T0,I1,I1\n", DatabaseFormat::CsvTransactions),
                 std::invalid_argument); // duplicate item in one transaction
    EXPECT_THROW(parse_database("", DatabaseFormat::CsvTransactions), std::invalid_argument);
    EXPECT_THROW(parse_database("{", DatabaseFormat::JsonMatrix), std::invalid_argument);
}

TEST(Pad, PowerOfTwoShapeUnchanged) {
    const auto db = pad_to_power_of_two(qarm::testing::db_2x2());
    EXPECT_EQ(db.num_transactions(), 2u);
    EXPECT_EQ(db.num_items(), 2u);
    EXPECT_EQ(db.padded_rows(), 0u);
    EXPECT_EQ(db.padded_cols(), 0u);
}

TEST(Pad, ThreeByFourGainsOneZeroRow) {
    const TransactionDatabase db({{1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}},
                                 {"A", "B", "C", "D"});
    const auto padded = pad_to_power_of_two(db);
    EXPECT_EQ(padded.num_transactions(), 4u);
    EXPECT_EQ(padded.num_items(), 4u);
    EXPECT_EQ(padded.padded_rows(), 1u);
    for (uint32_t j = 0; j < 4; ++j) {
        EXPECT_EQ(padded.entry(3, j), 0);
    }
}

TEST(Pad, SupportsUnchangedByPadding) {
    std::mt19937_64 rng(3);
    const auto db = qarm::testing::random_database(5, 6, rng);
    const auto padded = pad_to_power_of_two(db);
    EXPECT_EQ(padded.num_transactions(), 8u);
    EXPECT_EQ(padded.num_items(), 8u);
    EXPECT_EQ(padded.original_transactions(), 5u);
    for (const Itemset &s : all_itemsets(6)) {
        const auto before = support(db, s);
        const auto after = support(padded, s);
        EXPECT_EQ(before.numerator, after.numerator);
        EXPECT_EQ(before.denominator, after.denominator);
    }
}

TEST(Support, TwoByTwoSingletons) {
    const auto db = qarm::testing::db_2x2();
    EXPECT_EQ(support(db, Itemset({0})).exact(), Rational(1, 2));
    EXPECT_EQ(support(db, Itemset({1})).exact(), Rational(1, 1));
}

TEST(Support, RejectsEmptyAndOutOfRange) {
    const auto db = qarm::testing::db_2x2();
    EXPECT_THROW(support(db, Itemset()), std::invalid_argument);
    EXPECT_THROW(support(db, Itemset({2})), std::out_of_range);
}

TEST(Support, AntiMonotoneOnRandomDatabases) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const uint32_t n = 1 + rng() % 8;
        const uint32_t m = 1 + rng() % 8;
        const auto db = qarm::testing::random_database(n, m, rng);
        const auto sets = all_itemsets(m);
        for (const Itemset &x : sets) {
            for (const Itemset &y : sets) {
                if (std::includes(y.items.begin(), y.items.end(), x.items.begin(),
                                  x.items.end())) {
                    EXPECT_GE(support(db, x).exact(), support(db, y).exact());
                }
            }
        }
    }
}

TEST(Itemset, RequiresStrictlyIncreasingIndices) {
    EXPECT_THROW(Itemset({1, 1}), std::invalid_argument);
    EXPECT_THROW(Itemset({2, 1}), std::invalid_argument);
    EXPECT_NO_THROW(Itemset({0, 3, 5}));
}

TEST(Rational, DecimalParsingIsExact) {
    EXPECT_EQ(Rational::from_decimal("0.8"), Rational(4, 5));
    EXPECT_EQ(Rational::from_decimal("1"), Rational(1, 1));
    EXPECT_EQ(Rational::from_decimal(".25"), Rational(1, 4));
    EXPECT_EQ(Rational::from_decimal("0.50"), Rational(1, 2));
    EXPECT_THROW(Rational::from_decimal("abc"), std::invalid_argument);
    EXPECT_THROW(Rational::from_decimal(""), std::invalid_argument);

    // exactly-at-threshold comparisons must not wobble
    EXPECT_TRUE(Rational(4, 5) >= Rational::from_decimal("0.8"));
    EXPECT_FALSE(Rational(3, 4) >= Rational::from_decimal("0.8"));
}

} // namespace
