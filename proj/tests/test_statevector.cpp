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

#include "qarm/statevector.hpp"

#include <gtest/gtest.h>

#include "qarm/histogram.hpp"
#include "qarm/oracle_synth.hpp"
#include "test_util.hpp"

using namespace qarm;

namespace {

StateVector basis_state(uint32_t n, uint64_t index) {
    std::vector<Complex> amps(size_t{1} << n, Complex{0, 0});
    amps[index] = Complex{1, 0};
    return StateVector(n, std::move(amps));
}

void expect_state_near(const StateVector &got, const std::vector<Complex> &want, double tol) {
    ASSERT_EQ(got.dimension(), want.size());
    for (size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(got.amplitude(i).real(), want[i].real(), tol) << "amplitude " << i;
        EXPECT_NEAR(got.amplitude(i).imag(), want[i].imag(), tol) << "amplitude " << i;
    }
}

TEST(Apply, HadamardOnZero) {
    const StateVector out = apply(StateVector(1), gate::h(0));
    const double s = 1.0 / std::sqrt(2.0);
    expect_state_near(out, {{s, 0}, {s, 0}}, 1e-15);
}

TEST(Apply, CnotTruthTable) {
    // X controlled on-1 by qubit 1, applied to |10> (qubit1=1, qubit0=0).
    const StateVector out = apply(basis_state(2, 0b10), gate::mcx({{1, true}}, 0));
    expect_state_near(out, {{0, 0}, {0, 0}, {0, 0}, {1, 0}}, 0.0);
}

TEST(Apply, CczFlipsPhaseOfAllOnes) {
    const StateVector out =
        apply(basis_state(3, 0b111), gate::mcz({{1, true}, {2, true}}, 0));
    EXPECT_EQ(out.amplitude(0b111), (Complex{-1, 0}));
}

TEST(Apply, ZeroControlFiresOnZero) {
    const StateVector out = apply(basis_state(2, 0b00), gate::mcx({{1, false}}, 0));
    expect_state_near(out, {{0, 0}, {1, 0}, {0, 0}, {0, 0}}, 0.0);
}

TEST(Apply, ErrorsOnBadInput) {
    StateVector sv(2);
    EXPECT_THROW(apply_in_place(sv, gate::x(2)), std::out_of_range);
    EXPECT_THROW(apply_in_place(sv, gate::mcx({{5, true}}, 0)), std::out_of_range);
    EXPECT_THROW(apply_in_place(sv, gate::phase(0, std::nan(""))), std::invalid_argument);
}

TEST(Run, EmptyCircuitIsIdentity) {
    std::mt19937_64 rng(7);
    const StateVector initial = qarm::testing::random_state(3, rng);
    const StateVector out = run(Circuit(3), initial);
    EXPECT_GT(out.fidelity(initial), 1.0 - 1e-12);
}

TEST(Run, DoubleHadamardIsIdentity) {
    Circuit c(1);
    c.add(gate::h(0));
    c.add(gate::h(0));
    const StateVector out = run(c);
    expect_state_near(out, {{1, 0}, {0, 0}}, 1e-12);
}

TEST(Run, WidthMismatchThrows) {
    EXPECT_THROW(run(Circuit(3), StateVector(2)), std::invalid_argument);
}

// The 2x2 database's Grover operator applied to |+> on the transaction
// qubit with the item register clamped to |j=1>, checked against the dense
// matrix product.
TEST(Run, Grover2x2MatchesDenseOracle) {
    const auto db = qarm::testing::db_2x2();
    const Circuit g = synth_grover(db, 1);
    ASSERT_EQ(g.num_qubits(), 3u); // transaction, item, phase ancilla

    // |+> (x) |j=1> (x) |->
    const double h = 0.5; // 1/sqrt(2) * 1/sqrt(2)
    std::vector<Complex> amps(8, Complex{0, 0});
    amps[0b010] = Complex{h, 0};   // i=0, j=1, a=0
    amps[0b011] = Complex{h, 0};   // i=1, j=1, a=0
    amps[0b110] = Complex{-h, 0};  // i=0, j=1, a=1
    amps[0b111] = Complex{-h, 0};  // i=1, j=1, a=1
    const StateVector initial(3, amps);

    const StateVector got = run(g, initial);
    const auto want = qarm::testing::circuit_apply_dense(g, amps);
    for (size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(got.amplitude(i).real(), want[i].real(), 1e-12);
        EXPECT_NEAR(got.amplitude(i).imag(), want[i].imag(), 1e-12);
    }
}

TEST(Run, NormPreservedOnRandomCircuits) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const uint32_t n = 1 + rng() % 6;
        const Circuit c = qarm::testing::random_circuit(n, 1 + rng() % 10, rng);
        const StateVector out = run(c, qarm::testing::random_state(n, rng));
        EXPECT_LT(std::abs(out.norm_squared() - 1.0), 1e-9);
    }
}

TEST(Run, AdjointCompositionRestoresState) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const uint32_t n = 1 + rng() % 6;
        const Circuit c = qarm::testing::random_circuit(n, 1 + rng() % 10, rng);
        const StateVector initial = qarm::testing::random_state(n, rng);
        const StateVector out = run(c.adjoint(), run(c, initial));
        EXPECT_GT(out.fidelity(initial), 1.0 - 1e-9);
    }
}

TEST(Run, MatchesMatrixOracleOnRandomCircuits) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const uint32_t n = 2 + rng() % 7; // up to 8 qubits
        const Circuit c = qarm::testing::random_circuit(n, 1 + rng() % 12, rng);
        const StateVector initial = qarm::testing::random_state(n, rng);

        const StateVector got = run(c, initial);
        const auto want = qarm::testing::apply_matrix(qarm::testing::circuit_matrix(c),
                                                      initial.amplitudes());
        for (size_t i = 0; i < want.size(); ++i) {
            EXPECT_NEAR(got.amplitude(i).real(), want[i].real(), 1e-9);
            EXPECT_NEAR(got.amplitude(i).imag(), want[i].imag(), 1e-9);
        }
    }
}

TEST(ExactDistribution, BellMarginal) {
    Circuit c(2);
    c.add(gate::h(0));
    c.add(gate::cx(0, 1));
    const Histogram h = exact_distribution(run(c), {0});
    ASSERT_EQ(h.entries.size(), 2u);
    EXPECT_NEAR(h.entries.at("0"), 0.5, 1e-12);
    EXPECT_NEAR(h.entries.at("1"), 0.5, 1e-12);
}

TEST(ExactDistribution, BasisStateIsSingleton) {
    const Histogram h = exact_distribution(basis_state(3, 0b110), {2, 1, 0});
    ASSERT_EQ(h.entries.size(), 1u);
    EXPECT_DOUBLE_EQ(h.entries.at("110"), 1.0);
}

TEST(ExactDistribution, ProbabilitiesSumToOne) {
    std::mt19937_64 rng(23);
    const StateVector sv = qarm::testing::random_state(4, rng);
    const Histogram h = exact_distribution(sv, {3, 1});
    double total = 0.0;
    for (const auto &[bits, p] : h.entries) {
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(ExactDistribution, EmptySubsetThrows) {
    EXPECT_THROW(exact_distribution(StateVector(2), {}), std::invalid_argument);
}

TEST(Sample, BasisStateTakesAllShots) {
    const Histogram h = sample(basis_state(2, 0b01), {1, 0}, 8192, 42);
    ASSERT_EQ(h.entries.size(), 1u);
    EXPECT_DOUBLE_EQ(h.entries.at("01"), 8192.0);
}

TEST(Sample, UniformCountsWithinThreeSigma) {
    const StateVector plus = apply(StateVector(1), gate::h(0));
    const Histogram h = sample(plus, {0}, 8192, 7);
    const double sigma = std::sqrt(8192.0 * 0.25);
    EXPECT_NEAR(h.entries.at("0"), 4096.0, 3.0 * sigma);
    EXPECT_NEAR(h.entries.at("1"), 4096.0, 3.0 * sigma);
    EXPECT_DOUBLE_EQ(h.entries.at("0") + h.entries.at("1"), 8192.0);
}

TEST(Sample, SameSeedSameHistogram) {
    std::mt19937_64 rng(29);
    const StateVector sv = qarm::testing::random_state(3, rng);
    const Histogram a = sample(sv, {2, 1, 0}, 4096, 1234);
    const Histogram b = sample(sv, {2, 1, 0}, 4096, 1234);
    EXPECT_EQ(a.entries, b.entries);
}

TEST(Sample, ZeroShotsThrows) {
    EXPECT_THROW(sample(StateVector(1), {0}, 0, 1), std::invalid_argument);
}

TEST(Sample, ConvergesToExactDistribution) {
    std::mt19937_64 rng(31);
    const StateVector sv = qarm::testing::random_state(3, rng);
    const std::vector<uint32_t> qubits{2, 1, 0};
    const Histogram exact = exact_distribution(sv, qubits);
    const Histogram counts = sample(sv, qubits, 100000, 99);
    double tv = 0.0;
    for (const auto &[bits, p] : exact.entries) {
        tv += std::abs(p - counts.probability(bits));
    }
    for (const auto &[bits, c] : counts.entries) {
        if (!exact.entries.count(bits)) {
            tv += counts.probability(bits);
        }
    }
    EXPECT_LT(tv / 2.0, 0.02);
}

TEST(Circuit, RejectsInvalidGates) {
    Circuit c(2);
    EXPECT_THROW(c.add(gate::x(2)), std::out_of_range);
    EXPECT_THROW(c.add(gate::mcx({{0, true}}, 0)), std::invalid_argument); // duplicate index
    EXPECT_THROW(c.add(GateOp{GateKind::X, {}, {}, 0.0}), std::invalid_argument);
    EXPECT_THROW(c.add(GateOp{GateKind::H, {0}, {{1, true}}, 0.0}), std::invalid_argument);
}

TEST(Circuit, RegisterValidation) {
    EXPECT_NO_THROW(Circuit(3, {{"a", 0, 1}, {"b", 1, 2}}));
    EXPECT_THROW(Circuit(3, {{"a", 0, 2}, {"b", 1, 2}}), std::invalid_argument); // overlap
    EXPECT_THROW(Circuit(3, {{"a", 0, 2}}), std::invalid_argument);              // gap
    EXPECT_THROW(Circuit(2, {{"a", 0, 3}}), std::invalid_argument);              // out of range
}

} // namespace
