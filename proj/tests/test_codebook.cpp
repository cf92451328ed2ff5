// Copyright 2026 The qjdr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include <qjdr/codebook.hpp>

#include "test_support.hpp"

using namespace qjdr;
using qjdr::test_support::max_diff;

namespace {

constexpr double pi = std::numbers::pi;

/// Reorder the qubit factors of an n-qubit operator: factor i of the result
/// is factor perm[i] of the input.
ComplexMatrix permute_qubits(const ComplexMatrix &m, const std::vector<int> &perm) {
    const int n = static_cast<int>(perm.size());
    const Eigen::Index d = Eigen::Index{1} << n;
    auto map = [&](Eigen::Index idx) {
        Eigen::Index out = 0;
        for (int i = 0; i < n; ++i) {
            const auto bit = (idx >> (n - 1 - perm[i])) & 1;
            out |= bit << (n - 1 - i);
        }
        return out;
    };
    ComplexMatrix r(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            r(map(a), map(b)) = m(a, b);
        }
    }
    return r;
}

TransductionParams thermal(double nbar) {
    TransductionParams p;
    p.thermal_occupancy = nbar;
    return p;
}

} // namespace

TEST(ParityCode, Shape) {
    const auto code = parity_code_3_2();
    EXPECT_EQ(code.num_codewords(), 4U);
    EXPECT_EQ(code.length(), 3U);
    for (double p : code.priors()) {
        EXPECT_EQ(p, 0.25);
    }
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    EXPECT_NE(std::find(code.phases().begin(), code.phases().end(), zeros), code.phases().end());
}

TEST(ParityCode, PairwiseHammingDistanceTwo) {
    const auto code = parity_code_3_2();
    const auto &rows = code.phases();
    int pairs = 0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
            int dist = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                dist += rows[a][i] != rows[b][i] ? 1 : 0;
            }
            EXPECT_EQ(dist, 2);
            ++pairs;
        }
    }
    EXPECT_EQ(pairs, 6);
}

TEST(CodebookType, Invariants) {
    using Rows = std::vector<std::vector<double>>;
    EXPECT_THROW(Codebook(Rows{{0.0}}), InputError);
    EXPECT_THROW(Codebook(Rows{{0.0, pi}, {0.0}}), InputError);
    EXPECT_THROW(Codebook(Rows{{0.0, pi}, {0.0, pi}}), InputError);
    EXPECT_THROW(Codebook(Rows{{0.0}, {pi}}, {0.5, 0.6}), InputError);
    EXPECT_THROW(Codebook(Rows{{0.0}, {pi}}, {1.5, -0.5}), InputError);
    EXPECT_NO_THROW(Codebook(Rows{{0.0}, {pi}}, {0.3, 0.7}));
}

TEST(CodebookFile, ParsesSymbolsAndPriors) {
    std::istringstream in("# parity code\n+++ 0.4\n+ - -  0.2\n-+- 0.2\n\n--+ 0.2 # last\n");
    const auto code = parse_codebook(in);
    ASSERT_EQ(code.num_codewords(), 4U);
    EXPECT_EQ(code.phases()[1], (std::vector<double>{0.0, pi, pi}));
    EXPECT_NEAR(code.priors()[0], 0.4, 1e-15);
}

TEST(CodebookFile, UniformWhenNoPriors) {
    std::istringstream in("++\n+-\n-+\n");
    const auto code = parse_codebook(in);
    ASSERT_EQ(code.num_codewords(), 3U);
    EXPECT_NEAR(code.priors()[2], 1.0 / 3.0, 1e-15);
}

TEST(CodebookFile, ErrorsCarryLineNumbers) {
    auto message = [](const std::string &text) {
        std::istringstream in(text);
        try {
            parse_codebook(in, "book.txt");
        } catch (const ParseError &e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("+++\n++\n").find("book.txt:2"), std::string::npos);
    EXPECT_NE(message("+++\n+x+\n").find("book.txt:2"), std::string::npos);
    EXPECT_NE(message("+++\n---\n+++\n").find("book.txt:3"), std::string::npos);
    EXPECT_NE(message("+ 0.5\n- 0.5 junk\n").find("book.txt:2"), std::string::npos);
    EXPECT_NE(message("+ 0.5\n-\n").find("every line"), std::string::npos);
    EXPECT_NE(message("+ 0.5\n- 0.6\n").find("sum"), std::string::npos);
    EXPECT_NE(message("+\n").find("at least two"), std::string::npos);
}

TEST(CodewordState, DimensionAndTrace) {
    const auto rho = codeword_state(parity_code_3_2(), 2, 0.5, thermal(0.3));
    EXPECT_EQ(rho.dim(), 8U);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-8);
}

TEST(CodewordState, IndexOutOfRange) {
    EXPECT_THROW(codeword_state(parity_code_3_2(), 4, 0.5, thermal(0.0)), IndexOutOfRange);
}

TEST(CodewordState, SamePhaseCodewordIsPermutationInvariant) {
    const auto rho = codeword_state(parity_code_3_2(), 0, 0.7, thermal(0.5)).matrix();
    std::vector<int> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
        EXPECT_LE(max_diff(permute_qubits(rho, perm), rho), 1e-10);
    }
}

TEST(CodewordState, VacuumInputGivesAllGround) {
    ComplexMatrix ggg = ComplexMatrix::Zero(8, 8);
    ggg(0, 0) = 1.0;
    for (std::size_t m = 0; m < 4; ++m) {
        const auto rho = codeword_state(parity_code_3_2(), m, 0.0, thermal(0.0));
        EXPECT_LT(max_diff(rho.matrix(), ggg), 1e-12);
    }
}

TEST(CodewordState, FactorizesIntoTransducedPulses) {
    const auto code = parity_code_3_2();
    const auto params = thermal(0.4);
    for (std::size_t m = 0; m < code.num_codewords(); ++m) {
        const auto rho = codeword_state(code, m, 0.6, params);
        for (std::size_t slot = 0; slot < 3; ++slot) {
            const auto reduced = partial_trace(rho, {2, 2, 2}, {slot});
            const auto single =
                transduce_pulse(CoherentPulse(0.6, code.phases()[m][slot]), params);
            EXPECT_LE(max_diff(reduced.matrix(), single.matrix()), 1e-10);
        }
    }
}

TEST(CodewordState, SlotPermutationPermutesFactors) {
    const auto code = parity_code_3_2();
    const std::vector<std::size_t> order{2, 0, 1};
    const auto swapped = code.permuted(order);
    const auto params = thermal(0.2);
    for (std::size_t m = 0; m < code.num_codewords(); ++m) {
        const auto original = codeword_state(code, m, 0.45, params);
        const auto moved = codeword_state(swapped, m, 0.45, params);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto a = partial_trace(moved, {2, 2, 2}, {i});
            const auto b = partial_trace(original, {2, 2, 2}, {order[i]});
            EXPECT_LE(max_diff(a.matrix(), b.matrix()), 1e-10);
        }
        EXPECT_LE(max_diff(moved.matrix(),
                           permute_qubits(original.matrix(), {2, 0, 1})),
                  1e-10);
    }
}

TEST(Ensemble, OrderAndPriors) {
    const auto code = parity_code_3_2();
    const auto states = ensemble(code, 0.5, thermal(0.0));
    ASSERT_EQ(states.size(), 4U);
    for (std::size_t m = 0; m < states.size(); ++m) {
        EXPECT_EQ(states[m].prior, code.priors()[m]);
        EXPECT_LT(max_diff(states[m].state.matrix(),
                           codeword_state(code, m, 0.5, thermal(0.0)).matrix()),
                  1e-14);
    }
}

TEST(Ensemble, EqualPurityAtZeroTemperature) {
    const auto states = ensemble(parity_code_3_2(), 0.8, thermal(0.0));
    const double reference = states.front().state.purity();
    for (const auto &s : states) {
        EXPECT_LE(std::abs(s.state.purity() - reference), 1e-9);
    }
}
