// Copyright 2026 The Strata Authors
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

#include <gtest/gtest.h>

#include <random>

#include "strata/oracle.hpp"
#include "strata/pauli.hpp"

namespace strata {
namespace {

PauliString P(const char* s) { return PauliString::parse(s); }

// Dense reference for a Pauli string, built letter by letter.
MatX dense(const PauliString& p) { return oracle::pauli_string_matrix(p); }

PauliString random_pauli(int n, std::mt19937_64& rng) {
    const std::uint64_t m = low_mask(n);
    return PauliString(n, rng() & m, rng() & m, Phase(static_cast<int>(rng() & 3)));
}

TEST(Phase, ArithmeticIsExact) {
    EXPECT_EQ(Phase::i() * Phase::i(), Phase::minus_one());
    EXPECT_EQ(-Phase::i(), Phase::minus_i());
    EXPECT_EQ(Phase::minus_i().str(), "-i");
    EXPECT_TRUE(Phase::minus_one().is_real());
    EXPECT_FALSE(Phase::i().is_real());
    EXPECT_EQ(Phase::minus_one().sign(), -1);
}

TEST(PauliString, ParseAndPrintRoundTrip) {
    for (const char* s : {"+XZY", "-IYX", "+iXX", "-iZ_Z"}) {
        const auto p = P(s);
        EXPECT_EQ(PauliString::parse(p.str()), p) << s;
    }
    const auto p = P("XIZY");
    EXPECT_EQ(p.n_qubits(), 4);
    EXPECT_EQ(p.x_mask(), 0b1001u);
    EXPECT_EQ(p.z_mask(), 0b1100u);
    EXPECT_EQ(p.at(3), Axis::Y);
    EXPECT_EQ(p.weight(), 3);
    EXPECT_THROW(P("+XQ"), ParseError);
    EXPECT_THROW(P(""), ParseError);
}

TEST(PauliString, SingleQubitProducts) {
    EXPECT_EQ(P("X") * P("Y"), P("+iZ"));
    EXPECT_EQ(P("X") * P("X"), P("+I"));
    EXPECT_EQ(P("Y") * P("Z"), P("+iX"));
    EXPECT_EQ(P("Z") * P("X"), P("+iY"));
    EXPECT_EQ(P("Z") * P("Y"), P("-iX"));
}

TEST(PauliString, ThreeQubitProduct) {
    const auto prod = P("XXX") * P("ZZI");
    EXPECT_EQ(prod, P("-YYX"));
    EXPECT_TRUE(dense(prod).isApprox(dense(P("XXX")) * dense(P("ZZI")), 1e-14));
}

TEST(PauliString, ProductMatchesDenseOnRandomPairs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        EXPECT_LT((dense(a * b) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(PauliString, ProductIsAssociativeWithExactPhase) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        const auto c = random_pauli(n, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(PauliString, SquaringRecoversOperandUpToSign) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto a = random_pauli(n, rng).with_phase(Phase::one());
        const auto b = random_pauli(n, rng);
        const auto back = a * (a * b);
        EXPECT_EQ(back.x_mask(), b.x_mask());
        EXPECT_EQ(back.z_mask(), b.z_mask());
        EXPECT_TRUE(back.phase() == b.phase() || back.phase() == -b.phase());
    }
}

TEST(PauliString, CommutingHermitianProductsStayHermitian) {
    std::mt19937_64 rng(14);
    int seen = 0;
    while (seen < 200) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto a = random_pauli(n, rng).with_phase(Phase::one());
        const auto b = random_pauli(n, rng).with_phase(Phase::minus_one());
        if (!commutes(a, b)) continue;
        ++seen;
        EXPECT_TRUE((a * b).is_hermitian());
    }
}

TEST(PauliString, SizeMismatchThrows) {
    EXPECT_THROW(P("XX") * P("X"), DimensionError);
    EXPECT_THROW((void)commutes(P("XX"), P("X")), DimensionError);
}

TEST(Commutes, Examples) {
    EXPECT_FALSE(commutes(P("X"), P("Z")));
    EXPECT_TRUE(commutes(P("XX"), P("ZZ")));
    EXPECT_TRUE(commutes(P("XXX"), P("ZZI")));
    EXPECT_FALSE(commutes(P("XXX"), P("ZII")));
}

TEST(Commutes, AgreesWithDenseCommutator) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        const MatX comm = dense(a) * dense(b) - dense(b) * dense(a);
        EXPECT_EQ(commutes(a, b), comm.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST(XYString, ParseWeightsAndParity) {
    const auto l = XYString::parse("xyyx");
    EXPECT_EQ(l.y_mask(), 0b0110u);
    EXPECT_EQ(l.y_count(), 2);
    EXPECT_TRUE(l.is_even());
    EXPECT_EQ(l.cos_weight(), -1);
    EXPECT_EQ(XYString::parse("xxx").cos_weight(), 1);
    EXPECT_EQ(XYString::parse("yxx").cos_weight(), 0);
    EXPECT_EQ(XYString::parse("yyyy").cos_weight(), 1);
    EXPECT_EQ(l.str(), "xyyx");
    EXPECT_EQ(l.to_pauli(), P("XYYX"));
    EXPECT_THROW(XYString::parse("xz"), ParseError);
}

TEST(BasisAction, Examples) {
    const auto yy = apply_to_basis_state(XYString::parse("yy"), 0b00, 2);
    EXPECT_EQ(yy.phase, Phase::minus_one());
    EXPECT_EQ(yy.k_prime, 0b11u);
    const auto xxx = apply_to_basis_state(XYString::parse("xxx"), 0b000, 3);
    EXPECT_EQ(xxx.phase, Phase::one());
    EXPECT_EQ(xxx.k_prime, 0b111u);
}

TEST(BasisAction, AgreesWithDenseMatrixUpToSixQubits) {
    std::mt19937_64 rng(16);
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t count = std::uint64_t{1} << n;
        const int l_samples = n <= 3 ? static_cast<int>(count) : 12;
        for (int s = 0; s < l_samples; ++s) {
            const std::uint64_t y = n <= 3 ? static_cast<std::uint64_t>(s) : rng() & low_mask(n);
            const XYString l(n, y);
            const MatX m = dense(l.to_pauli());
            for (std::uint64_t k = 0; k < count; ++k) {
                const auto act = apply_to_basis_state(l, k, n);
                const auto col = m.col(static_cast<Eigen::Index>(k));
                EXPECT_LT(std::abs(col(static_cast<Eigen::Index>(act.k_prime)) - act.phase.value()), 1e-14);
                EXPECT_NEAR(col.norm(), 1.0, 1e-14);
            }
        }
    }
}

TEST(SubsetProduct, EmptySubsetIsIdentity) {
    const std::vector<PauliString> g{P("XXX"), P("ZZI"), P("ZIZ")};
    EXPECT_EQ(subset_product(g, 0), P("+III"));
}

TEST(SubsetProduct, GhzThreeQubitProducts) {
    const std::vector<PauliString> g{P("XXX"), P("ZZI"), P("ZIZ")};
    EXPECT_EQ(subset_product(g, 0b011), P("-YYX"));
    EXPECT_EQ(subset_product(g, 0b111), P("-XYY"));
    EXPECT_TRUE(dense(subset_product(g, 0b111)).isApprox(dense(g[0]) * dense(g[1]) * dense(g[2]), 1e-14));
}

TEST(SubsetProduct, OrderDoesNotMatterForCommutingGenerators) {
    const std::vector<PauliString> g{P("XXX"), P("ZZI"), P("ZIZ")};
    const std::vector<PauliString> rev{g[2], g[1], g[0]};
    for (std::uint64_t s = 0; s < 8; ++s) {
        const std::uint64_t r = ((s & 1) << 2) | (s & 2) | ((s >> 2) & 1);
        EXPECT_EQ(subset_product(g, s), subset_product(rev, r));
    }
}

TEST(SubsetProduct, RejectsNonCommutingGenerators) {
    const std::vector<PauliString> g{P("XI"), P("ZI")};
    EXPECT_THROW(subset_product(g, 0b11), ModelError);
}

}  // namespace
}  // namespace strata
