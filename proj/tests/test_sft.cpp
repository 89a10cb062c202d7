#include "support.hpp"

#include <gtest/gtest.h>

using namespace blockeq;
using blockeq::testing::M;
using blockeq::testing::Rng;

namespace {

const IntMatrix kFib = M({{1, 1}, {1, 0}});

// Random irreducible nonnegative matrix: a cycle through all vertices plus noise.
IntMatrix random_irreducible(Rng& rng, std::size_t n) {
    IntMatrix A = rng.matrix(n, n, 0, 1);
    for (std::size_t i = 0; i < n; ++i) A((i + 1) % n, i) += 1;
    return A;
}

}  // namespace

TEST(Invariants, BowenFranksExamples) {
    EXPECT_TRUE(bowen_franks(M({{2}})).is_trivial());
    EXPECT_TRUE(bowen_franks(kFib).is_trivial());
    EXPECT_EQ(bowen_franks(M({{3}})).to_string(), "Z/2");
}

TEST(Invariants, ParrySullivanExamples) {
    EXPECT_EQ(parry_sullivan(M({{1}})), 0);
    EXPECT_EQ(parry_sullivan(M({{2}})), -1);
    EXPECT_EQ(parry_sullivan(kFib), -1);
}

TEST(Invariants, RejectNegativeOrNonSquare) {
    EXPECT_THROW(parry_sullivan(M({{-1}})), std::invalid_argument);
    EXPECT_THROW(bowen_franks(M({{1, 1}})), std::invalid_argument);
}

TEST(Invariants, FlowInvariantConsistency) {
    Rng rng(41);
    for (int k = 0; k < 200; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto f = flow_invariant(rng.matrix(n, n, 0, 2));
        EXPECT_EQ(f.parry_sullivan == 0, f.bowen_franks.free_rank > 0);
        if (f.bowen_franks.free_rank == 0) {
            EXPECT_EQ(abs(f.parry_sullivan), *f.bowen_franks.order());
        }
    }
}

TEST(Irreducible, Examples) {
    EXPECT_TRUE(is_irreducible(kFib));
    EXPECT_FALSE(is_irreducible(M({{1, 1}, {0, 1}})));
    EXPECT_TRUE(is_irreducible(M({{1}})));
    EXPECT_FALSE(is_irreducible(M({{0}})));
}

TEST(Franks, Examples) {
    EXPECT_TRUE(decide_flow_equivalence_irreducible(kFib, kFib));
    EXPECT_TRUE(decide_flow_equivalence_irreducible(M({{2}}), kFib));
    EXPECT_FALSE(decide_flow_equivalence_irreducible(M({{2}}), M({{3}})));
    EXPECT_THROW(decide_flow_equivalence_irreducible(M({{1, 1}, {0, 1}}), kFib), std::invalid_argument);
}

TEST(Franks, SingleCycleCarveOut) {
    const IntMatrix cyc2 = M({{0, 1}, {1, 0}});
    EXPECT_TRUE(is_single_cycle(cyc2));
    EXPECT_TRUE(decide_flow_equivalence_irreducible(cyc2, M({{1}})));
    // Same invariants as [1] (BF = Z, PS = 0) but not a cycle.
    const IntMatrix A = M({{2, 1}, {1, 2}});
    EXPECT_TRUE(flow_invariant(A).bowen_franks == flow_invariant(M({{1}})).bowen_franks);
    EXPECT_EQ(parry_sullivan(A), 0);
    EXPECT_FALSE(decide_flow_equivalence_irreducible(M({{1}}), A));
}

TEST(Franks, EquivalenceRelationOnSamples) {
    Rng rng(42);
    std::vector<IntMatrix> pool;
    for (int k = 0; k < 25; ++k) pool.push_back(random_irreducible(rng, static_cast<std::size_t>(rng.uniform(1, 3))));
    for (const auto& a : pool) {
        EXPECT_TRUE(decide_flow_equivalence_irreducible(a, a));
        for (const auto& b : pool) {
            const bool ab = decide_flow_equivalence_irreducible(a, b);
            EXPECT_EQ(ab, decide_flow_equivalence_irreducible(b, a));
            if (!ab) continue;
            for (const auto& c : pool)
                if (decide_flow_equivalence_irreducible(b, c)) {
                    EXPECT_TRUE(decide_flow_equivalence_irreducible(a, c));
                }
        }
    }
}

TEST(Condense, Examples) {
    const auto irr = condense(kFib);
    EXPECT_EQ(irr.sizes, (std::vector<std::size_t>{2}));
    EXPECT_EQ(irr.B.matrix(), identity_minus(kFib));

    const auto chain = condense(M({{1, 1}, {0, 1}}));
    EXPECT_TRUE(chain.poset == Poset::chain(2));
    EXPECT_EQ(chain.sizes, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(chain.B.matrix(), M({{0, -1}, {0, 0}}));

    const auto zero = condense(IntMatrix(2, 2));
    EXPECT_TRUE(zero.poset == Poset::antichain(2));
    EXPECT_EQ(zero.B.matrix(), IntMatrix::identity(2));
    EXPECT_EQ(zero.trivial_flags, (std::vector<char>{1, 1}));
}

TEST(Condense, ReassemblesAndIsNormalized) {
    Rng rng(43);
    for (int k = 0; k < 100; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
        IntMatrix A = rng.matrix(n, n, 0, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng.uniform(0, 2) == 0) A(i, j) = 0;
        const auto c = condense(A);
        EXPECT_TRUE(c.poset.is_normalized());
        EXPECT_TRUE(validate_membership(c.B.matrix(), c.B.shape()));
        EXPECT_EQ(c.B.matrix() + A.select(c.order, c.order), IntMatrix::identity(n));
    }
}

TEST(Stabilization, Examples) {
    EXPECT_EQ(stabilization_target({1, 1}, {1, 1}), (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(stabilization_target({2, 3}, {4, 2}), (std::vector<std::size_t>{6, 5}));
    EXPECT_THROW(stabilization_target({1, 2}, {2, 2}), std::invalid_argument);
    EXPECT_THROW(stabilization_target({1}, {1, 1}), std::invalid_argument);
}

TEST(FlowEq, Examples) {
    const SearchBudget b{};
    const IntMatrix red = M({{1, 1}, {0, 1}});
    EXPECT_EQ(decide_flow_equivalence(red, red, b).status, Status::Yes);
    const auto v = decide_flow_equivalence(red, IntMatrix::identity(2), b);
    ASSERT_EQ(v.status, Status::No);
    EXPECT_EQ(v.certificate->name, "component-poset");
    EXPECT_EQ(decide_flow_equivalence(M({{2}}), kFib, b).status, Status::Yes);
    const auto pv = decide_flow_equivalence(M({{2}}), M({{3}}), b);
    ASSERT_EQ(pv.status, Status::No);
    EXPECT_EQ(*pv.certificate, (Certificate{"parry-sullivan", "-1", "-2"}));
}

TEST(FlowEq, ComponentMismatches) {
    const SearchBudget b{};
    const auto count = decide_flow_equivalence(M({{2, 1, 0}, {0, 1, 1}, {0, 1, 0}}), M({{2}}), b);
    ASSERT_EQ(count.status, Status::No);
    EXPECT_EQ(count.certificate->name, "component-count");
    // Same poset, components Z/2 vs trivial Bowen-Franks group.
    const auto inv = decide_flow_equivalence(M({{3, 1}, {0, 2}}), M({{2, 1}, {0, 2}}), b);
    ASSERT_EQ(inv.status, Status::No);
    EXPECT_EQ(inv.certificate->name, "component-invariants");
}

TEST(FlowEq, ReducibleWithFlowEquivalentComponents) {
    // [2] -> fib versus fib -> [2]: same component classes on a chain.
    const auto v = decide_flow_equivalence(M({{2, 1, 0}, {0, 1, 1}, {0, 1, 0}}), M({{1, 1, 1}, {1, 0, 0}, {0, 0, 2}}),
                                           SearchBudget{});
    ASSERT_EQ(v.status, Status::Yes);
    const IntMatrix* U = v.witness_matrix("U");
    ASSERT_TRUE(U);
}

TEST(FlowEq, EssentialCoreDropsTransients) {
    // A source vertex feeding a loop is flow equivalent to the loop alone.
    const IntMatrix A = M({{0, 1}, {0, 2}});
    EXPECT_EQ(essential_core(A), M({{2}}));
    EXPECT_EQ(decide_flow_equivalence(A, M({{2}}), SearchBudget{}).status, Status::Yes);
}

TEST(FlowEq, ContractionOfLooplessVertices) {
    // Splitting an edge of [2] through a new vertex keeps the flow class.
    const IntMatrix split = M({{1, 1}, {1, 0}});
    EXPECT_EQ(flow_core(split).rows(), 1u);
    EXPECT_EQ(decide_flow_equivalence(split, M({{2}}), SearchBudget{}).status, Status::Yes);
}

TEST(FlowEq, NeverNoOnScrambledStabilizedForms) {
    // Upper triangular A with loops of weight 2..3 on the diagonal: every
    // vertex is its own nontrivial component. Scramble I - A with at most four
    // SL moves and keep the results that are again I - A' for a nonnegative A'
    // with the same component order.
    Rng rng(44);
    int checked = 0, yes = 0;
    for (int k = 0; k < 2000 && checked < 20; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(2, 3));
        IntMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            A(i, i) = rng.uniform(2, 3);
            for (std::size_t j = i + 1; j < n; ++j) A(i, j) = rng.uniform(0, 2);
        }
        const auto c = condense(A);
        const auto& sh = c.B.shape();
        const IntMatrix B2 = rng.word(sh, Group::SL, 2) * c.B.matrix() * rng.word(sh, Group::SL, 2);
        const IntMatrix A2 = IntMatrix::identity(n) - B2;
        if (std::any_of(A2.entries().begin(), A2.entries().end(), [](const Integer& x) { return x < 0; })) continue;
        const auto c2 = condense(A2);
        if (!(c2.poset == c.poset) || c2.order != c.order) continue;
        ++checked;
        const auto v = decide_flow_equivalence(A, A2, SearchBudget{});
        EXPECT_NE(v.status, Status::No) << A << "\n" << A2;
        yes += v.status == Status::Yes;
    }
    EXPECT_GE(checked, 10);
    EXPECT_GT(yes, 0);
}
