#include "support.hpp"

#include <gtest/gtest.h>

using namespace blockeq;
using blockeq::testing::col;
using blockeq::testing::M;
using blockeq::testing::Rng;
using blockeq::testing::single_block;

namespace {

const SearchBudget kDefault{};

void expect_witness(const Verdict& v, const BlockedMatrix& A, const BlockedMatrix& B, Group g, Side side) {
    ASSERT_EQ(v.status, Status::Yes);
    const IntMatrix* U = v.witness_matrix("U");
    const IntMatrix* V = v.witness_matrix("V");
    ASSERT_TRUE(U && V);
    const IntMatrix Vs = side == Side::UAV ? *V : inverse_unimodular(*V);
    EXPECT_EQ(*U * A.matrix() * Vs, B.matrix());
    const Group left = g == Group::UnitRestricted ? Group::GL : g;
    EXPECT_TRUE(group_membership(*U, A.shape().left_shape(), left));
    EXPECT_TRUE(group_membership(*V, A.shape().right_shape(), g));
}

}  // namespace

TEST(Profile, Identity) {
    const auto sh = BlockShape::square(Poset::chain(2), {1, 2});
    const auto p = invariant_profile(BlockedMatrix::identity(sh), Group::SL);
    for (const auto& e : p.entries) {
        if (e.name.starts_with("det")) EXPECT_EQ(e.value, "1") << e.name;
        else EXPECT_EQ(e.value, "0") << e.name;
    }
    EXPECT_EQ(p.entries.front().name, "cokernel");
}

TEST(Profile, SingleBlocksDiffer) {
    const auto a = invariant_profile(single_block(M({{2}})), Group::SL);
    const auto b = invariant_profile(single_block(M({{3}})), Group::SL);
    const auto cert = a.first_difference(b);
    ASSERT_TRUE(cert.has_value());
    EXPECT_EQ(cert->name, "cokernel");
    EXPECT_EQ(cert->left, "Z/2");
    EXPECT_EQ(cert->right, "Z/3");
}

TEST(Profile, SignOnlyRecordedForSL) {
    const auto a = single_block(M({{1, 0}, {0, -3}}));
    const auto b = single_block(M({{1, 0}, {0, 3}}));
    EXPECT_TRUE(invariant_profile(a, Group::GL) == invariant_profile(b, Group::GL));
    const auto cert = invariant_profile(a, Group::SL).first_difference(invariant_profile(b, Group::SL));
    ASSERT_TRUE(cert.has_value());
    EXPECT_EQ(cert->name, "det(block 1)");
}

TEST(Profile, InvariantUnderGroupAction) {
    Rng rng(31);
    for (int k = 0; k < 60; ++k) {
        const auto sh = rng.square_shape(3, 0, 2);
        const auto A = rng.blocked(sh, -3, 3);
        for (Group g : {Group::SL, Group::GL}) {
            const BlockedMatrix B(sh, rng.word(sh, g, 6) * A.matrix() * rng.word(sh, g, 6));
            EXPECT_TRUE(invariant_profile(A, g) == invariant_profile(B, g));
        }
    }
}

TEST(Decide, SameMatrixIsIdentityWitness) {
    const auto A = single_block(M({{2, 1}, {0, 3}}));
    const auto v = decide_blocked_equivalence(A, A, Group::SL, Side::UAV, kDefault);
    ASSERT_EQ(v.status, Status::Yes);
    EXPECT_EQ(*v.witness_matrix("U"), IntMatrix::identity(2));
    EXPECT_EQ(*v.witness_matrix("V"), IntMatrix::identity(2));
}

TEST(Decide, TrivialSL1GroupRefutes) {
    const auto v = decide_blocked_equivalence(single_block(M({{2}})), single_block(M({{3}})), Group::SL, Side::UAV,
                                              SearchBudget{1, 1'000'000, 0});
    ASSERT_EQ(v.status, Status::No);
    EXPECT_EQ(*v.certificate, (Certificate{"cokernel", "Z/2", "Z/3"}));
}

TEST(Decide, SignFlipUnderGL) {
    const auto A = single_block(M({{1}})), B = single_block(M({{-1}}));
    const auto v = decide_blocked_equivalence(A, B, Group::GL, Side::UAV, kDefault);
    expect_witness(v, A, B, Group::GL, Side::UAV);
    EXPECT_EQ(*v.witness_matrix("U"), M({{-1}}));
    EXPECT_EQ(*v.witness_matrix("V"), M({{1}}));
    // Under SL the same pair is refuted by the signed determinant.
    EXPECT_EQ(decide_blocked_equivalence(A, B, Group::SL, Side::UAV, kDefault).status, Status::No);
}

TEST(Decide, ChainExample) {
    const auto sh = BlockShape::square(Poset::chain(2), {1, 1});
    const BlockedMatrix A(sh, M({{2, 1}, {0, 3}})), B(sh, M({{2, 0}, {0, 3}}));
    for (Side side : {Side::UAV, Side::UAVinv}) {
        const auto v = decide_blocked_equivalence(A, B, Group::SL, side, kDefault);
        expect_witness(v, A, B, Group::SL, side);
    }
}

TEST(Decide, UnitRestrictedKeepsOneByOneBlocks) {
    const auto sh = BlockShape::square(Poset::chain(2), {1, 1});
    const BlockedMatrix A(sh, M({{1, 0}, {0, 1}})), B(sh, M({{1, 0}, {0, -1}}));
    const auto v = decide_blocked_equivalence(A, B, Group::UnitRestricted, Side::UAV, kDefault);
    expect_witness(v, A, B, Group::UnitRestricted, Side::UAV);
    EXPECT_EQ(*v.witness_matrix("V"), IntMatrix::identity(2));
}

TEST(Decide, ShapeMismatchThrows) {
    const auto A = single_block(M({{1}}));
    const auto B = single_block(M({{1, 0}, {0, 1}}));
    EXPECT_THROW(decide_blocked_equivalence(A, B, Group::GL, Side::UAV, kDefault), std::invalid_argument);
}

TEST(Decide, UnknownWhenBudgetTooSmall) {
    const auto A = single_block(M({{1, 0}, {0, 1}}));
    const auto B = single_block(M({{5, 7}, {2, 3}}));
    const auto v = decide_blocked_equivalence(A, B, Group::SL, Side::UAV, SearchBudget{1, 10, 0});
    EXPECT_EQ(v.status, Status::Unknown);
    EXPECT_FALSE(v.certificate.has_value());
    EXPECT_TRUE(v.witness.empty());
}

TEST(Decide, SoundnessOnScrambledPairs) {
    Rng rng(32);
    for (int k = 0; k < 25; ++k) {
        const auto sh = rng.square_shape(2, 1, 2);
        const auto A = rng.blocked(sh, -3, 3);
        const BlockedMatrix B(sh, rng.word(sh, Group::SL, 2) * A.matrix() * rng.word(sh, Group::SL, 2));
        const auto v = decide_blocked_equivalence(A, B, Group::SL, Side::UAV, kDefault);
        expect_witness(v, A, B, Group::SL, Side::UAV);
    }
}

TEST(Decide, NoCertificatesAreGroupInvariants) {
    Rng rng(33);
    int refuted = 0;
    for (int k = 0; k < 40; ++k) {
        const auto sh = rng.square_shape(2, 1, 2);
        const auto A = rng.blocked(sh, -3, 3), B = rng.blocked(sh, -3, 3);
        const auto v = decide_blocked_equivalence(A, B, Group::SL, Side::UAV, SearchBudget{2, 20'000, 0});
        if (v.status != Status::No) continue;
        ++refuted;
        const auto& name = v.certificate->name;
        const auto find = [&](const InvariantProfile& p) {
            for (const auto& e : p.entries)
                if (e.name == name) return e.value;
            return std::string("<missing>");
        };
        for (int s = 0; s < 50; ++s) {
            const BlockedMatrix C(sh, rng.word(sh, Group::SL, 4) * A.matrix() * rng.word(sh, Group::SL, 4));
            EXPECT_EQ(find(invariant_profile(C, Group::SL)), v.certificate->left);
        }
    }
    EXPECT_GT(refuted, 0);
}

TEST(Decide, Deterministic) {
    const auto sh = BlockShape::square(Poset::chain(2), {2, 1});
    Rng rng(34);
    const auto A = rng.blocked(sh, -2, 2);
    const BlockedMatrix B(sh, rng.word(sh, Group::SL, 3) * A.matrix() * rng.word(sh, Group::SL, 3));
    const auto a = decide_blocked_equivalence(A, B, Group::SL, Side::UAV, kDefault);
    const auto b = decide_blocked_equivalence(A, B, Group::SL, Side::UAV, kDefault);
    EXPECT_TRUE(a == b);
}

TEST(Unit, Examples) {
    const auto one = single_block(M({{1}}));
    EXPECT_EQ(decide_with_unit(one, one, col({0}), col({0}), Group::GL, kDefault).status, Status::Yes);

    const auto zero = single_block(M({{0}}));
    const auto no = decide_with_unit(zero, zero, col({1}), col({2}), Group::GL, kDefault);
    ASSERT_EQ(no.status, Status::No);
    EXPECT_EQ(no.certificate->name, "finite-group-enumeration");
    EXPECT_TRUE(no.budget.exhausted);

    const auto two = single_block(M({{2}}));
    const auto yes = decide_with_unit(two, two, col({1}), col({3}), Group::GL, kDefault);
    ASSERT_EQ(yes.status, Status::Yes);
    EXPECT_EQ(*yes.witness_matrix("V"), M({{1}}));
}

TEST(Unit, WitnessSatisfiesBothConditions) {
    Rng rng(35);
    int found = 0;
    for (int k = 0; k < 30; ++k) {
        const auto sh = rng.square_shape(2, 1, 2);
        const auto A = rng.blocked(sh, -2, 2);
        const IntMatrix U = rng.word(sh, Group::SL, 2), W = rng.word(sh, Group::SL, 2);
        const BlockedMatrix B(sh, U * A.matrix() * W);
        const IntMatrix x = rng.matrix(sh.total_cols(), 1, -3, 3);
        // y chosen so that (2) holds for the constructed pair (W = V^{-1}).
        const IntMatrix y = W.transpose() * x - B.matrix().transpose() * rng.matrix(sh.total_rows(), 1, -1, 1);
        const auto v = decide_with_unit(A, B, x, y, Group::SL, kDefault);
        if (v.status != Status::Yes) continue;
        ++found;
        const IntMatrix Vinv = inverse_unimodular(*v.witness_matrix("V"));
        EXPECT_EQ(*v.witness_matrix("U") * A.matrix() * Vinv, B.matrix());
        EXPECT_TRUE(solve_integer(B.matrix().transpose(), Vinv.transpose() * x - y).has_value());
    }
    EXPECT_GE(found, 25);
}

TEST(Unit, DimensionMismatchThrows) {
    const auto one = single_block(M({{1}}));
    EXPECT_THROW(decide_with_unit(one, one, col({0, 0}), col({0}), Group::GL, kDefault), std::invalid_argument);
}

TEST(Gadget, PackExamples) {
    EXPECT_EQ(gadget_pack(M({{1}}), {Integer(2)}).matrix(), M({{1, -2}, {0, 1}}));
    EXPECT_EQ(gadget_pack(IntMatrix::identity(2), {Integer(0), Integer(0)}).matrix(), IntMatrix::identity(6));
    EXPECT_EQ(gadget_pack(M({{-1}}), {Integer(0), Integer(1)}).matrix(), M({{-1, 0, -1}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_THROW(gadget_pack(M({{2}}), {Integer(1)}), std::domain_error);
}

TEST(Gadget, UnpackInvertsPack) {
    Rng rng(36);
    for (int k = 0; k < 50; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
        const auto m = static_cast<std::size_t>(rng.uniform(0, 3));
        const IntMatrix V = rng.unimodular(n, 6);
        std::vector<Integer> r;
        for (std::size_t j = 0; j < m; ++j) r.emplace_back(rng.uniform(-5, 5));
        const auto [V2, r2] = gadget_unpack(gadget_pack(V, r));
        EXPECT_EQ(V2, V);
        EXPECT_EQ(r2, r);
    }
}

TEST(Gadget, RejectsBadLowerRows) {
    IntMatrix K = IntMatrix::identity(2);
    K(1, 0) = 1;
    EXPECT_THROW(Gadget(K, 1, 1), std::invalid_argument);
}

TEST(Gadget, ProductBlockFormula) {
    Rng rng(37);
    for (int k = 0; k < 50; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
        const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
        auto random_gadget = [&] {
            IntMatrix K = IntMatrix::identity(n * (m + 1));
            K.set_block(0, 0, rng.unimodular(n, 5));
            for (std::size_t j = 1; j <= m; ++j) K.set_block(0, j * n, rng.matrix(n, n, -3, 3));
            return Gadget(K, n, m);
        };
        const Gadget K = random_gadget(), L = random_gadget();
        const Gadget KL(K.matrix() * L.matrix(), n, m);
        for (std::size_t j = 1; j <= m; ++j) EXPECT_EQ(KL.k0j(j), K.k00() * L.k0j(j) + K.k0j(j));
        EXPECT_EQ(KL.k00(), K.k00() * L.k00());
    }
}

TEST(Endomorphism, Examples) {
    EXPECT_TRUE(is_image_endomorphism(IntMatrix::identity(2), M({{1}, {2}})));
    EXPECT_FALSE(is_image_endomorphism(M({{0, 0}, {1, 0}}), M({{1}, {0}})));
    EXPECT_TRUE(is_image_endomorphism(M({{3, 1}, {-2, 7}}), IntMatrix::identity(2)));
    EXPECT_THROW(is_image_endomorphism(IntMatrix::identity(3), M({{1}, {0}})), std::invalid_argument);
}

TEST(Stabilizer, Examples) {
    const IntMatrix A = M({{0, 1}, {0, 0}});
    EXPECT_TRUE(stabilizer_transport_check(A, IntMatrix::identity(2), IntMatrix::identity(2)));
    EXPECT_TRUE(stabilizer_transport_check(M({{2}}), M({{-1}}), M({{-1}})));
    EXPECT_TRUE(stabilizer_transport_check(M({{3, 1}}), IntMatrix::identity(1), IntMatrix::identity(2)));
    EXPECT_THROW(stabilizer_transport_check(M({{2}}), M({{-1}}), M({{1}})), std::invalid_argument);
}
