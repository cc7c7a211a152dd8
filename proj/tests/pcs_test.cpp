#include <gtest/gtest.h>

#include <random>

#include "fairzk/pcs.hpp"

using namespace fairzk;

namespace {

std::mt19937_64 rng(0x5eed0004);
Fp2 random_fp2() { return Fp2(Fp::from_u64(rng()), Fp::from_u64(rng())); }

pcs::Salt test_salt(std::uint8_t b) {
    pcs::Salt s;
    s.fill(b);
    return s;
}

BaseMle random_poly(int k) {
    std::vector<Fp> e(std::size_t{1} << k);
    for (auto& v : e) v = Fp::from_u64(rng());
    return BaseMle(k, e);
}

}  // namespace

TEST(Pcs, DeterministicCommit) {
    auto p = random_poly(6);
    auto c1 = pcs::commit(p, test_salt(1));
    auto c2 = pcs::commit(p, test_salt(1));
    EXPECT_EQ(c1, c2);
    // different salt hides the content behind a different root
    EXPECT_NE(pcs::commit(p, test_salt(2)).root, c1.root);
}

TEST(Pcs, BindingSmokeTest) {
    auto p = random_poly(6);
    auto c = pcs::commit(p, test_salt(1));
    auto q = p;
    q.evals[17] += Fp::one();
    EXPECT_NE(pcs::commit(q, test_salt(1)).root, c.root);
}

TEST(Pcs, CommitShape) {
    auto p = random_poly(10);
    auto c = pcs::commit(p, test_salt(3));
    EXPECT_EQ(c.num_vars, 10);
    EXPECT_EQ(c.root.size(), 32u);
}

TEST(Pcs, OpenVerifyExamples) {
    BaseMle p(2, {Fp(1), Fp(2), Fp(3), Fp(4)});
    auto salt = test_salt(7);
    auto com = pcs::commit(p, salt);

    auto e = [](std::uint64_t v) { return Fp2::from_base(Fp(v)); };
    auto pr1 = pcs::open(p, salt, {e(1), e(0)});
    EXPECT_EQ(pr1.value, e(3));
    EXPECT_TRUE(pcs::verify(com, {e(1), e(0)}, e(3), pr1));

    auto pr2 = pcs::open(p, salt, {e(2), e(0)});
    EXPECT_EQ(pr2.value, e(5));
    EXPECT_TRUE(pcs::verify(com, {e(2), e(0)}, e(5), pr2));

    EXPECT_FALSE(pcs::verify(com, {e(2), e(0)}, e(6), pr2));
    EXPECT_THROW(pcs::open(p, salt, {e(1)}), std::invalid_argument);
}

TEST(Pcs, CompletenessAndRejection) {
    for (int trial = 0; trial < 100; trial++) {
        int k = 1 + static_cast<int>(rng() % 7);
        auto p = random_poly(k);
        auto salt = test_salt(static_cast<std::uint8_t>(trial));
        auto com = pcs::commit(p, salt);
        std::vector<Fp2> u(k);
        for (auto& c : u) c = random_fp2();
        auto proof = pcs::open(p, salt, u);
        EXPECT_TRUE(pcs::verify(com, u, proof.value, proof));
        Fp2 wrong = proof.value + Fp2::from_base(Fp(1 + rng() % 100));
        auto bad = proof;
        bad.value = wrong;
        EXPECT_FALSE(pcs::verify(com, u, wrong, bad));
    }
}

TEST(Pcs, MultiPointConsistency) {
    // several openings of one commitment come from a single evaluation vector
    auto p = random_poly(5);
    auto salt = test_salt(9);
    auto com = pcs::commit(p, salt);
    std::vector<std::vector<Fp2>> pts;
    for (int i = 0; i < 4; i++) {
        std::vector<Fp2> u(5);
        for (auto& c : u) c = random_fp2();
        pts.push_back(u);
    }
    for (const auto& u : pts) {
        auto proof = pcs::open(p, salt, u);
        ASSERT_TRUE(pcs::verify(com, u, proof.value, proof));
        EXPECT_EQ(proof.evals, p.evals);
    }
}

TEST(Pcs, SingleElementPoly) {
    BaseMle p(0, {Fp(99)});
    auto salt = test_salt(42);
    auto com = pcs::commit(p, salt);
    auto proof = pcs::open(p, salt, {});
    EXPECT_TRUE(pcs::verify(com, {}, Fp2::from_base(Fp(99)), proof));
}
