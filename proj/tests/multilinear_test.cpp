#include <gtest/gtest.h>

#include <random>

#include "fairzk/multilinear.hpp"

using namespace fairzk;

namespace {

std::mt19937_64 rng(0x5eed0002);
Fp2 random_fp2() { return Fp2(Fp::from_u64(rng()), Fp::from_u64(rng())); }

BaseMle mle1234() {
    return BaseMle(2, {Fp(1), Fp(2), Fp(3), Fp(4)});
}

Fp2 e(std::uint64_t v) { return Fp2::from_base(Fp(v)); }

}  // namespace

TEST(Multilinear, BooleanLookupAndExtension) {
    auto p = mle1234();
    EXPECT_EQ(mle_evaluate(p, {e(1), e(0)}), e(3));
    EXPECT_EQ(mle_evaluate(p, {e(2), e(0)}), e(5));  // 1 + 2*(3-1)
    EXPECT_EQ(sum_over_cube(p), Fp(10));
    EXPECT_THROW(mle_evaluate(p, {e(1)}), std::invalid_argument);
}

TEST(Multilinear, EqExamples) {
    EXPECT_EQ(eq_evaluate({e(0), e(1)}, {e(0), e(1)}), Fp2::one());
    EXPECT_EQ(eq_evaluate({e(0), e(1)}, {e(1), e(1)}), Fp2::zero());
    EXPECT_EQ(eq_evaluate({e(2)}, {e(3)}), e(8));  // 2*3 + (-1)(-2)
    EXPECT_THROW(eq_evaluate({e(1)}, {e(1), e(0)}), std::invalid_argument);
}

TEST(Multilinear, FoldVariable) {
    auto p = to_ext(mle1234());
    auto f0 = fold_variable(p, Fp2::zero());
    EXPECT_EQ(f0.evals, (std::vector<Fp2>{e(1), e(2)}));
    auto f1 = fold_variable(p, Fp2::one());
    EXPECT_EQ(f1.evals, (std::vector<Fp2>{e(3), e(4)}));
    auto f2 = fold_variable(p, e(2));
    EXPECT_EQ(f2.evals, (std::vector<Fp2>{e(5), e(6)}));
    EXPECT_THROW(fold_variable(ExtMle{}, Fp2::one()), std::invalid_argument);
}

TEST(Multilinear, FoldEvalConsistency) {
    for (int k = 1; k <= 6; k++) {
        std::vector<Fp2> evals(std::size_t{1} << k);
        for (auto& v : evals) v = random_fp2();
        ExtMle p(k, evals);
        auto u = [&] {
            std::vector<Fp2> pt(k);
            for (auto& c : pt) c = random_fp2();
            return pt;
        }();
        auto folded = fold_variable(p, u[0]);
        std::vector<Fp2> rest(u.begin() + 1, u.end());
        EXPECT_EQ(mle_evaluate(p, u), mle_evaluate(folded, rest));
    }
}

TEST(Multilinear, EqTableMatchesIndicatorMle) {
    // brute-force oracle: eq_evaluate must agree with the MLE of the 2^(2k)
    // indicator table for k <= 4
    for (int k = 1; k <= 4; k++) {
        std::size_t n = std::size_t{1} << k;
        std::vector<Fp> indicator(n * n, Fp::zero());
        for (std::size_t i = 0; i < n; i++) indicator[i * n + i] = Fp::one();
        BaseMle ind(2 * k, indicator);
        std::vector<Fp2> x(k), y(k);
        for (auto& c : x) c = random_fp2();
        for (auto& c : y) c = random_fp2();
        EXPECT_EQ(eq_evaluate(x, y), mle_evaluate(ind, concat_point(x, y)));

        auto table = eq_table(x);
        for (std::size_t b = 0; b < n; b++)
            EXPECT_EQ(table.evals[b], eq_evaluate(x, boolean_point(b, k)));
    }
}

TEST(Multilinear, PartialFoldMatrixRestriction) {
    // 4x2 "matrix": rows indexed by first 2 vars, cols by last var
    std::vector<Fp> rows = {Fp(1), Fp(2), Fp(3), Fp(4), Fp(5), Fp(6), Fp(7), Fp(8)};
    BaseMle m(3, rows);
    std::vector<Fp2> r = {random_fp2(), random_fp2()};
    auto fold = partial_fold(m, r);
    EXPECT_EQ(fold.num_vars, 1);
    for (int c = 0; c < 2; c++) {
        auto pt = concat_point(r, boolean_point(c, 1));
        EXPECT_EQ(fold.evals[c], mle_evaluate(m, pt));
    }
}

TEST(Multilinear, ZeroVariablePolynomial) {
    auto c = ExtMle::constant(e(42));
    EXPECT_EQ(mle_evaluate(c, {}), e(42));
    EXPECT_EQ(eq_evaluate({}, {}), Fp2::one());
    EXPECT_EQ(eq_table({}).evals[0], Fp2::one());
}

TEST(Multilinear, SegmentDecomposition) {
    // vector = [A (4) | B (2) | pad..] of total 8; MLE at a random point must
    // equal sum of prefix-weighted segment MLEs
    std::vector<Fp> data = {Fp(9), Fp(8), Fp(7), Fp(6), Fp(5), Fp(4), Fp(0), Fp(0)};
    BaseMle whole(3, data);
    Segment a{0, 2}, b{4, 1};
    BaseMle am(2, {Fp(9), Fp(8), Fp(7), Fp(6)});
    BaseMle bm(1, {Fp(5), Fp(4)});
    std::vector<Fp2> pt = {random_fp2(), random_fp2(), random_fp2()};
    Fp2 expect = segment_prefix_weight(a, 3, pt) * mle_evaluate(am, segment_sub_point(a, pt)) +
                 segment_prefix_weight(b, 3, pt) * mle_evaluate(bm, segment_sub_point(b, pt));
    EXPECT_EQ(mle_evaluate(whole, pt), expect);
}
