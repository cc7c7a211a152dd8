#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "fairzk/logup.hpp"

using namespace fairzk;
using boost::multiprecision::cpp_rational;

namespace {

std::mt19937_64 rng(0x5eed0005);

std::vector<std::uint8_t> test_seed() { return {1, 2, 3, 4}; }

struct ColumnTamper {
    bool active = false;
    std::size_t byte = 0;
};

// Full prove/verify round trip through a session; optionally flips one byte.
bool lookup_roundtrip(const LookupTable& table, const std::vector<std::vector<Fp>>& columns,
                      ColumnTamper tamper = {}) {
    ProofWriter out;
    std::vector<PolyId> prover_ids;
    {
        Transcript tr("lookup-test");
        ProverSession s(tr, out, test_seed());
        std::vector<LookupColumn> cols;
        for (const auto& vals : columns) {
            auto mle = std::make_shared<BaseMle>(mle_from_vector(vals, table.pad_value()));
            PolyId id = s.commit("queries", mle);
            cols.push_back({id, mle});
        }
        logup_prove(s, table, cols, "lk");
        s.finalize();
    }
    std::vector<std::uint8_t> bytes = out.bytes;
    if (tamper.active) bytes[tamper.byte % bytes.size()] ^= 0x01;
    try {
        Transcript tr("lookup-test");
        ProofReader in(bytes);
        VerifierSession s(tr, in);
        std::vector<PolyId> ids;
        std::vector<int> vars;
        for (const auto& vals : columns) {
            int k = log2_ceil(vals.empty() ? 1 : vals.size());
            ids.push_back(s.read_commit("queries", k, pcs::KIND_BASE));
            vars.push_back(k);
        }
        logup_verify(s, table, ids, vars, "lk");
        s.finalize();
        return true;
    } catch (const VerifyFailure&) {
        return false;
    } catch (const ProofFormatError&) {
        return false;
    }
}

std::vector<Fp> fps(std::initializer_list<std::uint64_t> vs) {
    std::vector<Fp> out;
    for (auto v : vs) out.push_back(Fp(v));
    return out;
}

}  // namespace

TEST(Logup, BuildMultiplicities) {
    auto t = LookupTable::from_values(fps({1, 2, 3}));
    auto m = build_multiplicities(t, fps({1, 2, 1}));
    // table padded to size 4 with pad value 1 (first entry)
    EXPECT_EQ(m[0], 2u);
    EXPECT_EQ(m[1], 1u);
    EXPECT_EQ(m[2], 0u);

    auto t16 = LookupTable::range(4);
    auto m2 = build_multiplicities(t16, {});
    for (auto c : m2) EXPECT_EQ(c, 0u);

    EXPECT_THROW(build_multiplicities(t, fps({4})), std::domain_error);
}

TEST(Logup, RationalIdentityExample) {
    // T=(1,2,3), A=(1,2,1), gamma=5: 1/6 + 1/7 + 1/6 = 2/6 + 1/7 = 10/21
    cpp_rational lhs = cpp_rational(1, 6) + cpp_rational(1, 7) + cpp_rational(1, 6);
    cpp_rational rhs = cpp_rational(2, 6) + cpp_rational(1, 7);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(lhs, cpp_rational(10, 21));
}

TEST(Logup, HonestInstanceAccepts) {
    auto t = LookupTable::from_values(fps({1, 2, 3}));
    EXPECT_TRUE(lookup_roundtrip(t, {fps({1, 2, 1})}));
}

TEST(Logup, TableAsQueriesAccepts) {
    auto t = LookupTable::from_values(fps({5, 6, 7, 8}));
    EXPECT_TRUE(lookup_roundtrip(t, {fps({5, 6, 7, 8})}));
}

TEST(Logup, RangeTableAccepts) {
    auto t = LookupTable::range(8);
    std::vector<Fp> q;
    for (int i = 0; i < 100; i++) q.push_back(Fp(rng() % 256));
    EXPECT_TRUE(lookup_roundtrip(t, {q}));
}

TEST(Logup, MultiColumnAccepts) {
    auto t = LookupTable::range(6);
    std::vector<Fp> a, b;
    for (int i = 0; i < 32; i++) a.push_back(Fp(rng() % 64));
    for (int i = 0; i < 7; i++) b.push_back(Fp(rng() % 64));
    EXPECT_TRUE(lookup_roundtrip(t, {a, b}));
}

TEST(Logup, AbsentQueryAborts) {
    auto t = LookupTable::from_values(fps({1, 2, 3}));
    ProofWriter out;
    Transcript tr("lookup-test");
    ProverSession s(tr, out, test_seed());
    auto mle = std::make_shared<BaseMle>(mle_from_vector(fps({4, 1}), t.pad_value()));
    PolyId id = s.commit("queries", mle);
    EXPECT_THROW(logup_prove(s, t, {{id, mle}}, "lk"), std::domain_error);
}

TEST(Logup, TamperedMultiplicityRejected) {
    // prover lies about multiplicities: rational sums differ at a random gamma
    // with overwhelming probability. We force m=(1,2,0) for A=(1,2,1).
    auto table = LookupTable::from_values(fps({1, 2, 3}));
    ProofWriter out;
    {
        Transcript tr("lookup-test");
        ProverSession s(tr, out, test_seed());
        auto mle = std::make_shared<BaseMle>(mle_from_vector(fps({1, 2, 1}), table.pad_value()));
        PolyId id = s.commit("queries", mle);

        // hand-rolled dishonest prover: honest protocol with forged m
        auto m = std::make_shared<BaseMle>(2, std::vector<Fp>{Fp(1), Fp(2), Fp(0), Fp(0)});
        s.commit("lk/m", m);
        s.writer().u64(0);
        Fp2 gamma = tr.challenge_fp2("lk/gamma");
        tr.absorb_u64("lk/gamma-retries", 0);

        std::vector<Fp2> denom;
        for (const auto& a : mle->evals) denom.push_back(gamma + Fp2::from_base(a));
        batch_inverse(denom);
        auto h0 = std::make_shared<ExtMle>(2, denom);
        s.commit("lk/h0", h0);
        std::vector<Fp2> tden;
        for (std::size_t i = 0; i < table.size(); i++)
            tden.push_back(gamma + Fp2::from_base(table.entry(i)));
        batch_inverse(tden);
        for (std::size_t i = 0; i < table.size(); i++) tden[i] *= m->evals[i];
        auto h1 = std::make_shared<ExtMle>(2, tden);
        s.commit("lk/h1", h1);
        // column side is honest
        Fp2 s0 = sum_over_cube(*h0);
        s.send("lk/s0", s0);
        auto rx = tr.challenge_fp2_vec("lk/rx", 2);
        auto eq = std::make_shared<ExtMle>(eq_table(rx));
        auto ag = std::make_shared<ExtMle>(to_ext(*mle));
        for (auto& v : ag->evals) v += gamma;
        SumcheckClaim c1;
        c1.num_vars = 2;
        c1.claimed_sum = Fp2::zero();
        c1.terms.push_back({Fp2::one(), {eq, h0, ag}});
        c1.terms.push_back({-Fp2::one(), {eq}});
        auto r1 = s.sumcheck(c1, "lk/wf");
        s.claim(1, r1.point);
        s.claim(0, r1.point);
        auto r3 = s.sumcheck(product_claim(s0, {h0}), "lk/sum");
        s.claim(1, r3.point);
        // table side consistent with forged m
        auto rt = tr.challenge_fp2_vec("lk/rt", 2);
        auto eqt = std::make_shared<ExtMle>(eq_table(rt));
        auto tg = std::make_shared<ExtMle>(2, std::vector<Fp2>(4, Fp2::zero()));
        for (std::size_t i = 0; i < 4; i++) tg->evals[i] = gamma + Fp2::from_base(table.entry(i));
        auto mx = std::make_shared<ExtMle>(to_ext(*m));
        SumcheckClaim c2;
        c2.num_vars = 2;
        c2.claimed_sum = Fp2::zero();
        c2.terms.push_back({Fp2::one(), {eqt, h1, tg}});
        c2.terms.push_back({-Fp2::one(), {eqt, mx}});
        auto r2 = s.sumcheck(c2, "lk/wt");
        s.claim(3, r2.point);
        s.claim(2, r2.point);
        Fp2 s1 = sum_over_cube(*h1);
        auto r4 = s.sumcheck(product_claim(s1, {h1}), "lk/tsum");
        s.claim(3, r4.point);
        s.finalize();
    }
    Transcript tr("lookup-test");
    ProofReader in(out.bytes);
    VerifierSession s(tr, in);
    PolyId id = s.read_commit("queries", 2, pcs::KIND_BASE);
    bool accepted = true;
    try {
        logup_verify(s, table, {id}, {2}, "lk");
        s.finalize();
    } catch (const VerifyFailure&) {
        accepted = false;
    } catch (const ProofFormatError&) {
        accepted = false;
    }
    EXPECT_FALSE(accepted);
}

TEST(Logup, CorruptionRejected) {
    auto t = LookupTable::range(6);
    std::vector<Fp> q;
    for (int i = 0; i < 16; i++) q.push_back(Fp(rng() % 64));
    for (int trial = 0; trial < 20; trial++) {
        ColumnTamper tam;
        tam.active = true;
        tam.byte = rng();
        EXPECT_FALSE(lookup_roundtrip(t, {q}, tam)) << "trial " << trial;
    }
}

TEST(Logup, RationalIdentityOracleProperty) {
    // 100 random (T, A) with n, N <= 64: exact-rational LHS == RHS when
    // A is drawn from T; forged A (one element outside T) breaks the identity
    // for >= 99/100 random gammas.
    std::uniform_int_distribution<std::uint64_t> val(1, 1000);
    for (int trial = 0; trial < 100; trial++) {
        std::size_t N = 1 + rng() % 64, n = 1 + rng() % 64;
        std::vector<std::uint64_t> T;
        for (std::size_t i = 0; i < N; i++) T.push_back(val(rng));
        std::sort(T.begin(), T.end());
        T.erase(std::unique(T.begin(), T.end()), T.end());
        std::vector<std::uint64_t> A;
        for (std::size_t i = 0; i < n; i++) A.push_back(T[rng() % T.size()]);
        std::vector<std::uint64_t> m(T.size(), 0);
        for (auto a : A)
            m[std::lower_bound(T.begin(), T.end(), a) - T.begin()]++;

        std::uint64_t gamma = 2000 + rng() % 100000;
        cpp_rational lhs = 0, rhs = 0;
        for (auto a : A) lhs += cpp_rational(1, gamma + a);
        for (std::size_t j = 0; j < T.size(); j++) rhs += cpp_rational(m[j], gamma + T[j]);
        EXPECT_EQ(lhs, rhs) << "trial " << trial;

        // A not contained in T: identity must fail for random gamma
        std::vector<std::uint64_t> bad = A;
        bad[rng() % bad.size()] = 1001 + val(rng);  // outside table range
        int breaks = 0;
        for (int g = 0; g < 100; g++) {
            std::uint64_t gm = 2000 + rng() % 1000000;
            cpp_rational l = 0;
            for (auto a : bad) l += cpp_rational(1, gm + a);
            // best forged multiplicities cannot help: compare against any
            // m' over T means l must be representable with denominators in T;
            // here we test against the honest-m right-hand side
            cpp_rational r = 0;
            for (std::size_t j = 0; j < T.size(); j++) r += cpp_rational(m[j], gm + T[j]);
            if (l != r) breaks++;
        }
        EXPECT_GE(breaks, 99) << "trial " << trial;
    }
}
