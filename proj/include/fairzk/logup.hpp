#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "fairzk/proofsys.hpp"

namespace fairzk {

/// Public lookup table. Range tables (0,1,...,2^w - 1) are the common case
/// and admit O(w) MLE evaluation; general tables are evaluated densely.
struct LookupTable {
    std::vector<Fp> entries;  // padded to a power of two
    int num_vars = 0;
    bool is_range = false;

    static LookupTable range(unsigned bits) {
        LookupTable t;
        t.num_vars = static_cast<int>(bits);
        t.is_range = true;
        // entries materialized lazily by the prover only
        return t;
    }

    static LookupTable from_values(std::vector<Fp> vals) {
        if (vals.empty()) throw std::invalid_argument("LookupTable: empty table");
        LookupTable t;
        Fp pad = vals[0];
        t.num_vars = log2_ceil(vals.size());
        vals.resize(std::size_t{1} << t.num_vars, pad);
        t.entries = std::move(vals);
        return t;
    }

    std::size_t size() const { return std::size_t{1} << num_vars; }

    Fp entry(std::size_t i) const {
        if (is_range) return Fp(i);
        return entries[i];
    }

    Fp pad_value() const { return entry(0); }

    /// MLE of the table at an arbitrary point. For the range table t_i = i the
    /// closed form is sum_j 2^(w-1-j) u_j (MSB-first index order).
    Fp2 mle_at(const std::vector<Fp2>& point) const {
        if (static_cast<int>(point.size()) != num_vars)
            throw std::invalid_argument("LookupTable::mle_at: dimension mismatch");
        if (is_range) {
            Fp2 acc = Fp2::zero();
            for (int j = 0; j < num_vars; j++)
                acc += Fp::two_pow(num_vars - 1 - j) * point[j];
            return acc;
        }
        return mle_evaluate(BaseMle(num_vars, entries), point);
    }

    bool contains_index_of(const Fp& v, std::size_t& idx) const {
        if (is_range) {
            std::uint64_t val = v.value();
            if (val >= size()) return false;
            idx = val;
            return true;
        }
        for (std::size_t i = 0; i < entries.size(); i++)
            if (entries[i] == v) {
                idx = i;
                return true;
            }
        return false;
    }
};

/// Exact occurrence counts of each table entry in the query vector; errors if
/// any query is absent from the table (the honest prover aborts here).
inline std::vector<std::uint64_t> build_multiplicities(const LookupTable& table,
                                                       const std::vector<Fp>& queries) {
    std::vector<std::uint64_t> m(table.size(), 0);
    if (table.is_range) {
        for (const auto& a : queries) {
            std::uint64_t v = a.value();
            if (v >= table.size()) throw std::domain_error("lookup: query element not in table");
            m[v]++;
        }
        return m;
    }
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = table.entries.size(); i-- > 0;) index[table.entries[i].value()] = i;
    for (const auto& a : queries) {
        auto it = index.find(a.value());
        if (it == index.end()) throw std::domain_error("lookup: query element not in table");
        m[it->second]++;
    }
    return m;
}

struct LookupColumn {
    PolyId id;                        // already committed in the session
    std::shared_ptr<BaseMle> values;  // prover side only
};

namespace logup_detail {

inline bool gamma_collides(const Fp2& gamma, const LookupTable& table,
                           const std::vector<LookupColumn>& cols) {
    auto hits = [&](const Fp& v) { return (gamma + Fp2::from_base(v)).is_zero(); };
    for (std::size_t i = 0; i < table.size(); i++)
        if (hits(table.entry(i))) return true;
    for (const auto& c : cols)
        for (const auto& v : c.values->evals)
            if (hits(v)) return true;
    return false;
}

}  // namespace logup_detail

/// Proves that every entry of every column lies in the table, via the
/// rational identity sum 1/(gamma + A(x)) = sum m(x)/(gamma + T(x)).
/// Helper columns h0, h1 are built with batch inversion. Columns must be
/// committed in the session before calling (gamma is drawn after A, T, m are
/// absorbed).
inline void logup_prove(ProverSession& s, const LookupTable& table,
                        const std::vector<LookupColumn>& cols, const std::string& label) {
    Transcript& tr = s.transcript();

    std::vector<Fp> all_queries;
    for (const auto& c : cols)
        all_queries.insert(all_queries.end(), c.values->evals.begin(), c.values->evals.end());
    auto counts = build_multiplicities(table, all_queries);
    auto m = std::make_shared<BaseMle>(table.num_vars,
                                       std::vector<Fp>(table.size(), Fp::zero()));
    for (std::size_t i = 0; i < counts.size(); i++) m->evals[i] = Fp::from_u64(counts[i]);
    PolyId m_id = s.commit(label + "/m", m);

    // re-derive gamma past any collision with -a_i or -t_j; the retry count
    // is a prover message so the verifier replays the same draw sequence, and
    // it is absorbed after the draws so later challenges bind it
    std::uint64_t retries = 0;
    {
        Transcript probe = tr;
        while (logup_detail::gamma_collides(probe.challenge_fp2(label + "/gamma"), table, cols))
            retries++;
    }
    s.writer().u64(retries);
    Fp2 gamma;
    for (std::uint64_t i = 0; i <= retries; i++) gamma = tr.challenge_fp2(label + "/gamma");
    tr.absorb_u64(label + "/gamma-retries", retries);

    // helper columns via batch inversion
    std::vector<PolyId> h0_ids;
    std::vector<std::shared_ptr<ExtMle>> h0s;
    for (std::size_t c = 0; c < cols.size(); c++) {
        std::vector<Fp2> denom;
        denom.reserve(cols[c].values->evals.size());
        for (const auto& a : cols[c].values->evals) denom.push_back(gamma + Fp2::from_base(a));
        batch_inverse(denom);
        auto h0 = std::make_shared<ExtMle>(cols[c].values->num_vars, std::move(denom));
        h0_ids.push_back(s.commit(label + "/h0", h0));
        h0s.push_back(h0);
    }
    std::vector<Fp2> tden;
    tden.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); i++) tden.push_back(gamma + Fp2::from_base(table.entry(i)));
    batch_inverse(tden);
    for (std::size_t i = 0; i < table.size(); i++) tden[i] *= m->evals[i];
    auto h1 = std::make_shared<ExtMle>(table.num_vars, std::move(tden));
    PolyId h1_id = s.commit(label + "/h1", h1);

    // per-column: balance share, well-formedness sumcheck, plain-sum sumcheck
    for (std::size_t c = 0; c < cols.size(); c++) {
        int k = cols[c].values->num_vars;
        Fp2 s0 = sum_over_cube(*h0s[c]);
        s.send(label + "/s0", s0);

        auto rx = tr.challenge_fp2_vec(label + "/rx", k);
        auto eq = std::make_shared<ExtMle>(eq_table(rx));
        auto a_gamma = std::make_shared<ExtMle>(to_ext(*cols[c].values));
        for (auto& v : a_gamma->evals) v += gamma;
        SumcheckClaim check1;
        check1.num_vars = k;
        check1.claimed_sum = Fp2::zero();
        check1.terms.push_back({Fp2::one(), {eq, h0s[c], a_gamma}});
        check1.terms.push_back({-Fp2::one(), {eq}});
        auto r1 = s.sumcheck(check1, label + "/wf");
        s.claim(h0_ids[c], r1.point);
        s.claim(cols[c].id, r1.point);

        auto r3 = s.sumcheck(product_claim(s0, {h0s[c]}), label + "/sum");
        s.claim(h0_ids[c], r3.point);
    }

    // table side
    auto rx = tr.challenge_fp2_vec(label + "/rt", table.num_vars);
    auto eq = std::make_shared<ExtMle>(eq_table(rx));
    auto t_gamma = std::make_shared<ExtMle>(table.num_vars,
                                            std::vector<Fp2>(table.size(), Fp2::zero()));
    for (std::size_t i = 0; i < table.size(); i++)
        t_gamma->evals[i] = gamma + Fp2::from_base(table.entry(i));
    auto m_ext = std::make_shared<ExtMle>(to_ext(*m));
    SumcheckClaim check2;
    check2.num_vars = table.num_vars;
    check2.claimed_sum = Fp2::zero();
    check2.terms.push_back({Fp2::one(), {eq, h1, t_gamma}});
    check2.terms.push_back({-Fp2::one(), {eq, m_ext}});
    auto r2 = s.sumcheck(check2, label + "/wt");
    s.claim(h1_id, r2.point);
    s.claim(m_id, r2.point);

    Fp2 s1 = sum_over_cube(*h1);
    auto r4 = s.sumcheck(product_claim(s1, {h1}), label + "/tsum");
    s.claim(h1_id, r4.point);
}

/// Verifier mirror of logup_prove. `col_ids`/`col_vars` describe the
/// already-read column commitments; column evaluation claims are discharged
/// by the session finalize (or by the caller if columns are derived).
inline void logup_verify(VerifierSession& s, const LookupTable& table,
                         const std::vector<PolyId>& col_ids, const std::vector<int>& col_vars,
                         const std::string& label) {
    Transcript& tr = s.transcript();
    PolyId m_id = s.read_commit(label + "/m", table.num_vars, pcs::KIND_BASE);

    std::uint64_t retries = s.reader().u64();
    if (retries > 1024) throw VerifyFailure("implausible gamma retry count");
    Fp2 gamma;
    for (std::uint64_t i = 0; i <= retries; i++) gamma = tr.challenge_fp2(label + "/gamma");
    tr.absorb_u64(label + "/gamma-retries", retries);

    std::vector<PolyId> h0_ids;
    for (std::size_t c = 0; c < col_ids.size(); c++)
        h0_ids.push_back(s.read_commit(label + "/h0", col_vars[c], pcs::KIND_EXT));
    PolyId h1_id = s.read_commit(label + "/h1", table.num_vars, pcs::KIND_EXT);

    Fp2 total = Fp2::zero();
    for (std::size_t c = 0; c < col_ids.size(); c++) {
        int k = col_vars[c];
        Fp2 s0 = s.recv(label + "/s0");
        total += s0;

        auto rx = tr.challenge_fp2_vec(label + "/rx", k);
        auto res1 = s.sumcheck(Fp2::zero(), 3, k, label + "/wf");
        Fp2 h0v = s.claim(h0_ids[c], res1.point);
        Fp2 av = s.claim(col_ids[c], res1.point);
        Fp2 eqv = eq_evaluate(rx, res1.point);
        if (eqv * (h0v * (gamma + av) - Fp2::one()) != res1.expected_final)
            throw VerifyFailure("lookup well-formedness check failed");

        auto res3 = s.sumcheck(s0, 1, k, label + "/sum");
        if (s.claim(h0_ids[c], res3.point) != res3.expected_final)
            throw VerifyFailure("lookup column sum check failed");
    }

    auto rx = tr.challenge_fp2_vec(label + "/rt", table.num_vars);
    auto res2 = s.sumcheck(Fp2::zero(), 3, table.num_vars, label + "/wt");
    Fp2 h1v = s.claim(h1_id, res2.point);
    Fp2 mv = s.claim(m_id, res2.point);
    Fp2 tv = table.mle_at(res2.point);
    Fp2 eqv = eq_evaluate(rx, res2.point);
    if (eqv * (h1v * (gamma + tv) - mv) != res2.expected_final)
        throw VerifyFailure("lookup table well-formedness check failed");

    // rational balance: sum of column sums equals the table-side sum
    auto res4 = s.sumcheck(total, 1, table.num_vars, label + "/tsum");
    if (s.claim(h1_id, res4.point) != res4.expected_final)
        throw VerifyFailure("lookup balance check failed");
}

}  // namespace fairzk
