#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "fairzk/multilinear.hpp"
#include "fairzk/transcript.hpp"

namespace fairzk {

/// Claim that a weighted sum of products of multilinear polynomials sums to
/// claimed_sum over the Boolean hypercube. Each term has at most three
/// factors, so per-variable degree is at most 3. A plain product claim is a
/// single term with coefficient 1; random-linear-combination batching
/// produces multi-term claims.
struct SumcheckClaim {
    struct Term {
        Fp2 coeff = Fp2::one();
        std::vector<std::shared_ptr<ExtMle>> factors;  // 1..3 factors
    };

    int num_vars = 0;
    Fp2 claimed_sum;
    std::vector<Term> terms;

    int degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, static_cast<int>(t.factors.size()));
        return d;
    }

    void validate() const {
        if (terms.empty()) throw std::invalid_argument("sumcheck: empty claim");
        for (const auto& t : terms) {
            if (t.factors.empty() || t.factors.size() > 3)
                throw std::invalid_argument("sumcheck: term must have 1..3 factors");
            for (const auto& f : t.factors) {
                if (!f) throw std::invalid_argument("sumcheck: null factor");
                if (f->num_vars != num_vars)
                    throw std::invalid_argument("sumcheck: factor num_vars mismatch");
            }
        }
    }
};

/// Single-product convenience constructor.
inline SumcheckClaim product_claim(const Fp2& sum, std::vector<std::shared_ptr<ExtMle>> factors) {
    SumcheckClaim c;
    if (factors.empty()) throw std::invalid_argument("sumcheck: empty factor list");
    c.num_vars = factors[0]->num_vars;
    c.claimed_sum = sum;
    c.terms.push_back({Fp2::one(), std::move(factors)});
    c.validate();
    return c;
}

/// Computes the true hypercube sum of a claim (prover-side helper).
inline Fp2 claim_true_sum(const SumcheckClaim& c) {
    Fp2 acc = Fp2::zero();
    std::size_t n = std::size_t{1} << c.num_vars;
    for (const auto& t : c.terms) {
        Fp2 s = Fp2::zero();
        for (std::size_t i = 0; i < n; i++) {
            Fp2 prod = t.factors[0]->evals[i];
            for (std::size_t j = 1; j < t.factors.size(); j++) prod *= t.factors[j]->evals[i];
            s += prod;
        }
        acc += t.coeff * s;
    }
    return acc;
}

/// Random-linear-combination batching: combined sum = sum_i rho^i * claim_i.
/// All claims must share num_vars; soundness error <= (#claims-1)/|F_{p^2}|.
inline SumcheckClaim batch_claims(const std::vector<SumcheckClaim>& claims, const Fp2& rho) {
    if (claims.empty()) throw std::invalid_argument("batch_claims: no claims");
    SumcheckClaim out;
    out.num_vars = claims[0].num_vars;
    out.claimed_sum = Fp2::zero();
    Fp2 w = Fp2::one();
    for (const auto& c : claims) {
        if (c.num_vars != out.num_vars) throw std::invalid_argument("batch_claims: mixed num_vars");
        out.claimed_sum += w * c.claimed_sum;
        for (const auto& t : c.terms) out.terms.push_back({w * t.coeff, t.factors});
        w *= rho;
    }
    out.validate();
    return out;
}

/// One univariate per round, transmitted as degree+1 coefficients
/// (constant term first).
struct SumcheckProof {
    std::vector<std::vector<Fp2>> rounds;
};

struct SumcheckProverOutput {
    SumcheckProof proof;
    std::vector<Fp2> point;                       // verifier challenges r_1..r_k
    std::vector<std::vector<Fp2>> final_factors;  // per term, per factor, value at point
};

inline Fp2 poly_eval(const std::vector<Fp2>& coeffs, const Fp2& x) {
    Fp2 acc = Fp2::zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

/// Prover for the multilinear-product sumcheck; O(2^k) work per factor via
/// one fold per round. Shared factor tables are folded once.
inline SumcheckProverOutput sumcheck_prove(const SumcheckClaim& claim, Transcript& tr,
                                           const std::string& label = "sumcheck") {
    claim.validate();
    const int k = claim.num_vars;
    const int degree = claim.degree();

    // working copies, deduplicated by source pointer
    std::vector<std::shared_ptr<ExtMle>> pool;
    std::vector<const ExtMle*> seen;
    auto working = [&](const std::shared_ptr<ExtMle>& src) -> std::shared_ptr<ExtMle> {
        for (std::size_t i = 0; i < seen.size(); i++)
            if (seen[i] == src.get()) return pool[i];
        seen.push_back(src.get());
        pool.push_back(std::make_shared<ExtMle>(*src));
        return pool.back();
    };
    std::vector<std::vector<std::shared_ptr<ExtMle>>> work(claim.terms.size());
    for (std::size_t t = 0; t < claim.terms.size(); t++)
        for (const auto& f : claim.terms[t].factors) work[t].push_back(working(f));

    SumcheckProverOutput out;
    for (int round = 0; round < k; round++) {
        std::vector<Fp2> coeffs(degree + 1, Fp2::zero());
        for (std::size_t t = 0; t < claim.terms.size(); t++) {
            const auto& fs = work[t];
            const std::size_t half = fs[0]->evals.size() >> 1;
            std::vector<Fp2> acc(fs.size() + 1, Fp2::zero());
            for (std::size_t i = 0; i < half; i++) {
                // product of linear slices (a_j + b_j X)
                Fp2 prod[4];
                prod[0] = fs[0]->evals[i];
                prod[1] = fs[0]->evals[i + half] - fs[0]->evals[i];
                std::size_t len = 2;
                for (std::size_t j = 1; j < fs.size(); j++) {
                    Fp2 a = fs[j]->evals[i];
                    Fp2 b = fs[j]->evals[i + half] - a;
                    Fp2 next[4] = {Fp2::zero(), Fp2::zero(), Fp2::zero(), Fp2::zero()};
                    for (std::size_t d = 0; d < len; d++) {
                        next[d] += prod[d] * a;
                        next[d + 1] += prod[d] * b;
                    }
                    len++;
                    for (std::size_t d = 0; d < len; d++) prod[d] = next[d];
                }
                for (std::size_t d = 0; d < len; d++) acc[d] += prod[d];
            }
            for (std::size_t d = 0; d < acc.size(); d++) coeffs[d] += claim.terms[t].coeff * acc[d];
        }
        tr.absorb_fp2_vec(label + "/round", coeffs);
        Fp2 r = tr.challenge_fp2(label + "/challenge");
        out.point.push_back(r);
        out.proof.rounds.push_back(std::move(coeffs));
        for (auto& f : pool) *f = fold_variable(*f, r);
    }

    out.final_factors.resize(claim.terms.size());
    for (std::size_t t = 0; t < claim.terms.size(); t++)
        for (const auto& f : work[t]) out.final_factors[t].push_back(f->evals[0]);
    return out;
}

struct SumcheckVerifyResult {
    bool ok = false;
    std::vector<Fp2> point;
    Fp2 expected_final;  // value the product expression must take at `point`
};

/// Replays the round identities f_{i-1}(r_{i-1}) = f_i(0) + f_i(1). The final
/// factor-product evaluation is checked by the caller (PCS openings, direct
/// recomputation, or an oracle via the overload below).
inline SumcheckVerifyResult sumcheck_verify_rounds(const Fp2& claimed_sum, const SumcheckProof& proof,
                                                   int degree, int num_vars, Transcript& tr,
                                                   const std::string& label = "sumcheck") {
    SumcheckVerifyResult res;
    if (static_cast<int>(proof.rounds.size()) != num_vars) return res;  // wrong round count
    Fp2 expect = claimed_sum;
    for (int i = 0; i < num_vars; i++) {
        const auto& coeffs = proof.rounds[i];
        if (static_cast<int>(coeffs.size()) != degree + 1) return res;  // degree overflow
        Fp2 at0 = coeffs[0];
        Fp2 at1 = Fp2::zero();
        for (const auto& c : coeffs) at1 += c;
        if (at0 + at1 != expect) return res;
        tr.absorb_fp2_vec(label + "/round", coeffs);
        Fp2 r = tr.challenge_fp2(label + "/challenge");
        res.point.push_back(r);
        expect = poly_eval(coeffs, r);
    }
    res.expected_final = expect;
    res.ok = true;
    return res;
}

/// Full verification against an oracle for f at the challenge point.
inline bool sumcheck_verify(const Fp2& claimed_sum, const SumcheckProof& proof, int degree,
                            int num_vars, Transcript& tr,
                            const std::function<Fp2(const std::vector<Fp2>&)>& final_oracle,
                            const std::string& label = "sumcheck") {
    auto res = sumcheck_verify_rounds(claimed_sum, proof, degree, num_vars, tr, label);
    if (!res.ok) return false;
    return final_oracle(res.point) == res.expected_final;
}

}  // namespace fairzk
