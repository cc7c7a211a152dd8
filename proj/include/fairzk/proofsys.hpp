#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairzk/pcs.hpp"
#include "fairzk/serialize.hpp"
#include "fairzk/sumcheck.hpp"
#include "fairzk/transcript.hpp"

namespace fairzk {

/// Thrown by verifier-side session code on any failed check. Callers convert
/// this into a REJECT carrying the reason.
struct VerifyFailure : std::runtime_error {
    explicit VerifyFailure(const std::string& reason) : std::runtime_error(reason) {}
};

using PolyId = std::size_t;

/// Prover half of a proof session. Commitments, prover messages, sumchecks
/// and evaluation claims all flow through one transcript in a fixed order;
/// finalize() batches multiple claims per polynomial into one with a
/// random-linear-combination sumcheck, then emits the PCS openings.
class ProverSession {
public:
    ProverSession(Transcript& tr, ProofWriter& out, const std::vector<std::uint8_t>& salt_seed)
        : tr_(tr), out_(out), salt_seed_(salt_seed) {}

    Transcript& transcript() { return tr_; }
    ProofWriter& writer() { return out_; }

    PolyId commit(const std::string& label, std::shared_ptr<BaseMle> poly) {
        return commit_impl(label, std::move(poly), nullptr);
    }
    PolyId commit(const std::string& label, std::shared_ptr<ExtMle> poly) {
        return commit_impl(label, nullptr, std::move(poly));
    }

    const std::shared_ptr<BaseMle>& base_poly(PolyId id) const { return entries_[id].base; }
    const std::shared_ptr<ExtMle>& ext_poly(PolyId id) const { return entries_[id].ext; }
    int poly_vars(PolyId id) const { return entries_[id].com.num_vars; }

    /// Records an evaluation claim; the claimed value is a prover message.
    Fp2 claim(PolyId id, const std::vector<Fp2>& point) {
        const Entry& e = entries_[id];
        Fp2 v = e.base ? mle_evaluate(*e.base, point) : mle_evaluate(*e.ext, point);
        out_.fp2(v);
        tr_.absorb_fp2("claim", v);
        claims_.push_back({id, point, v});
        return v;
    }

    /// Prover message: a scalar the verifier reads back at the same step.
    void send(const std::string& label, const Fp2& v) {
        out_.fp2(v);
        tr_.absorb_fp2(label, v);
    }

    /// Runs a sumcheck and serializes its rounds.
    SumcheckProverOutput sumcheck(const SumcheckClaim& claim_, const std::string& label) {
        auto res = sumcheck_prove(claim_, tr_, label);
        for (const auto& round : res.proof.rounds) out_.fp2_vec(round);
        return res;
    }

    /// Claim batching plus openings. Call once, after all protocol steps.
    void finalize() {
        for (PolyId id = 0; id < entries_.size(); id++) {
            std::vector<std::size_t> mine;
            for (std::size_t c = 0; c < claims_.size(); c++)
                if (claims_[c].id == id) mine.push_back(c);
            if (mine.empty())
                throw std::logic_error("ProverSession: committed polynomial never claimed: " +
                                       entries_[id].label);
            if (mine.size() == 1) continue;
            // reduce to a single claim: sum_j rho^j v_j = sum_x Q(x) P(x),
            // Q = sum_j rho^j eq(u_j, .)
            Fp2 rho = tr_.challenge_fp2("batch/rho");
            const Entry& e = entries_[id];
            int k = e.com.num_vars;
            auto q = std::make_shared<ExtMle>(k, std::vector<Fp2>(std::size_t{1} << k, Fp2::zero()));
            Fp2 w = Fp2::one();
            Fp2 combined = Fp2::zero();
            for (auto ci : mine) {
                ExtMle eqt = eq_table(claims_[ci].point);
                for (std::size_t i = 0; i < q->evals.size(); i++) q->evals[i] += w * eqt.evals[i];
                combined += w * claims_[ci].value;
                w *= rho;
            }
            auto p = e.base ? std::make_shared<ExtMle>(to_ext(*e.base)) : e.ext;
            auto sc = product_claim(combined, {q, p});
            auto res = sumcheck(sc, "batch");
            // new single claim at the sumcheck point; value needs no message
            // (derived from the final round identity by the verifier)
            Fp2 pv = res.final_factors[0][1];
            Claim merged{id, res.point, pv};
            std::vector<Claim> rest;
            for (std::size_t c = 0; c < claims_.size(); c++)
                if (claims_[c].id != id) rest.push_back(claims_[c]);
            rest.push_back(merged);
            claims_ = std::move(rest);
        }
        // openings: one reveal per polynomial, in id order
        for (PolyId id = 0; id < entries_.size(); id++) {
            const Entry& e = entries_[id];
            out_.raw(e.salt.data(), e.salt.size());
            if (e.base)
                for (const auto& v : e.base->evals) out_.fp(v);
            else
                for (const auto& v : e.ext->evals) out_.fp2(v);
        }
    }

private:
    struct Entry {
        std::string label;
        std::shared_ptr<BaseMle> base;
        std::shared_ptr<ExtMle> ext;
        pcs::Salt salt{};
        pcs::Commitment com;
    };
    struct Claim {
        PolyId id;
        std::vector<Fp2> point;
        Fp2 value;
    };

    PolyId commit_impl(const std::string& label, std::shared_ptr<BaseMle> b, std::shared_ptr<ExtMle> x) {
        Entry e;
        e.label = label;
        e.base = std::move(b);
        e.ext = std::move(x);
        e.salt = derive_salt(entries_.size(), label);
        e.com = e.base ? pcs::commit(*e.base, e.salt) : pcs::commit(*e.ext, e.salt);
        pcs::write_commitment(out_, e.com);
        tr_.absorb_digest("commit/" + label, e.com.root);
        tr_.absorb_u64("commit/vars", e.com.num_vars);
        entries_.push_back(std::move(e));
        return entries_.size() - 1;
    }

    pcs::Salt derive_salt(std::size_t index, const std::string& label) const {
        Sha256 h;
        h.update(salt_seed_);
        std::uint8_t tag = 0x5a;
        h.update(&tag, 1);
        std::uint8_t idx[8];
        for (int i = 0; i < 8; i++) idx[i] = static_cast<std::uint8_t>(index >> (8 * i));
        h.update(idx, 8);
        h.update(label);
        return h.finalize();
    }

    Transcript& tr_;
    ProofWriter& out_;
    std::vector<std::uint8_t> salt_seed_;
    std::vector<Entry> entries_;
    std::vector<Claim> claims_;
};

/// Verifier half; mirrors the prover step for step. Throws VerifyFailure on
/// the first failed check.
class VerifierSession {
public:
    VerifierSession(Transcript& tr, ProofReader& in) : tr_(tr), in_(in) {}

    Transcript& transcript() { return tr_; }
    ProofReader& reader() { return in_; }

    PolyId read_commit(const std::string& label, int expected_vars, std::uint8_t expected_kind) {
        pcs::Commitment c = pcs::read_commitment(in_);
        if (c.num_vars != expected_vars || c.elem_kind != expected_kind)
            throw VerifyFailure("commitment shape mismatch for " + label);
        tr_.absorb_digest("commit/" + label, c.root);
        tr_.absorb_u64("commit/vars", c.num_vars);
        entries_.push_back({label, c});
        return entries_.size() - 1;
    }

    const pcs::Commitment& commitment(PolyId id) const { return entries_[id].com; }

    Fp2 claim(PolyId id, const std::vector<Fp2>& point) {
        if (point.size() != entries_[id].com.num_vars)
            throw VerifyFailure("claim dimension mismatch for " + entries_[id].label);
        Fp2 v = in_.fp2();
        tr_.absorb_fp2("claim", v);
        claims_.push_back({id, point, v});
        return v;
    }

    Fp2 recv(const std::string& label) {
        Fp2 v = in_.fp2();
        tr_.absorb_fp2(label, v);
        return v;
    }

    SumcheckVerifyResult sumcheck(const Fp2& claimed_sum, int degree, int num_vars,
                                  const std::string& label) {
        SumcheckProof proof;
        for (int i = 0; i < num_vars; i++) proof.rounds.push_back(in_.fp2_vec(degree + 1));
        auto res = sumcheck_verify_rounds(claimed_sum, proof, degree, num_vars, tr_, label);
        if (!res.ok) throw VerifyFailure("sumcheck round identity failed: " + label);
        return res;
    }

    void finalize() {
        for (PolyId id = 0; id < entries_.size(); id++) {
            std::vector<std::size_t> mine;
            for (std::size_t c = 0; c < claims_.size(); c++)
                if (claims_[c].id == id) mine.push_back(c);
            if (mine.empty())
                throw VerifyFailure("unclaimed commitment: " + entries_[id].label);
            if (mine.size() == 1) continue;
            Fp2 rho = tr_.challenge_fp2("batch/rho");
            Fp2 w = Fp2::one();
            Fp2 combined = Fp2::zero();
            for (auto ci : mine) {
                combined += w * claims_[ci].value;
                w *= rho;
            }
            int k = entries_[id].com.num_vars;
            auto res = sumcheck(combined, 2, k, "batch");
            Fp2 qv = Fp2::zero();
            w = Fp2::one();
            for (auto ci : mine) {
                qv += w * eq_evaluate(claims_[ci].point, res.point);
                w *= rho;
            }
            if (qv.is_zero()) throw VerifyFailure("degenerate batching combination");
            Fp2 pv = res.expected_final * qv.inverse();
            std::vector<Claim> rest;
            for (std::size_t c = 0; c < claims_.size(); c++)
                if (claims_[c].id != id) rest.push_back(claims_[c]);
            rest.push_back({id, res.point, pv});
            claims_ = std::move(rest);
        }
        for (PolyId id = 0; id < entries_.size(); id++) {
            const Entry& e = entries_[id];
            pcs::Salt salt;
            const std::uint8_t* s = in_.take(32);
            std::copy(s, s + 32, salt.begin());
            std::size_t n = std::size_t{1} << e.com.num_vars;
            if (e.com.elem_kind == pcs::KIND_BASE) {
                std::vector<Fp> evals;
                evals.reserve(n);
                for (std::size_t i = 0; i < n; i++) evals.push_back(in_.fp());
                if (!pcs::check_reveal(e.com, salt, evals))
                    throw VerifyFailure("opening does not match commitment: " + e.label);
                BaseMle m(e.com.num_vars, std::move(evals));
                check_claims(id, [&](const std::vector<Fp2>& pt) { return mle_evaluate(m, pt); });
            } else {
                std::vector<Fp2> evals;
                evals.reserve(n);
                for (std::size_t i = 0; i < n; i++) evals.push_back(in_.fp2());
                if (!pcs::check_reveal(e.com, salt, evals))
                    throw VerifyFailure("opening does not match commitment: " + e.label);
                ExtMle m(e.com.num_vars, std::move(evals));
                check_claims(id, [&](const std::vector<Fp2>& pt) { return mle_evaluate(m, pt); });
            }
        }
    }

private:
    struct Entry {
        std::string label;
        pcs::Commitment com;
    };
    struct Claim {
        PolyId id;
        std::vector<Fp2> point;
        Fp2 value;
    };

    template <class Eval>
    void check_claims(PolyId id, const Eval& eval) {
        for (const auto& c : claims_)
            if (c.id == id && eval(c.point) != c.value)
                throw VerifyFailure("evaluation claim failed: " + entries_[id].label);
    }

    Transcript& tr_;
    ProofReader& in_;
    std::vector<Entry> entries_;
    std::vector<Claim> claims_;
};

}  // namespace fairzk
