#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fairzk/proofsys.hpp"
#include "fairzk/sumcheck.hpp"

namespace fairzk {

struct Gate {
    enum Kind : std::uint8_t { Add = 0, Mul = 1 };
    Kind kind = Add;
    std::uint32_t left = 0;   // index into the next-deeper layer
    std::uint32_t right = 0;
};

/// Layered arithmetic circuit. layers[0] is the output layer and
/// layers[d-1] reads the input; every gate references only the next-deeper
/// layer. All widths (including the input) are powers of two, at least 2.
struct LayeredCircuit {
    std::size_t input_size = 0;
    std::vector<std::vector<Gate>> layers;

    std::size_t depth() const { return layers.size(); }
    std::size_t width(std::size_t i) const {
        return i == layers.size() ? input_size : layers[i].size();
    }

    void validate() const {
        if (layers.empty()) throw std::invalid_argument("circuit: no layers");
        auto pow2 = [](std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; };
        if (!pow2(input_size)) throw std::invalid_argument("circuit: input size must be a power of two >= 2");
        for (std::size_t i = 0; i < layers.size(); i++) {
            if (!pow2(layers[i].size()))
                throw std::invalid_argument("circuit: layer width must be a power of two >= 2");
            std::size_t below = width(i + 1);
            for (const auto& g : layers[i])
                if (g.left >= below || g.right >= below)
                    throw std::out_of_range("circuit: gate input index out of range");
        }
    }
};

/// Evaluates the circuit, retaining every layer for the prover.
/// Returned values[i] corresponds to layer i (values[depth] = input).
inline std::vector<std::vector<Fp>> circuit_evaluate(const LayeredCircuit& c,
                                                     const std::vector<Fp>& input) {
    c.validate();
    if (input.size() != c.input_size) throw std::invalid_argument("circuit: input length mismatch");
    std::vector<std::vector<Fp>> values(c.depth() + 1);
    values[c.depth()] = input;
    for (std::size_t i = c.depth(); i-- > 0;) {
        const auto& below = values[i + 1];
        values[i].resize(c.layers[i].size());
        for (std::size_t g = 0; g < c.layers[i].size(); g++) {
            const Gate& gate = c.layers[i][g];
            values[i][g] = gate.kind == Gate::Add ? below[gate.left] + below[gate.right]
                                                  : below[gate.left] * below[gate.right];
        }
    }
    return values;
}

namespace gkr_detail {

inline int layer_vars(std::size_t width) { return log2_ceil(width); }

/// eq(point, <bits of index>) in O(|point|).
inline Fp2 eq_at_index(const std::vector<Fp2>& point, std::uint32_t index) {
    Fp2 acc = Fp2::one();
    int k = static_cast<int>(point.size());
    for (int j = 0; j < k; j++) {
        bool bit = (index >> (k - 1 - j)) & 1;
        acc *= bit ? point[j] : Fp2::one() - point[j];
    }
    return acc;
}

/// Sparse wiring-predicate evaluation: sum over gates of kind `kind` of
/// (alpha eq(u, out) + beta eq(v, out)) * eq(y, left) * eq(z, right).
inline Fp2 predicate_eval(const std::vector<Gate>& gates, Gate::Kind kind, const Fp2& alpha,
                          const std::vector<Fp2>& u, const Fp2& beta, const std::vector<Fp2>& v,
                          const std::vector<Fp2>& y, const std::vector<Fp2>& z) {
    Fp2 acc = Fp2::zero();
    for (std::uint32_t o = 0; o < gates.size(); o++) {
        if (gates[o].kind != kind) continue;
        Fp2 w = alpha * eq_at_index(u, o);
        if (!beta.is_zero()) w += beta * eq_at_index(v, o);
        acc += w * eq_at_index(y, gates[o].left) * eq_at_index(z, gates[o].right);
    }
    return acc;
}

}  // namespace gkr_detail

struct GkrLayerProof {
    SumcheckProof phase1;
    Fp2 vy;
    SumcheckProof phase2;
    Fp2 vz;
};

struct GkrProof {
    std::vector<GkrLayerProof> layers;
};

/// Evaluation claims on the input MLE produced by a completed GKR run; the
/// caller discharges them against commitments, public inputs, or derived
/// polynomials.
struct GkrInputClaims {
    std::vector<Fp2> point_y;
    Fp2 vy;
    std::vector<Fp2> point_z;
    Fp2 vz;
};

/// Prover for the layer-by-layer protocol. The claim on each layer's MLE is
/// carried as a weighted pair alpha*V(u) + beta*V(v); the per-layer sumcheck
/// runs in two phases over y then z, with bookkeeping tables built in
/// O(gates) from the sparse wiring, so total prover time is linear in the
/// circuit size. Claims at the two resulting points are merged by a random
/// linear combination for the next layer.
inline GkrProof gkr_prove(const LayeredCircuit& c, const std::vector<std::vector<Fp>>& values,
                          const std::vector<Fp2>& output_point, Transcript& tr,
                          GkrInputClaims* input_claims) {
    using namespace gkr_detail;
    GkrProof proof;
    std::vector<Fp2> u = output_point, v = output_point;
    Fp2 alpha = Fp2::one(), beta = Fp2::zero();

    for (std::size_t i = 0; i < c.depth(); i++) {
        const auto& gates = c.layers[i];
        const auto& below = values[i + 1];
        const int kb = layer_vars(below.size());

        // weight table over this layer's outputs
        ExtMle equ = eq_table(u);
        std::vector<Fp2> w(gates.size());
        if (beta.is_zero()) {
            for (std::size_t o = 0; o < gates.size(); o++) w[o] = alpha * equ.evals[o];
        } else {
            ExtMle eqv = eq_table(v);
            for (std::size_t o = 0; o < gates.size(); o++)
                w[o] = alpha * equ.evals[o] + beta * eqv.evals[o];
        }

        auto vext = std::make_shared<ExtMle>(kb, std::vector<Fp2>(below.size()));
        for (std::size_t j = 0; j < below.size(); j++) vext->evals[j] = Fp2::from_base(below[j]);

        // phase 1 over y: V(y) * G1(y) + G2(y)
        auto g1 = std::make_shared<ExtMle>(kb, std::vector<Fp2>(below.size(), Fp2::zero()));
        auto g2 = std::make_shared<ExtMle>(kb, std::vector<Fp2>(below.size(), Fp2::zero()));
        for (std::size_t o = 0; o < gates.size(); o++) {
            const Gate& g = gates[o];
            if (g.kind == Gate::Add) {
                g1->evals[g.left] += w[o];
                g2->evals[g.left] += w[o] * vext->evals[g.right];
            } else {
                g1->evals[g.left] += w[o] * vext->evals[g.right];
            }
        }
        SumcheckClaim p1;
        p1.num_vars = kb;
        p1.terms.push_back({Fp2::one(), {vext, g1}});
        p1.terms.push_back({Fp2::one(), {g2}});
        p1.claimed_sum = claim_true_sum(p1);
        auto r1 = sumcheck_prove(p1, tr, "gkr/p1");
        std::vector<Fp2> ry = r1.point;

        Fp2 vy = mle_evaluate(*vext, ry);
        tr.absorb_fp2("gkr/vy", vy);

        // phase 2 over z: A2(z)*(vy + V(z)) + M2(z)*vy*V(z)
        ExtMle eqry = eq_table(ry);
        auto a2 = std::make_shared<ExtMle>(kb, std::vector<Fp2>(below.size(), Fp2::zero()));
        auto m2 = std::make_shared<ExtMle>(kb, std::vector<Fp2>(below.size(), Fp2::zero()));
        for (std::size_t o = 0; o < gates.size(); o++) {
            const Gate& g = gates[o];
            Fp2 t = w[o] * eqry.evals[g.left];
            if (g.kind == Gate::Add) a2->evals[g.right] += t;
            else m2->evals[g.right] += t;
        }
        SumcheckClaim p2;
        p2.num_vars = kb;
        p2.terms.push_back({vy, {a2}});
        p2.terms.push_back({Fp2::one(), {a2, vext}});
        p2.terms.push_back({vy, {m2, vext}});
        p2.claimed_sum = claim_true_sum(p2);
        auto r2 = sumcheck_prove(p2, tr, "gkr/p2");
        std::vector<Fp2> rz = r2.point;

        Fp2 vz = mle_evaluate(*vext, rz);
        tr.absorb_fp2("gkr/vz", vz);

        proof.layers.push_back({std::move(r1.proof), vy, std::move(r2.proof), vz});

        u = std::move(ry);
        v = std::move(rz);
        if (i + 1 < c.depth()) {
            alpha = tr.challenge_fp2("gkr/alpha");
            beta = tr.challenge_fp2("gkr/beta");
        } else if (input_claims) {
            *input_claims = {u, vy, v, vz};
        }
    }
    return proof;
}

/// Verifier; returns the input-layer claims on success, nullopt on any
/// failed check. The wiring predicates are evaluated locally from the sparse
/// gate lists in time proportional to the layer's gate count.
inline std::optional<GkrInputClaims> gkr_verify(const LayeredCircuit& c, const Fp2& output_claim,
                                                const std::vector<Fp2>& output_point,
                                                const GkrProof& proof, Transcript& tr) {
    using namespace gkr_detail;
    if (proof.layers.size() != c.depth()) return std::nullopt;
    std::vector<Fp2> u = output_point, v = output_point;
    Fp2 alpha = Fp2::one(), beta = Fp2::zero();
    Fp2 claim = output_claim;

    for (std::size_t i = 0; i < c.depth(); i++) {
        const auto& lp = proof.layers[i];
        const int kb = layer_vars(c.width(i + 1));

        auto res1 = sumcheck_verify_rounds(claim, lp.phase1, 2, kb, tr, "gkr/p1");
        if (!res1.ok) return std::nullopt;
        tr.absorb_fp2("gkr/vy", lp.vy);
        auto res2 = sumcheck_verify_rounds(res1.expected_final, lp.phase2, 2, kb, tr, "gkr/p2");
        if (!res2.ok) return std::nullopt;
        tr.absorb_fp2("gkr/vz", lp.vz);

        // final identity: add(g;y,z)(vy+vz) + mult(g;y,z) vy vz
        Fp2 adde = predicate_eval(c.layers[i], Gate::Add, alpha, u, beta, v, res1.point, res2.point);
        Fp2 mule = predicate_eval(c.layers[i], Gate::Mul, alpha, u, beta, v, res1.point, res2.point);
        if (adde * (lp.vy + lp.vz) + mule * lp.vy * lp.vz != res2.expected_final)
            return std::nullopt;

        u = res1.point;
        v = res2.point;
        if (i + 1 < c.depth()) {
            alpha = tr.challenge_fp2("gkr/alpha");
            beta = tr.challenge_fp2("gkr/beta");
            claim = alpha * lp.vy + beta * lp.vz;
        } else {
            return GkrInputClaims{u, lp.vy, v, lp.vz};
        }
    }
    return std::nullopt;
}

/// Serialization helpers; proof shapes are fully determined by the circuit.
inline void write_gkr_proof(ProofWriter& w, const GkrProof& p) {
    for (const auto& l : p.layers) {
        for (const auto& r : l.phase1.rounds) w.fp2_vec(r);
        w.fp2(l.vy);
        for (const auto& r : l.phase2.rounds) w.fp2_vec(r);
        w.fp2(l.vz);
    }
}

inline GkrProof read_gkr_proof(ProofReader& rd, const LayeredCircuit& c) {
    GkrProof p;
    for (std::size_t i = 0; i < c.depth(); i++) {
        GkrLayerProof lp;
        int kb = gkr_detail::layer_vars(c.width(i + 1));
        for (int j = 0; j < kb; j++) lp.phase1.rounds.push_back(rd.fp2_vec(3));
        lp.vy = rd.fp2();
        for (int j = 0; j < kb; j++) lp.phase2.rounds.push_back(rd.fp2_vec(3));
        lp.vz = rd.fp2();
        p.layers.push_back(std::move(lp));
    }
    return p;
}

}  // namespace fairzk
