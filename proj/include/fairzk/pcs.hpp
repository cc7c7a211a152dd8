#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairzk/multilinear.hpp"
#include "fairzk/parallel.hpp"
#include "fairzk/serialize.hpp"
#include "fairzk/sha256.hpp"

namespace fairzk {

/// Transparent polynomial commitment: a Merkle root over the salted
/// evaluation vector. Openings reveal the evaluation vector so the verifier
/// can recompute the root and evaluate f(u) itself via the eq inner product;
/// binding with linear-size openings. The scheme sits behind this interface
/// (backend id pinned in proof headers) so a succinct backend can replace it.
namespace pcs {

constexpr std::uint8_t BACKEND_ID = 1;  // MERKLE-REVEAL-V1
constexpr std::uint8_t KIND_BASE = 0;
constexpr std::uint8_t KIND_EXT = 1;

using Salt = std::array<std::uint8_t, 32>;

struct Commitment {
    Sha256::Digest root{};
    std::uint16_t num_vars = 0;
    std::uint8_t elem_kind = KIND_BASE;

    bool operator==(const Commitment& o) const {
        return root == o.root && num_vars == o.num_vars && elem_kind == o.elem_kind;
    }
};

namespace detail {

template <class F>
inline void leaf_bytes(std::uint8_t* out, const F& v) {
    v.to_bytes(out);
}

template <class F>
inline Sha256::Digest leaf_hash(const Salt& salt, std::uint64_t index, const F& v) {
    std::uint8_t buf[1 + 32 + 8 + 16];
    buf[0] = 0x00;
    std::copy(salt.begin(), salt.end(), buf + 1);
    for (int i = 0; i < 8; i++) buf[33 + i] = static_cast<std::uint8_t>(index >> (8 * i));
    leaf_bytes(buf + 41, v);
    constexpr std::size_t vn = std::is_same_v<F, Fp> ? 8 : 16;
    return Sha256::hash(buf, 41 + vn);
}

inline Sha256::Digest node_hash(const Sha256::Digest& l, const Sha256::Digest& r) {
    std::uint8_t buf[1 + 64];
    buf[0] = 0x01;
    std::copy(l.begin(), l.end(), buf + 1);
    std::copy(r.begin(), r.end(), buf + 33);
    return Sha256::hash(buf, 65);
}

template <class F>
inline Sha256::Digest merkle_root(const std::vector<F>& evals, const Salt& salt) {
    std::vector<Sha256::Digest> level(evals.size());
    parallel_for(evals.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; i++) level[i] = leaf_hash(salt, i, evals[i]);
    });
    while (level.size() > 1) {
        std::vector<Sha256::Digest> next(level.size() / 2);
        parallel_for(next.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; i++) next[i] = node_hash(level[2 * i], level[2 * i + 1]);
        });
        level = std::move(next);
    }
    return level[0];
}

}  // namespace detail

template <class F>
inline Commitment commit(const Mle<F>& poly, const Salt& salt) {
    Commitment c;
    c.root = detail::merkle_root(poly.evals, salt);
    c.num_vars = static_cast<std::uint16_t>(poly.num_vars);
    c.elem_kind = std::is_same_v<F, Fp> ? KIND_BASE : KIND_EXT;
    return c;
}

/// Verifier-side check that revealed evaluations hash to the committed root.
template <class F>
inline bool check_reveal(const Commitment& com, const Salt& salt, const std::vector<F>& evals) {
    std::uint8_t kind = std::is_same_v<F, Fp> ? KIND_BASE : KIND_EXT;
    if (kind != com.elem_kind) return false;
    if (evals.size() != (std::size_t{1} << com.num_vars)) return false;
    return detail::merkle_root(evals, salt) == com.root;
}

/// Standalone opening proof for one evaluation claim (tests and the
/// module-level API; sessions share one reveal across many claims).
template <class F>
struct OpeningProof {
    Fp2 value;
    Salt salt{};
    std::vector<F> evals;
};

template <class F>
inline OpeningProof<F> open(const Mle<F>& poly, const Salt& salt, const std::vector<Fp2>& point) {
    if (static_cast<int>(point.size()) != poly.num_vars)
        throw std::invalid_argument("pcs::open: dimension mismatch");
    OpeningProof<F> p;
    p.value = mle_evaluate(poly, point);
    p.salt = salt;
    p.evals = poly.evals;
    return p;
}

template <class F>
inline bool verify(const Commitment& com, const std::vector<Fp2>& point, const Fp2& value,
                   const OpeningProof<F>& proof) {
    if (point.size() != com.num_vars) return false;
    if (proof.value != value) return false;
    if (!check_reveal(com, proof.salt, proof.evals)) return false;
    Mle<F> m(com.num_vars, proof.evals);
    return mle_evaluate(m, point) == value;
}

inline void write_commitment(ProofWriter& w, const Commitment& c) {
    w.digest(c.root);
    w.u16(c.num_vars);
    w.u8(c.elem_kind);
}

inline Commitment read_commitment(ProofReader& r) {
    Commitment c;
    c.root = r.digest();
    c.num_vars = r.u16();
    c.elem_kind = r.u8();
    if (c.elem_kind > KIND_EXT) throw ProofFormatError("bad commitment element kind");
    if (c.num_vars > 40) throw ProofFormatError("commitment num_vars too large");
    return c;
}

}  // namespace pcs
}  // namespace fairzk
