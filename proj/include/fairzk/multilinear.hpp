#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairzk/field.hpp"

namespace fairzk {

/// Dense multilinear polynomial given by its values on the Boolean hypercube.
/// Index bit-ordering is most-significant bit = first variable, pinned
/// globally because transcripts depend on it: evals[b] is the value at
/// (b_1, ..., b_k) where b = b_1 b_2 ... b_k in binary, b_1 the MSB.
template <class F>
struct Mle {
    int num_vars = 0;
    std::vector<F> evals;  // length 2^num_vars

    Mle() : evals(1, F::zero()) {}
    Mle(int k, std::vector<F> e) : num_vars(k), evals(std::move(e)) {
        if (evals.size() != (std::size_t{1} << num_vars))
            throw std::invalid_argument("Mle: evals size must be 2^num_vars");
    }

    static Mle constant(const F& c) {
        Mle m;
        m.evals[0] = c;
        return m;
    }

    std::size_t size() const { return evals.size(); }
};

using BaseMle = Mle<Fp>;
using ExtMle = Mle<Fp2>;

inline int log2_ceil(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) k++;
    return k;
}

/// Pads a vector to the next power of two with `pad` and wraps it as an MLE.
template <class F>
inline Mle<F> mle_from_vector(std::vector<F> v, const F& pad = F::zero()) {
    int k = log2_ceil(v.size() == 0 ? 1 : v.size());
    v.resize(std::size_t{1} << k, pad);
    return Mle<F>(k, std::move(v));
}

inline ExtMle to_ext(const BaseMle& m) {
    std::vector<Fp2> e;
    e.reserve(m.evals.size());
    for (const auto& x : m.evals) e.push_back(Fp2::from_base(x));
    return ExtMle(m.num_vars, std::move(e));
}

/// eq(x, y) = prod_i (x_i y_i + (1-x_i)(1-y_i)); equals the Kronecker delta
/// on Boolean inputs.
inline Fp2 eq_evaluate(const std::vector<Fp2>& x, const std::vector<Fp2>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("eq_evaluate: length mismatch");
    Fp2 acc = Fp2::one();
    for (std::size_t i = 0; i < x.size(); i++) {
        Fp2 t = x[i] * y[i];
        acc *= t + t - x[i] - y[i] + Fp2::one();  // xy + (1-x)(1-y) = 2xy - x - y + 1
    }
    return acc;
}

/// Table of eq(point, b) for all b in {0,1}^k, MSB-first index order:
/// processing variables first-to-last appends each new bit as the low bit,
/// which keeps index b = b_1 b_2 ... b_k.
inline ExtMle eq_table(const std::vector<Fp2>& point) {
    std::vector<Fp2> cur(1, Fp2::one());
    for (const auto& r : point) {
        std::vector<Fp2> next(cur.size() * 2);
        for (std::size_t j = 0; j < cur.size(); j++) {
            Fp2 hi = cur[j] * r;
            next[2 * j] = cur[j] - hi;
            next[2 * j + 1] = hi;
        }
        cur = std::move(next);
    }
    return ExtMle(static_cast<int>(point.size()), std::move(cur));
}

/// Evaluates the unique multilinear extension at an arbitrary point in
/// O(2^k) time by folding one variable at a time.
template <class F>
inline Fp2 mle_evaluate(const Mle<F>& p, const std::vector<Fp2>& point) {
    if (static_cast<int>(point.size()) != p.num_vars)
        throw std::invalid_argument("mle_evaluate: dimension mismatch");
    std::vector<Fp2> cur;
    cur.reserve(p.evals.size());
    for (const auto& e : p.evals) {
        if constexpr (std::is_same_v<F, Fp>) cur.push_back(Fp2::from_base(e));
        else cur.push_back(e);
    }
    std::size_t half = cur.size() >> 1;
    for (const auto& r : point) {
        for (std::size_t i = 0; i < half; i++)
            cur[i] = cur[i] + r * (cur[i + half] - cur[i]);
        half >>= 1;
    }
    return cur[0];
}

/// Restricts the first variable to r: returns the (k-1)-variable polynomial
/// P(r, .), evals'_b = (1-r) evals_{0b} + r evals_{1b}.
inline ExtMle fold_variable(const ExtMle& p, const Fp2& r) {
    if (p.num_vars < 1) throw std::invalid_argument("fold_variable: constant polynomial");
    std::size_t half = p.evals.size() >> 1;
    std::vector<Fp2> out(half);
    for (std::size_t i = 0; i < half; i++)
        out[i] = p.evals[i] + r * (p.evals[i + half] - p.evals[i]);
    return ExtMle(p.num_vars - 1, std::move(out));
}

inline ExtMle fold_variable(const BaseMle& p, const Fp2& r) { return fold_variable(to_ext(p), r); }

template <class F>
inline F sum_over_cube(const Mle<F>& p) {
    F acc = F::zero();
    for (const auto& e : p.evals) acc += e;
    return acc;
}

/// Folds the leading `front.size()` variables of p at `front`, leaving an MLE
/// over the trailing variables. Used to build row/column restrictions like
/// W(r, .) from a matrix MLE.
template <class F>
inline ExtMle partial_fold(const Mle<F>& p, const std::vector<Fp2>& front) {
    if (static_cast<int>(front.size()) > p.num_vars)
        throw std::invalid_argument("partial_fold: too many coordinates");
    ExtMle cur = [&] {
        if constexpr (std::is_same_v<F, Fp>) return to_ext(p);
        else return p;
    }();
    for (const auto& r : front) cur = fold_variable(cur, r);
    return cur;
}

inline std::vector<Fp2> concat_point(const std::vector<Fp2>& a, const std::vector<Fp2>& b) {
    std::vector<Fp2> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// Boolean point (b_1..b_k) for index b under the MSB-first convention.
inline std::vector<Fp2> boolean_point(std::size_t index, int k) {
    std::vector<Fp2> pt(k);
    for (int i = 0; i < k; i++)
        pt[i] = (index >> (k - 1 - i)) & 1 ? Fp2::one() : Fp2::zero();
    return pt;
}

/// Aligned segment of a longer vector: `offset` is a multiple of the segment's
/// padded power-of-two length. The MLE of the whole vector at point r
/// decomposes as sum over segments of prefix_weight(r) * segment_mle(suffix).
struct Segment {
    std::size_t offset = 0;  // element offset, aligned to 2^vars
    int vars = 0;            // log2 of padded segment length
};

/// Weight multiplying a segment's own MLE inside the containing vector's MLE:
/// the product over the leading (total_vars - seg.vars) coordinates of
/// "coordinate matches the fixed prefix bit of seg.offset".
inline Fp2 segment_prefix_weight(const Segment& seg, int total_vars, const std::vector<Fp2>& point) {
    if (static_cast<int>(point.size()) != total_vars)
        throw std::invalid_argument("segment_prefix_weight: dimension mismatch");
    if (seg.offset % (std::size_t{1} << seg.vars) != 0)
        throw std::invalid_argument("segment_prefix_weight: unaligned segment");
    int prefix_bits = total_vars - seg.vars;
    std::size_t prefix = seg.offset >> seg.vars;
    Fp2 w = Fp2::one();
    for (int i = 0; i < prefix_bits; i++) {
        bool bit = (prefix >> (prefix_bits - 1 - i)) & 1;
        w *= bit ? point[i] : Fp2::one() - point[i];
    }
    return w;
}

inline std::vector<Fp2> segment_sub_point(const Segment& seg, const std::vector<Fp2>& point) {
    return std::vector<Fp2>(point.end() - seg.vars, point.end());
}

}  // namespace fairzk
