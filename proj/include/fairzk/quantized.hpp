#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fairzk/field.hpp"

namespace fairzk {

/// Fixed-point parameters: q_int bits for the integer part, q_frac bits for
/// the fractional part, q = q_int + q_frac total magnitude bits.
struct QuantParams {
    unsigned q_int = 16;
    unsigned q_frac = 16;

    unsigned q() const { return q_int + q_frac; }
    double resolution() const { return std::ldexp(1.0, -static_cast<int>(q_frac)); }
    std::uint64_t scale_u64() const { return 1ULL << q_frac; }

    bool operator==(const QuantParams& o) const { return q_int == o.q_int && q_frac == o.q_frac; }
    bool operator!=(const QuantParams& o) const { return !(*this == o); }
};

/// Signed fixed-point real encoded in F_p. Non-negative reals map to
/// [0, 2^q - 1]; negative reals map to [p - (2^q - 1), p - 1]. The sign is
/// carried separately as 1 or p-1 so that |v| = sign * v in the field.
struct QuantizedValue {
    Fp encoding;
    Fp sign;          // 1 or p-1
    QuantParams params;
};

/// Rounds |r| * 2^q_frac half away from zero; requires |r| < 2^q_int.
inline std::int64_t quantize_to_int(double r, const QuantParams& p) {
    if (!std::isfinite(r)) throw std::range_error("quantize: non-finite value");
    double mag = std::fabs(r);
    if (mag >= std::ldexp(1.0, static_cast<int>(p.q_int)))
        throw std::range_error("quantize: magnitude exceeds 2^q_int");
    double scaled = std::floor(mag * std::ldexp(1.0, static_cast<int>(p.q_frac)) + 0.5);
    std::int64_t m = static_cast<std::int64_t>(scaled);
    if (m >= (1LL << p.q())) m = (1LL << p.q()) - 1;  // boundary rounding up
    return r < 0 ? -m : m;
}

inline QuantizedValue quantize(double r, const QuantParams& p) {
    std::int64_t v = quantize_to_int(r, p);
    QuantizedValue q;
    q.encoding = Fp::from_i64(v);
    q.sign = (v < 0) ? Fp(Fp::MOD - 1) : Fp::one();
    q.params = p;
    return q;
}

inline QuantizedValue quantize(double r, unsigned q_int, unsigned q_frac) {
    return quantize(r, QuantParams{q_int, q_frac});
}

/// Signed integer encoded by a field element under the scheme above.
/// Rejects encodings outside [-(2^q - 1), 2^q - 1].
inline std::int64_t decode_signed(const Fp& enc, unsigned q) {
    std::uint64_t bound = (q >= 64) ? ~0ULL : ((1ULL << q) - 1);
    std::uint64_t v = enc.value();
    if (v <= bound) return static_cast<std::int64_t>(v);
    std::uint64_t neg = Fp::MOD - v;
    if (neg <= bound) return -static_cast<std::int64_t>(neg);
    throw std::range_error("decode_signed: encoding outside legal signed range");
}

inline double dequantize(const Fp& enc, const QuantParams& p) {
    std::int64_t v = decode_signed(enc, p.q());
    return std::ldexp(static_cast<double>(v), -static_cast<int>(p.q_frac));
}

inline double dequantize(const QuantizedValue& q) {
    double r = dequantize(q.encoding, q.params);
    bool neg_sign = (q.sign.value() == Fp::MOD - 1);
    if (q.sign.value() != 1 && !neg_sign) throw std::range_error("dequantize: corrupt sign");
    if ((r < 0) != neg_sign && r != 0.0) throw std::range_error("dequantize: sign/value mismatch");
    return r;
}

/// Floor-divide a non-negative scaled product by 2^shift: c = qhat*2^shift + e.
struct TruncResult {
    std::int64_t quotient;
    std::int64_t remainder;
};

inline TruncResult trunc_div(std::int64_t magnitude, unsigned shift) {
    if (magnitude < 0) throw std::invalid_argument("trunc_div: negative magnitude");
    return TruncResult{magnitude >> shift, magnitude & ((1LL << shift) - 1)};
}

}  // namespace fairzk
