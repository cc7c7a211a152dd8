#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairzk {

/// Prime field F_p for the 64-bit Goldilocks prime p = 2^64 - 2^32 + 1.
/// Elements are kept in canonical form (value < p) at all API boundaries.
class Fp {
public:
    static constexpr std::uint64_t MOD = 0xFFFFFFFF00000001ULL;
    // 2^64 mod p = 2^32 - 1, used by the reduction below.
    static constexpr std::uint64_t EPSILON = 0xFFFFFFFFULL;

    constexpr Fp() : v_(0) {}
    constexpr explicit Fp(std::uint64_t v) : v_(v >= MOD ? v - MOD : v) {}

    static constexpr Fp zero() { return Fp(); }
    static constexpr Fp one() { return Fp(1); }

    static Fp from_u64(std::uint64_t v) { return Fp(v % MOD == v ? v : v % MOD); }
    static Fp from_i64(std::int64_t v) {
        if (v >= 0) return Fp(static_cast<std::uint64_t>(v));
        std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
        return Fp(MOD - (mag % MOD == mag ? mag : mag % MOD));
    }
    /// Maps a signed 128-bit integer into the field; |v| must be < p.
    static Fp from_i128(__int128 v) {
        if (v >= 0) {
            if (static_cast<unsigned __int128>(v) >= MOD) throw std::overflow_error("from_i128: magnitude >= p");
            return Fp(static_cast<std::uint64_t>(v));
        }
        unsigned __int128 mag = static_cast<unsigned __int128>(-v);
        if (mag >= MOD) throw std::overflow_error("from_i128: magnitude >= p");
        return Fp(MOD - static_cast<std::uint64_t>(mag));
    }

    std::uint64_t value() const { return v_; }

    /// Interprets elements in (p/2, p) as negatives. Only meaningful for
    /// quantities known to be small in magnitude.
    __int128 to_signed() const {
        if (v_ > MOD / 2) return static_cast<__int128>(v_) - static_cast<__int128>(MOD);
        return static_cast<__int128>(v_);
    }

    Fp& operator+=(const Fp& o) {
        std::uint64_t s = v_ + o.v_;
        // carry implies s wrapped past 2^64; 2^64 = p + EPSILON
        if (s < v_ || s >= MOD) s += EPSILON;  // equivalent to s -= MOD with wrap
        v_ = s;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        std::uint64_t d = v_ - o.v_;
        if (v_ < o.v_) d -= EPSILON;  // borrow: add p back (wrapping)
        v_ = d;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        v_ = reduce128(static_cast<unsigned __int128>(v_) * o.v_);
        return *this;
    }

    friend Fp operator+(Fp a, const Fp& b) { a += b; return a; }
    friend Fp operator-(Fp a, const Fp& b) { a -= b; return a; }
    friend Fp operator*(Fp a, const Fp& b) { a *= b; return a; }
    Fp operator-() const { return v_ == 0 ? Fp() : Fp(MOD - v_); }

    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }
    bool is_zero() const { return v_ == 0; }

    Fp pow(std::uint64_t e) const {
        Fp base = *this, acc = one();
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp::inverse of zero");
        return pow(MOD - 2);
    }

    static Fp two_pow(unsigned k) {
        Fp r = one();
        Fp two(2);
        while (k >= 32) { r *= Fp(1ULL << 32); k -= 32; }
        if (k) r *= Fp(1ULL << k);
        return r;
    }

    void to_bytes(std::uint8_t out[8]) const {
        for (int i = 0; i < 8; i++) out[i] = static_cast<std::uint8_t>(v_ >> (8 * i));
    }
    static Fp from_bytes(const std::uint8_t in[8]) {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
        if (v >= MOD) throw std::invalid_argument("Fp::from_bytes: non-canonical value");
        return Fp(v);
    }

private:
    static std::uint64_t reduce128(unsigned __int128 x) {
        // x = hi*2^64 + lo with 2^64 = 2^32 - 1 (mod p).
        std::uint64_t lo = static_cast<std::uint64_t>(x);
        std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
        std::uint64_t hi_hi = hi >> 32;
        std::uint64_t hi_lo = hi & EPSILON;

        std::uint64_t t0 = lo - hi_hi;
        if (lo < hi_hi) t0 -= EPSILON;        // borrow
        std::uint64_t t1 = hi_lo * EPSILON;   // < 2^64
        std::uint64_t r = t0 + t1;
        if (r < t1 || r >= MOD) r += EPSILON; // carry or >= p
        return r;
    }

    std::uint64_t v_;
};

/// Quadratic extension F_{p^2} = F_p[X]/(X^2 - 7). 7 is a quadratic
/// non-residue mod p, so the polynomial is irreducible; the constant is part
/// of the public protocol parameters.
class Fp2 {
public:
    static constexpr std::uint64_t NON_RESIDUE = 7;

    constexpr Fp2() = default;
    constexpr Fp2(Fp c0, Fp c1) : c0_(c0), c1_(c1) {}
    explicit constexpr Fp2(Fp c0) : c0_(c0) {}
    static Fp2 from_base(const Fp& a) { return Fp2(a, Fp::zero()); }

    static constexpr Fp2 zero() { return Fp2(); }
    static Fp2 one() { return Fp2(Fp::one(), Fp::zero()); }

    const Fp& c0() const { return c0_; }
    const Fp& c1() const { return c1_; }

    Fp2& operator+=(const Fp2& o) { c0_ += o.c0_; c1_ += o.c1_; return *this; }
    Fp2& operator-=(const Fp2& o) { c0_ -= o.c0_; c1_ -= o.c1_; return *this; }
    Fp2& operator*=(const Fp2& o) {
        Fp a = c0_ * o.c0_;
        Fp b = c1_ * o.c1_;
        Fp cross = (c0_ + c1_) * (o.c0_ + o.c1_) - a - b;
        c0_ = a + b * Fp(NON_RESIDUE);
        c1_ = cross;
        return *this;
    }

    friend Fp2 operator+(Fp2 a, const Fp2& b) { a += b; return a; }
    friend Fp2 operator-(Fp2 a, const Fp2& b) { a -= b; return a; }
    friend Fp2 operator*(Fp2 a, const Fp2& b) { a *= b; return a; }
    Fp2 operator-() const { return Fp2(-c0_, -c1_); }

    bool operator==(const Fp2& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }
    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }

    Fp2 inverse() const {
        // (c0 + c1 X)^-1 = (c0 - c1 X) / (c0^2 - 7 c1^2)
        Fp norm = c0_ * c0_ - Fp(NON_RESIDUE) * c1_ * c1_;
        if (norm.is_zero()) throw std::domain_error("Fp2::inverse of zero");
        Fp inv = norm.inverse();
        return Fp2(c0_ * inv, -(c1_ * inv));
    }

    Fp2 pow(std::uint64_t e) const {
        Fp2 base = *this, acc = one();
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    void to_bytes(std::uint8_t out[16]) const {
        c0_.to_bytes(out);
        c1_.to_bytes(out + 8);
    }
    static Fp2 from_bytes(const std::uint8_t in[16]) {
        return Fp2(Fp::from_bytes(in), Fp::from_bytes(in + 8));
    }

private:
    Fp c0_, c1_;
};

inline Fp2 operator*(const Fp& a, const Fp2& b) { return Fp2(a * b.c0(), a * b.c1()); }
inline Fp2 operator*(const Fp2& a, const Fp& b) { return b * a; }
inline Fp2& operator*=(Fp2& a, const Fp& b) { a = a * b; return a; }

/// Batch inversion (Montgomery trick): one inversion + 3(n-1) multiplications.
template <class F>
inline void batch_inverse(std::vector<F>& xs) {
    const std::size_t n = xs.size();
    if (n == 0) return;
    std::vector<F> prefix(n);
    F acc = F::one();
    for (std::size_t i = 0; i < n; i++) {
        if (xs[i].is_zero()) throw std::domain_error("batch_inverse: zero element");
        prefix[i] = acc;
        acc *= xs[i];
    }
    F inv = acc.inverse();
    for (std::size_t i = n; i-- > 0;) {
        F x = xs[i];
        xs[i] = inv * prefix[i];
        inv *= x;
    }
}

inline void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; i++) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void append_fp(std::vector<std::uint8_t>& out, const Fp& x) { append_u64_le(out, x.value()); }

inline void append_fp2(std::vector<std::uint8_t>& out, const Fp2& x) {
    append_fp(out, x.c0());
    append_fp(out, x.c1());
}

}  // namespace fairzk
