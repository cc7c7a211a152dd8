#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairzk/field.hpp"
#include "fairzk/sha256.hpp"

namespace fairzk {

/// Fiat-Shamir transcript: a hash sponge over SHA-256 with per-message
/// domain-separation labels. Identical message sequences yield identical
/// challenges; any reordering or tampering changes every later challenge.
class Transcript {
public:
    explicit Transcript(const std::string& protocol_label) {
        state_.fill(0);
        absorb_raw("init", reinterpret_cast<const std::uint8_t*>(protocol_label.data()),
                   protocol_label.size());
    }

    void absorb_bytes(const std::string& label, const std::uint8_t* data, std::size_t n) {
        absorb_raw(label, data, n);
    }
    void absorb_bytes(const std::string& label, const std::vector<std::uint8_t>& v) {
        absorb_raw(label, v.data(), v.size());
    }
    void absorb_u64(const std::string& label, std::uint64_t v) {
        std::uint8_t b[8];
        for (int i = 0; i < 8; i++) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
        absorb_raw(label, b, 8);
    }
    void absorb_fp(const std::string& label, const Fp& x) { absorb_u64(label, x.value()); }
    void absorb_fp2(const std::string& label, const Fp2& x) {
        std::uint8_t b[16];
        x.to_bytes(b);
        absorb_raw(label, b, 16);
    }
    void absorb_fp2_vec(const std::string& label, const std::vector<Fp2>& xs) {
        std::vector<std::uint8_t> bytes;
        bytes.reserve(xs.size() * 16);
        for (const auto& x : xs) append_fp2(bytes, x);
        absorb_raw(label, bytes.data(), bytes.size());
    }
    void absorb_digest(const std::string& label, const Sha256::Digest& d) {
        absorb_raw(label, d.data(), d.size());
    }

    /// Base-field challenge: 8 squeezed bytes reduced mod p (bias ~2^-32).
    Fp challenge_fp(const std::string& label) {
        auto d = squeeze(label);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(d[i]) << (8 * i);
        return Fp::from_u64(v);
    }

    /// Extension-field challenge; challenges are drawn from F_{p^2} so a
    /// degree-3 sumcheck round has soundness error <= 3/2^128.
    Fp2 challenge_fp2(const std::string& label) {
        auto d = squeeze(label);
        std::uint64_t v0 = 0, v1 = 0;
        for (int i = 0; i < 8; i++) v0 |= static_cast<std::uint64_t>(d[i]) << (8 * i);
        for (int i = 0; i < 8; i++) v1 |= static_cast<std::uint64_t>(d[8 + i]) << (8 * i);
        return Fp2(Fp::from_u64(v0), Fp::from_u64(v1));
    }

    std::vector<Fp2> challenge_fp2_vec(const std::string& label, std::size_t n) {
        std::vector<Fp2> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; i++) out.push_back(challenge_fp2(label));
        return out;
    }

private:
    void absorb_raw(const std::string& label, const std::uint8_t* data, std::size_t n) {
        Sha256 h;
        h.update(state_.data(), state_.size());
        std::uint8_t tag = 0x01;
        h.update(&tag, 1);
        std::uint8_t ll = static_cast<std::uint8_t>(label.size());
        h.update(&ll, 1);
        h.update(label);
        std::uint8_t lenb[8];
        for (int i = 0; i < 8; i++) lenb[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(n) >> (8 * i));
        h.update(lenb, 8);
        h.update(data, n);
        state_ = h.finalize();
    }

    Sha256::Digest squeeze(const std::string& label) {
        Sha256 h;
        h.update(state_.data(), state_.size());
        std::uint8_t tag = 0x02;
        h.update(&tag, 1);
        std::uint8_t ll = static_cast<std::uint8_t>(label.size());
        h.update(&ll, 1);
        h.update(label);
        std::uint8_t ctrb[8];
        for (int i = 0; i < 8; i++) ctrb[i] = static_cast<std::uint8_t>(ctr_ >> (8 * i));
        h.update(ctrb, 8);
        auto out = h.finalize();
        ctr_++;
        state_ = Sha256::hash(out.data(), out.size());
        return out;
    }

    Sha256::Digest state_;
    std::uint64_t ctr_ = 0;
};

}  // namespace fairzk
