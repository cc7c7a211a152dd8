#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairzk/field.hpp"
#include "fairzk/sha256.hpp"

namespace fairzk {

/// Thrown on any structural problem while reading proof bytes; verifiers
/// convert it into a REJECT with the message as the reason.
struct ProofFormatError : std::runtime_error {
    explicit ProofFormatError(const std::string& what) : std::runtime_error(what) {}
};

class ProofWriter {
public:
    std::vector<std::uint8_t> bytes;

    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; i++) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; i++) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) { append_u64_le(bytes, v); }
    void fp(const Fp& x) { append_fp(bytes, x); }
    void fp2(const Fp2& x) { append_fp2(bytes, x); }
    void fp2_vec(const std::vector<Fp2>& xs) {
        for (const auto& x : xs) fp2(x);
    }
    void digest(const Sha256::Digest& d) { bytes.insert(bytes.end(), d.begin(), d.end()); }
    void raw(const std::uint8_t* data, std::size_t n) { bytes.insert(bytes.end(), data, data + n); }
};

class ProofReader {
public:
    ProofReader(const std::uint8_t* data, std::size_t n) : data_(data), size_(n) {}
    explicit ProofReader(const std::vector<std::uint8_t>& v) : data_(v.data()), size_(v.size()) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const std::uint8_t* p = take(2);
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }
    std::uint32_t u32() {
        const std::uint8_t* p = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        const std::uint8_t* p = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        return v;
    }
    Fp fp() {
        try {
            return Fp::from_bytes(take(8));
        } catch (const std::invalid_argument& e) {
            throw ProofFormatError(e.what());
        }
    }
    Fp2 fp2() {
        Fp c0 = fp();
        Fp c1 = fp();
        return Fp2(c0, c1);
    }
    std::vector<Fp2> fp2_vec(std::size_t n) {
        std::vector<Fp2> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; i++) out.push_back(fp2());
        return out;
    }
    Sha256::Digest digest() {
        Sha256::Digest d;
        const std::uint8_t* p = take(32);
        std::copy(p, p + 32, d.begin());
        return d;
    }
    const std::uint8_t* take(std::size_t n) {
        if (pos_ + n > size_) throw ProofFormatError("unexpected end of proof");
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    bool exhausted() const { return pos_ == size_; }
    std::size_t remaining() const { return size_ - pos_; }

private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

}  // namespace fairzk
