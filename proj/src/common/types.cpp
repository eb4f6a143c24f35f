// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/common/types.hpp>

#include <algorithm>

namespace mevscope {

namespace {

    int nibble(char c) noexcept {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    std::string_view strip_prefix(std::string_view hex) noexcept {
        if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
        return hex;
    }

    template <std::size_t N>
    bool decode_fixed(std::string_view hex, std::array<std::uint8_t, N>& out) noexcept {
        if (!(hex.starts_with("0x") || hex.starts_with("0X"))) return false;
        hex = strip_prefix(hex);
        if (hex.size() != 2 * N) return false;
        for (std::size_t i = 0; i < N; ++i) {
            const int hi = nibble(hex[2 * i]);
            const int lo = nibble(hex[2 * i + 1]);
            if (hi < 0 || lo < 0) return false;
            out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
        }
        return true;
    }

}  // namespace

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 + 2 * bytes.size());
    out += "0x";
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xF]);
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0) return std::nullopt;
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::optional<Address> Address::from_hex(std::string_view hex) {
    Address a;
    if (!decode_fixed(hex, a.bytes)) return std::nullopt;
    return a;
}

Address Address::from_word(std::span<const std::uint8_t, 32> word) noexcept {
    Address a;
    std::copy(word.begin() + 12, word.end(), a.bytes.begin());
    return a;
}

bool Address::is_zero() const noexcept {
    return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::string Address::to_hex() const { return mevscope::to_hex(bytes); }

std::string Address::short_hex() const { return mevscope::to_hex(std::span{bytes}.first(2)); }

std::optional<Bytes32> Bytes32::from_hex(std::string_view hex) {
    Bytes32 w;
    if (!decode_fixed(hex, w.bytes)) return std::nullopt;
    return w;
}

Bytes32 Bytes32::from_uint(const Uint256& v) noexcept { return Bytes32{v.to_be_bytes()}; }

Bytes32 Bytes32::from_address(const Address& a) noexcept {
    Bytes32 w;
    std::copy(a.bytes.begin(), a.bytes.end(), w.bytes.begin() + 12);
    return w;
}

std::string Bytes32::to_hex() const { return mevscope::to_hex(bytes); }

}  // namespace mevscope
