// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <mevscope/common/uint256.hpp>

namespace mevscope {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

//! Lowercase 0x-prefixed hex.
std::string to_hex(ByteView bytes);
//! Accepts an optional 0x prefix and either case. Returns nullopt on odd length or bad digits.
std::optional<Bytes> from_hex(std::string_view hex);

//! 20-byte account or contract address.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    //! Requires exactly 40 hex digits after the 0x prefix.
    static std::optional<Address> from_hex(std::string_view hex);
    //! The low 20 bytes of a big-endian 32-byte word.
    static Address from_word(std::span<const std::uint8_t, 32> word) noexcept;

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] std::string to_hex() const;
    //! First two bytes in hex (e.g. "0x69d9"), for human-facing renderings.
    [[nodiscard]] std::string short_hex() const;

    friend auto operator<=>(const Address&, const Address&) = default;
};

//! 32-byte word: log topics, data words, transaction hashes.
struct Bytes32 {
    std::array<std::uint8_t, 32> bytes{};

    static std::optional<Bytes32> from_hex(std::string_view hex);
    static Bytes32 from_uint(const Uint256& v) noexcept;
    static Bytes32 from_address(const Address& a) noexcept;

    [[nodiscard]] std::string to_hex() const;
    [[nodiscard]] Uint256 to_uint() const noexcept { return Uint256::from_be_bytes(bytes); }
    [[nodiscard]] Address low_address() const noexcept { return Address::from_word(bytes); }

    friend auto operator<=>(const Bytes32&, const Bytes32&) = default;
};

using TxHash = Bytes32;

}  // namespace mevscope

template <>
struct std::hash<mevscope::Address> {
    std::size_t operator()(const mevscope::Address& a) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto b : a.bytes) h = (h ^ b) * 1099511628211ULL;
        return h;
    }
};

template <>
struct std::hash<mevscope::Bytes32> {
    std::size_t operator()(const mevscope::Bytes32& w) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto b : w.bytes) h = (h ^ b) * 1099511628211ULL;
        return h;
    }
};
