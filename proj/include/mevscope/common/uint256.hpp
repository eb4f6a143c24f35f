// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace mevscope {

//! Unsigned 256-bit integer with exact, overflow-checked arithmetic.
//! Limbs are little-endian (limb 0 is least significant).
class Uint256 {
  public:
    constexpr Uint256() noexcept = default;
    constexpr Uint256(std::uint64_t v) noexcept : limbs_{v, 0, 0, 0} {}  // NOLINT(implicit)
    constexpr Uint256(std::uint64_t l3, std::uint64_t l2, std::uint64_t l1, std::uint64_t l0) noexcept
        : limbs_{l0, l1, l2, l3} {}

    static Uint256 max() noexcept { return {~0ULL, ~0ULL, ~0ULL, ~0ULL}; }

    //! Parses a base-10 string. Returns nullopt on empty input, stray characters or overflow.
    static std::optional<Uint256> from_decimal(std::string_view s);
    //! Parses hex with optional 0x prefix, at most 64 digits.
    static std::optional<Uint256> from_hex(std::string_view s);
    static Uint256 from_be_bytes(std::span<const std::uint8_t, 32> bytes) noexcept;

    [[nodiscard]] std::array<std::uint8_t, 32> to_be_bytes() const noexcept;
    [[nodiscard]] std::string to_decimal() const;
    [[nodiscard]] std::string to_hex() const;
    [[nodiscard]] double to_double() const noexcept;

    [[nodiscard]] bool is_zero() const noexcept { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }
    //! True when the value, read as two's complement, is negative.
    [[nodiscard]] bool sign_bit() const noexcept { return (limbs_[3] >> 63) != 0; }
    //! Two's complement negation modulo 2^256.
    [[nodiscard]] Uint256 negated() const noexcept;
    [[nodiscard]] std::uint64_t limb(std::size_t i) const noexcept { return limbs_[i]; }
    [[nodiscard]] bool fits_u64() const noexcept { return (limbs_[1] | limbs_[2] | limbs_[3]) == 0; }

    //! Throw OverflowError instead of wrapping.
    [[nodiscard]] Uint256 checked_add(const Uint256& rhs) const;
    [[nodiscard]] Uint256 checked_sub(const Uint256& rhs) const;
    [[nodiscard]] Uint256 checked_mul(const Uint256& rhs) const;

    //! Modular arithmetic, used where wraparound is the intended semantics.
    [[nodiscard]] Uint256 wrapping_add(const Uint256& rhs) const noexcept;
    [[nodiscard]] Uint256 wrapping_sub(const Uint256& rhs) const noexcept;

    friend bool operator==(const Uint256&, const Uint256&) noexcept = default;
    friend std::strong_ordering operator<=>(const Uint256& a, const Uint256& b) noexcept {
        for (int i = 3; i >= 0; --i) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

  private:
    std::array<std::uint64_t, 4> limbs_{};
};

//! Sign and magnitude pair for profits and net balance changes.
struct SignedAmount {
    bool negative{false};
    Uint256 magnitude;

    static SignedAmount difference(const Uint256& gained, const Uint256& spent) {
        if (gained >= spent) return {false, gained.checked_sub(spent)};
        return {true, spent.checked_sub(gained)};
    }
    [[nodiscard]] bool is_negative() const noexcept { return negative && !magnitude.is_zero(); }
    [[nodiscard]] std::string to_decimal() const { return (is_negative() ? "-" : "") + magnitude.to_decimal(); }
    static std::optional<SignedAmount> from_decimal(std::string_view s);

    friend bool operator==(const SignedAmount& a, const SignedAmount& b) noexcept {
        return a.magnitude == b.magnitude && (a.is_negative() == b.is_negative());
    }
};

}  // namespace mevscope
