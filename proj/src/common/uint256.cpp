// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/common/errors.hpp>
#include <mevscope/common/uint256.hpp>

#include <algorithm>
#include <cmath>

namespace mevscope {

namespace {

    using u128 = unsigned __int128;

    int hex_digit(char c) noexcept {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    // Multiplies in place by a small factor and adds a small term; returns false on overflow.
    bool mul_add_small(std::array<std::uint64_t, 4>& limbs, std::uint64_t mul, std::uint64_t add) noexcept {
        u128 carry = add;
        for (auto& limb : limbs) {
            const u128 cur = static_cast<u128>(limb) * mul + carry;
            limb = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        return carry == 0;
    }

}  // namespace

std::optional<Uint256> Uint256::from_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::array<std::uint64_t, 4> limbs{};
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        if (!mul_add_small(limbs, 10, static_cast<std::uint64_t>(c - '0'))) return std::nullopt;
    }
    return Uint256{limbs[3], limbs[2], limbs[1], limbs[0]};
}

std::optional<Uint256> Uint256::from_hex(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    if (s.empty() || s.size() > 64) return std::nullopt;
    std::array<std::uint64_t, 4> limbs{};
    for (char c : s) {
        const int d = hex_digit(c);
        if (d < 0) return std::nullopt;
        mul_add_small(limbs, 16, static_cast<std::uint64_t>(d));
    }
    return Uint256{limbs[3], limbs[2], limbs[1], limbs[0]};
}

Uint256 Uint256::from_be_bytes(std::span<const std::uint8_t, 32> bytes) noexcept {
    Uint256 out;
    for (std::size_t i = 0; i < 32; ++i) {
        const std::size_t limb = 3 - i / 8;
        out.limbs_[limb] = (out.limbs_[limb] << 8) | bytes[i];
    }
    return out;
}

std::array<std::uint8_t, 32> Uint256::to_be_bytes() const noexcept {
    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < 32; ++i) {
        const std::size_t limb = 3 - i / 8;
        const unsigned shift = static_cast<unsigned>(56 - 8 * (i % 8));
        out[i] = static_cast<std::uint8_t>(limbs_[limb] >> shift);
    }
    return out;
}

std::string Uint256::to_decimal() const {
    if (is_zero()) return "0";
    std::array<std::uint64_t, 4> limbs = limbs_;
    std::string digits;
    auto nonzero = [&] { return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) != 0; };
    while (nonzero()) {
        // Divide by 10^19 to peel off chunks of digits.
        constexpr std::uint64_t kChunk = 10'000'000'000'000'000'000ULL;
        u128 rem = 0;
        for (int i = 3; i >= 0; --i) {
            const u128 cur = (rem << 64) | limbs[i];
            limbs[i] = static_cast<std::uint64_t>(cur / kChunk);
            rem = cur % kChunk;
        }
        auto chunk = static_cast<std::uint64_t>(rem);
        for (int d = 0; d < 19; ++d) {
            digits.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
            if (!nonzero() && chunk == 0) break;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::string Uint256::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "0x";
    bool leading = true;
    for (int i = 3; i >= 0; --i) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            const auto nibble = static_cast<unsigned>((limbs_[i] >> shift) & 0xF);
            if (leading && nibble == 0) continue;
            leading = false;
            out.push_back(kDigits[nibble]);
        }
    }
    if (leading) out.push_back('0');
    return out;
}

double Uint256::to_double() const noexcept {
    double out = 0.0;
    for (int i = 3; i >= 0; --i) out = out * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
    return out;
}

Uint256 Uint256::negated() const noexcept {
    Uint256 inv{~limbs_[3], ~limbs_[2], ~limbs_[1], ~limbs_[0]};
    return inv.wrapping_add(Uint256{1});
}

Uint256 Uint256::wrapping_add(const Uint256& rhs) const noexcept {
    Uint256 out;
    u128 carry = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const u128 cur = static_cast<u128>(limbs_[i]) + rhs.limbs_[i] + carry;
        out.limbs_[i] = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
    }
    return out;
}

Uint256 Uint256::wrapping_sub(const Uint256& rhs) const noexcept { return wrapping_add(rhs.negated()); }

Uint256 Uint256::checked_add(const Uint256& rhs) const {
    Uint256 out = wrapping_add(rhs);
    if (out < *this) throw OverflowError("uint256 addition overflow");
    return out;
}

Uint256 Uint256::checked_sub(const Uint256& rhs) const {
    if (rhs > *this) throw OverflowError("uint256 subtraction underflow");
    return wrapping_sub(rhs);
}

Uint256 Uint256::checked_mul(const Uint256& rhs) const {
    std::array<std::uint64_t, 8> wide{};
    for (std::size_t i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            const u128 cur = static_cast<u128>(limbs_[i]) * rhs.limbs_[j] + wide[i + j] + carry;
            wide[i + j] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        wide[i + 4] = static_cast<std::uint64_t>(carry);
    }
    if ((wide[4] | wide[5] | wide[6] | wide[7]) != 0) throw OverflowError("uint256 multiplication overflow");
    return Uint256{wide[3], wide[2], wide[1], wide[0]};
}

std::optional<SignedAmount> SignedAmount::from_decimal(std::string_view s) {
    bool negative = false;
    if (s.starts_with('-')) {
        negative = true;
        s.remove_prefix(1);
    }
    auto magnitude = Uint256::from_decimal(s);
    if (!magnitude) return std::nullopt;
    return SignedAmount{negative, *magnitude};
}

}  // namespace mevscope
