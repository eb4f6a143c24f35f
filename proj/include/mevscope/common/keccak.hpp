// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include <mevscope/common/types.hpp>

namespace mevscope {

//! Ethereum Keccak-256 (original padding, not FIPS-202 SHA3).
Bytes32 keccak256(ByteView data) noexcept;

inline Bytes32 keccak256(std::string_view text) noexcept {
    return keccak256(ByteView{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

//! topic0 of an event given its canonical declaration, e.g. "Transfer(address,address,uint256)".
inline Bytes32 event_signature_hash(std::string_view declaration) noexcept { return keccak256(declaration); }

}  // namespace mevscope
