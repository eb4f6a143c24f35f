// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include <mevscope/common/types.hpp>

namespace mevscope::jsonio {

using json = nlohmann::json;

//! Parses a whole document; syntax errors become ParseError.
json parse_document(std::string_view document, std::string_view what);

//! Field accessors for documents whose errors must name the offending path,
//! e.g. "records[3].topics[0]". All throw ParseError.
const json& field(const json& obj, std::string_view key, const std::string& path);
std::string string_at(const json& v, const std::string& path);
Address address_at(const json& v, const std::string& path);
Bytes32 word_at(const json& v, const std::string& path);
Bytes bytes_at(const json& v, const std::string& path);
//! Accepts a decimal string; a non-negative integer literal is also tolerated.
Uint256 decimal_at(const json& v, const std::string& path);
//! Accepts an integer literal, a decimal string or a 0x-prefixed hex quantity.
std::uint64_t u64_at(const json& v, const std::string& path);

inline std::string child(const std::string& path, std::string_view key) {
    return path.empty() ? std::string{key} : path + "." + std::string{key};
}
inline std::string element(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

}  // namespace mevscope::jsonio
