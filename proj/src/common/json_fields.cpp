// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/common/json_fields.hpp>

#include <mevscope/common/errors.hpp>

namespace mevscope::jsonio {

namespace {

    [[noreturn]] void fail(const std::string& path, std::string_view expected) {
        throw ParseError(path + ": expected " + std::string{expected});
    }

}  // namespace

json parse_document(std::string_view document, std::string_view what) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string{what} + ": " + e.what());
    }
}

const json& field(const json& obj, std::string_view key, const std::string& path) {
    if (!obj.is_object()) fail(path, "object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(child(path, key) + ": missing field");
    return *it;
}

std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "string");
    return v.get<std::string>();
}

Address address_at(const json& v, const std::string& path) {
    const auto a = Address::from_hex(string_at(v, path));
    if (!a) fail(path, "0x-prefixed 20-byte hex address");
    return *a;
}

Bytes32 word_at(const json& v, const std::string& path) {
    const auto w = Bytes32::from_hex(string_at(v, path));
    if (!w) fail(path, "0x-prefixed 32-byte hex word");
    return *w;
}

Bytes bytes_at(const json& v, const std::string& path) {
    const auto s = string_at(v, path);
    if (!(s.starts_with("0x") || s.starts_with("0X"))) fail(path, "0x-prefixed hex bytes");
    auto b = from_hex(s);
    if (!b) fail(path, "0x-prefixed hex bytes");
    return std::move(*b);
}

Uint256 decimal_at(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return Uint256{v.get<std::uint64_t>()};
    const auto n = Uint256::from_decimal(string_at(v, path));
    if (!n) fail(path, "decimal string");
    return *n;
}

std::uint64_t u64_at(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        const auto n = s.starts_with("0x") ? Uint256::from_hex(s) : Uint256::from_decimal(s);
        if (n && n->fits_u64()) return n->limb(0);
    }
    fail(path, "unsigned integer");
}

}  // namespace mevscope::jsonio
