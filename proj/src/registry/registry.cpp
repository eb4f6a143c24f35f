// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/registry/registry.hpp>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/common/json_fields.hpp>
#include <mevscope/common/keccak.hpp>

namespace mevscope::registry {

using jsonio::json;

namespace {

    constexpr std::array<std::string_view, kAllActionTypes.size()> kNames{
        "Swap",     "AddLiquidity", "RemoveLiquidity", "Borrowing",   "Leverage",
        "Liquidation", "NFT-Minting", "NFT-Burning",   "Airdrop",     "Rebasing",
    };

}  // namespace

std::string_view to_string(ActionType t) noexcept { return kNames[ordinal(t)]; }

std::optional<ActionType> action_type_from_string(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return kAllActionTypes[i];
    }
    return std::nullopt;
}

const Bytes32& transfer_event_hash() noexcept {
    static const Bytes32 hash = event_signature_hash("Transfer(address,address,uint256)");
    return hash;
}

EventRegistry::EventRegistry(std::vector<RegistryEntry> entries) : entries_{std::move(entries)} {
    for (const auto& e : entries_) {
        if (e.signature_hash == transfer_event_hash()) {
            throw SchemaError("registry: the Transfer event is handled structurally and cannot be registered");
        }
        if (!by_hash_.emplace(e.signature_hash, e.action).second) {
            throw ConflictError("registry: duplicate signature hash " + e.signature_hash.to_hex());
        }
    }
}

EventRegistry EventRegistry::load(std::string_view document) {
    const json doc = jsonio::parse_document(document, "registry");
    if (!doc.is_array()) throw ParseError("registry: expected array of entries");
    std::vector<RegistryEntry> entries;
    entries.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto path = jsonio::element("", i);
        const auto& e = doc[i];
        RegistryEntry entry;
        entry.signature_hash = jsonio::word_at(jsonio::field(e, "signature_hash", path), jsonio::child(path, "signature_hash"));
        entry.event = jsonio::string_at(jsonio::field(e, "event", path), jsonio::child(path, "event"));
        const auto action = jsonio::string_at(jsonio::field(e, "action", path), jsonio::child(path, "action"));
        const auto type = action_type_from_string(action);
        if (!type) throw SchemaError(jsonio::child(path, "action") + ": unknown action type '" + action + "'");
        entry.action = *type;
        if (const auto it = e.find("source"); it != e.end()) entry.source = jsonio::string_at(*it, jsonio::child(path, "source"));
        entries.push_back(std::move(entry));
    }
    return EventRegistry{std::move(entries)};
}

EventRegistry EventRegistry::load_file(const std::string& path) { return load(read_file(path)); }

std::string EventRegistry::serialize() const {
    json doc = json::array();
    for (const auto& e : entries_) {
        doc.push_back({{"signature_hash", e.signature_hash.to_hex()},
                       {"event", e.event},
                       {"action", std::string{to_string(e.action)}},
                       {"source", e.source}});
    }
    return doc.dump(2) + "\n";
}

std::optional<ActionType> EventRegistry::action_type_of(const Bytes32& topic0) const noexcept {
    const auto it = by_hash_.find(topic0);
    if (it == by_hash_.end()) return std::nullopt;
    return it->second;
}

}  // namespace mevscope::registry
