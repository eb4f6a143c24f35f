// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <mevscope/lifter/transfers.hpp>
#include <mevscope/registry/registry.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::lifter {

using registry::ActionType;

//! Which transfer parameters must appear among an event's parameters.
//! C1: Value only. C2: Value and Asset. C3: Value, Asset, From and To.
enum class MatchConfig { kC1, kC2, kC3 };

std::optional<MatchConfig> match_config_from_string(std::string_view s) noexcept;

struct ActionEvidence {
    Address contract;
    ActionType action_type{ActionType::kSwap};
    std::vector<AssetTransfer> transfers;
    std::uint64_t event_ordinal{0};
};

enum class Direction : std::uint8_t { kIn, kOut };

struct ActionParam {
    Uint256 amount;
    AssetId asset;
    Direction direction{Direction::kIn};
    Address counterparty;  // sender of an inbound transfer, recipient of an outbound one

    friend bool operator==(const ActionParam&, const ActionParam&) = default;
};

struct DefiAction {
    Address contract;
    ActionType type{ActionType::kSwap};
    std::vector<ActionParam> params;
    std::optional<Uint256> token_id;
    std::uint64_t ordinal{0};

    //! For Swap and Liquidation: the inbound and outbound legs.
    [[nodiscard]] const ActionParam* in_param() const noexcept;
    [[nodiscard]] const ActionParam* out_param() const noexcept;

    friend bool operator==(const DefiAction&, const DefiAction&) = default;
};

struct TransactionActions {
    TxHash tx_hash;
    Address sender;
    std::optional<Address> recipient;
    std::vector<DefiAction> actions;

    friend bool operator==(const TransactionActions&, const TransactionActions&) = default;
};

//! True when the event's parameter words contain the transfer's parameters under `config`.
bool is_logged(const AssetTransfer& transfer, const trace::LogRecord& event, MatchConfig config) noexcept;

//! Associates registered events (and structural ERC721 mint/burn logs) with the transfers they log.
std::vector<ActionEvidence> step_s1(const trace::ExecutionTrace& trace, const std::vector<AssetTransfer>& transfers,
                                    const registry::EventRegistry& registry, MatchConfig config);
std::vector<ActionEvidence> step_s1(const trace::ExecutionTrace& trace, const registry::EventRegistry& registry,
                                    MatchConfig config);

//! Recognises actions from evidence by the per-type transfer patterns. Unmatched evidence yields nothing.
std::vector<DefiAction> step_s2(const std::vector<ActionEvidence>& evidence, const StandardDetector& standards);

TransactionActions lift_transaction(const trace::ExecutionTrace& trace, const registry::EventRegistry& registry,
                                    MatchConfig config = MatchConfig::kC1);

//! True when the action satisfies the parameter invariants of its type.
bool satisfies_invariants(const DefiAction& action) noexcept;

nlohmann::json to_json(const DefiAction& action);
nlohmann::json to_json(const TransactionActions& tx);
//! Inverse of to_json; throws ParseError naming the field path.
DefiAction action_from_json(const nlohmann::json& j, const std::string& path);
TransactionActions transaction_from_json(const nlohmann::json& j, const std::string& path);

//! Compact human rendering, e.g. "0x69d9.Swap(500187: 0x2b59 In; 14082220000: 0xa0b8 Out)".
std::string render(const DefiAction& action);

}  // namespace mevscope::lifter
