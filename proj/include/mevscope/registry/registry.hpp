// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <mevscope/common/types.hpp>

namespace mevscope::registry {

enum class ActionType {
    kSwap,
    kAddLiquidity,
    kRemoveLiquidity,
    kBorrowing,
    kLeverage,
    kLiquidation,
    kNftMinting,
    kNftBurning,
    kAirdrop,
    kRebasing,
};

inline constexpr std::array kAllActionTypes{
    ActionType::kSwap,      ActionType::kAddLiquidity, ActionType::kRemoveLiquidity, ActionType::kBorrowing,
    ActionType::kLeverage,  ActionType::kLiquidation,  ActionType::kNftMinting,      ActionType::kNftBurning,
    ActionType::kAirdrop,   ActionType::kRebasing,
};

//! Stable position of the type in kAllActionTypes; used as the one-hot row in matrices.
constexpr std::size_t ordinal(ActionType t) noexcept { return static_cast<std::size_t>(t); }

std::string_view to_string(ActionType t) noexcept;
std::optional<ActionType> action_type_from_string(std::string_view name) noexcept;

//! topic0 of the ERC20/ERC721 Transfer event.
const Bytes32& transfer_event_hash() noexcept;

struct RegistryEntry {
    Bytes32 signature_hash;
    std::string event;  // textual declaration, e.g. "Sync(uint112,uint112)"
    ActionType action{ActionType::kSwap};
    std::string source;

    friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

//! Maps event signature hashes to the DeFi action they announce.
class EventRegistry {
  public:
    EventRegistry() = default;
    //! Throws ConflictError on a duplicate hash; SchemaError for the Transfer hash,
    //! which is recognised structurally rather than through the registry.
    explicit EventRegistry(std::vector<RegistryEntry> entries);

    //! Parses the registry JSON document. Throws ParseError, SchemaError or ConflictError.
    static EventRegistry load(std::string_view document);
    static EventRegistry load_file(const std::string& path);
    [[nodiscard]] std::string serialize() const;

    [[nodiscard]] std::optional<ActionType> action_type_of(const Bytes32& topic0) const noexcept;
    [[nodiscard]] const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

  private:
    std::vector<RegistryEntry> entries_;
    std::unordered_map<Bytes32, ActionType> by_hash_;
};

}  // namespace mevscope::registry
