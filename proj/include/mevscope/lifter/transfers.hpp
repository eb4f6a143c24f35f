// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <mevscope/common/types.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::lifter {

enum class TokenStandard { kNeither, kErc20, kErc721 };

//! Scans bytecode for PUSH4 immediates equal to the core selectors of each standard.
//! Three or more hits qualify; ERC721 wins when both qualify.
TokenStandard is_token_contract(ByteView code) noexcept;

//! Resolves the token standard of a contract address.
class StandardDetector {
  public:
    virtual ~StandardDetector() = default;
    [[nodiscard]] virtual TokenStandard standard_of(const Address& contract) const = 0;
};

//! Classifies contracts from the bytecode carried in a trace's code index.
class CodeIndexDetector final : public StandardDetector {
  public:
    explicit CodeIndexDetector(const trace::ExecutionTrace& trace) : trace_{trace} {}
    [[nodiscard]] TokenStandard standard_of(const Address& contract) const override;

  private:
    const trace::ExecutionTrace& trace_;
};

struct AssetId {
    enum class Kind : std::uint8_t { kEther, kToken, kErc721 };
    Kind kind{Kind::kEther};
    Address contract;  // zero for Ether

    static AssetId ether() noexcept { return {}; }
    static AssetId token(const Address& c) noexcept { return {Kind::kToken, c}; }
    static AssetId erc721(const Address& c) noexcept { return {Kind::kErc721, c}; }

    [[nodiscard]] bool is_ether() const noexcept { return kind == Kind::kEther; }
    //! "ETH", or the contract address in hex.
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const AssetId&, const AssetId&) = default;
};

enum class TransferKind : std::uint8_t { kEther, kToken, kErc721Mint, kErc721Burn };

std::string_view to_string(TransferKind k) noexcept;

struct AssetTransfer {
    AssetId asset;
    Address from;
    Address to;
    Uint256 value;  // token id for the ERC721 kinds
    std::int64_t trace_index{0};  // -1 for the transaction-level Ether transfer
    TransferKind kind{TransferKind::kEther};

    friend bool operator==(const AssetTransfer&, const AssetTransfer&) = default;
};

//! Transfer recognised from one log, if it satisfies an occurrence and filter rule.
std::optional<AssetTransfer> transfer_from_log(const trace::LogRecord& log, const StandardDetector& standards);

//! Every recognised transfer in trace order, led by the transaction-level Ether transfer.
std::vector<AssetTransfer> extract_all_transfers(const trace::ExecutionTrace& trace, const StandardDetector& standards);

//! True when the transfer satisfies the invariants of its kind.
bool satisfies_invariants(const AssetTransfer& t) noexcept;

}  // namespace mevscope::lifter

template <>
struct std::hash<mevscope::lifter::AssetId> {
    std::size_t operator()(const mevscope::lifter::AssetId& a) const noexcept {
        return std::hash<mevscope::Address>{}(a.contract) ^ (static_cast<std::size_t>(a.kind) * 0x9e3779b97f4a7c15ULL);
    }
};
