// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/lifter/transfers.hpp>

#include <algorithm>
#include <array>

#include <mevscope/registry/registry.hpp>

namespace mevscope::lifter {

namespace {

    using Selector = std::array<std::uint8_t, 4>;

    // totalSupply, balanceOf, transfer, transferFrom, approve, allowance
    constexpr std::array<Selector, 6> kErc20Selectors{{
        {0x18, 0x16, 0x0d, 0xdd},
        {0x70, 0xa0, 0x82, 0x31},
        {0xa9, 0x05, 0x9c, 0xbb},
        {0x23, 0xb8, 0x72, 0xdd},
        {0x09, 0x5e, 0xa7, 0xb3},
        {0xdd, 0x62, 0xed, 0x3e},
    }};

    // ownerOf, safeTransferFrom x2, getApproved, setApprovalForAll, isApprovedForAll
    constexpr std::array<Selector, 6> kErc721Selectors{{
        {0x63, 0x52, 0x21, 0x1e},
        {0x42, 0x84, 0x2e, 0x0e},
        {0xb8, 0x8d, 0x4f, 0xde},
        {0x08, 0x18, 0x12, 0xfc},
        {0xa2, 0x2c, 0xb4, 0x65},
        {0xe9, 0x85, 0xe9, 0xc5},
    }};

    constexpr std::uint8_t kPush4 = 0x63;
    constexpr std::size_t kQualifyingHits = 3;

    std::size_t count_pushed(ByteView code, std::span<const Selector> selectors) noexcept {
        std::size_t hits = 0;
        for (const auto& sel : selectors) {
            const std::array<std::uint8_t, 5> needle{kPush4, sel[0], sel[1], sel[2], sel[3]};
            if (std::search(code.begin(), code.end(), needle.begin(), needle.end()) != code.end()) ++hits;
        }
        return hits;
    }

    bool is_null_or(const Address& a, const Address& contract) noexcept { return a.is_zero() || a == contract; }

}  // namespace

TokenStandard is_token_contract(ByteView code) noexcept {
    if (count_pushed(code, kErc721Selectors) >= kQualifyingHits) return TokenStandard::kErc721;
    if (count_pushed(code, kErc20Selectors) >= kQualifyingHits) return TokenStandard::kErc20;
    return TokenStandard::kNeither;
}

TokenStandard CodeIndexDetector::standard_of(const Address& contract) const {
    const auto* code = trace_.code_of(contract);
    return code ? is_token_contract(*code) : TokenStandard::kNeither;
}

std::string AssetId::to_string() const { return is_ether() ? std::string{"ETH"} : contract.to_hex(); }

std::string_view to_string(TransferKind k) noexcept {
    switch (k) {
        case TransferKind::kEther: return "ether";
        case TransferKind::kToken: return "token";
        case TransferKind::kErc721Mint: return "erc721-mint";
        case TransferKind::kErc721Burn: return "erc721-burn";
    }
    return "?";
}

std::optional<AssetTransfer> transfer_from_log(const trace::LogRecord& log, const StandardDetector& standards) {
    if (log.topics.empty() || log.topics[0] != registry::transfer_event_hash()) return std::nullopt;

    Address from;
    Address to;
    Uint256 value;
    if (log.topics.size() >= 3) {
        from = log.topics[1].low_address();
        to = log.topics[2].low_address();
        if (log.topics.size() == 4) {
            value = log.topics[3].to_uint();
        } else if (log.data_words() >= 1) {
            value = log.data_word(0).to_uint();
        } else {
            return std::nullopt;
        }
    } else if (log.topics.size() == 1 && log.data_words() >= 3) {
        from = log.data_word(0).low_address();
        to = log.data_word(1).low_address();
        value = log.data_word(2).to_uint();
    } else {
        return std::nullopt;
    }

    const Address& contract = log.emitter;
    const auto index = static_cast<std::int64_t>(log.trace_index);
    const bool from_null = is_null_or(from, contract);
    const bool to_null = is_null_or(to, contract);

    if (from_null != to_null) {
        if (standards.standard_of(contract) != TokenStandard::kErc721) return std::nullopt;
        const auto kind = from_null ? TransferKind::kErc721Mint : TransferKind::kErc721Burn;
        return AssetTransfer{AssetId::erc721(contract), from, to, value, index, kind};
    }
    if (from_null || value.is_zero() || from == to) return std::nullopt;
    return AssetTransfer{AssetId::token(contract), from, to, value, index, TransferKind::kToken};
}

std::vector<AssetTransfer> extract_all_transfers(const trace::ExecutionTrace& trace, const StandardDetector& standards) {
    std::vector<AssetTransfer> out;
    if (!trace.tx_value.is_zero() && trace.recipient && *trace.recipient != trace.sender) {
        out.push_back({AssetId::ether(), trace.sender, *trace.recipient, trace.tx_value, -1, TransferKind::kEther});
    }
    for (const auto& record : trace.records) {
        if (const auto* call = std::get_if<trace::CallRecord>(&record)) {
            if (call->value.is_zero() || call->caller == call->callee) continue;
            out.push_back({AssetId::ether(), call->caller, call->callee, call->value,
                           static_cast<std::int64_t>(call->trace_index), TransferKind::kEther});
        } else if (auto t = transfer_from_log(std::get<trace::LogRecord>(record), standards)) {
            out.push_back(std::move(*t));
        }
    }
    return out;
}

bool satisfies_invariants(const AssetTransfer& t) noexcept {
    const Address& c = t.asset.contract;
    switch (t.kind) {
        case TransferKind::kEther:
            return t.asset.is_ether() && !t.value.is_zero() && t.from != t.to;
        case TransferKind::kToken:
            return t.asset.kind == AssetId::Kind::kToken && !t.value.is_zero() && t.from != t.to &&
                   !is_null_or(t.from, c) && !is_null_or(t.to, c);
        case TransferKind::kErc721Mint:
            return t.asset.kind == AssetId::Kind::kErc721 && is_null_or(t.from, c) && !is_null_or(t.to, c);
        case TransferKind::kErc721Burn:
            return t.asset.kind == AssetId::Kind::kErc721 && is_null_or(t.to, c) && !is_null_or(t.from, c);
    }
    return false;
}

}  // namespace mevscope::lifter
