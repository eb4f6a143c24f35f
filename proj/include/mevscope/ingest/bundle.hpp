// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <mevscope/common/types.hpp>
#include <mevscope/lifter/actlifter.hpp>

namespace mevscope::ingest {

struct TxMeta {
    TxHash hash;
    std::uint64_t gas_used{0};
    Uint256 effective_gas_price;

    friend bool operator==(const TxMeta&, const TxMeta&) = default;
};

struct Bundle {
    std::uint64_t block_number{0};
    std::uint64_t bundle_index{0};
    Address coinbase;
    std::vector<TxMeta> txs;

    [[nodiscard]] std::vector<TxHash> tx_hashes() const;

    friend bool operator==(const Bundle&, const Bundle&) = default;
};

//! Identifies a bundle across the corpus, the service and the review queue.
struct BundleRef {
    std::uint64_t block_number{0};
    std::uint64_t bundle_index{0};

    [[nodiscard]] std::string to_string() const;
    //! Inverse of to_string ("block/index"); throws ParseError otherwise.
    static BundleRef parse(std::string_view text);
    friend auto operator<=>(const BundleRef&, const BundleRef&) = default;
};

struct BundleActions {
    Bundle bundle;
    std::vector<lifter::TransactionActions> per_tx;  // aligned with bundle.txs

    [[nodiscard]] BundleRef ref() const noexcept { return {bundle.block_number, bundle.bundle_index}; }

    friend bool operator==(const BundleActions&, const BundleActions&) = default;
};

struct BlockRange {
    std::uint64_t from{0};
    std::uint64_t to{0};  // inclusive

    [[nodiscard]] bool contains(std::uint64_t block) const noexcept { return block >= from && block <= to; }
};

//! Bundle fixture: one block object {block_number, coinbase, bundles:[{bundle_index, txs:[...]}]}
//! or an array of them. Result is ordered by (block_number, bundle_index). Throws ParseError.
std::vector<Bundle> parse_bundle_fixture(std::string_view document);
std::string serialize_bundle_fixture(const std::vector<Bundle>& bundles);

nlohmann::json to_json(const Bundle& bundle);
Bundle bundle_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json to_json(const BundleActions& bundle);
BundleActions bundle_actions_from_json(const nlohmann::json& j, const std::string& path);

//! Throws IncompleteBundleError unless per_tx aligns with the bundle's transactions.
void check_alignment(const BundleActions& b);

}  // namespace mevscope::ingest
