// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <mevscope/ingest/bundle.hpp>
#include <mevscope/lifter/actlifter.hpp>

namespace mevscope::test {

lifter::AssetId token(std::uint64_t n);

//! Swap on `pool`: `in` flows into the pool, `out` flows back to `trader`.
lifter::DefiAction swap(const Address& pool, const lifter::AssetId& in, std::uint64_t in_amount,
                        const lifter::AssetId& out, std::uint64_t out_amount, const Address& trader = Address{});
//! Add or remove liquidity of two assets.
lifter::DefiAction liquidity(registry::ActionType type, const Address& pool, const lifter::AssetId& a,
                             const lifter::AssetId& b, std::uint64_t amount = 1000);
//! Borrowing, Leverage, Airdrop or Liquidation paying `asset` out of `contract`.
lifter::DefiAction payout(registry::ActionType type, const Address& contract, const lifter::AssetId& asset,
                          std::uint64_t amount = 1000);
lifter::DefiAction rebasing(const Address& token_contract);
lifter::DefiAction nft(registry::ActionType type, const Address& contract, std::uint64_t token_id);

//! Assembles BundleActions with synthetic hashes and aligned metadata.
class BundleBuilder {
  public:
    explicit BundleBuilder(std::uint64_t block = 1, std::uint64_t index = 0) : block_{block}, index_{index} {}
    BundleBuilder& tx(const Address& sender, std::vector<lifter::DefiAction> actions);
    [[nodiscard]] ingest::BundleActions build() const;

  private:
    std::uint64_t block_;
    std::uint64_t index_;
    std::vector<std::pair<Address, std::vector<lifter::DefiAction>>> txs_;
};

//! Random bundle over a small universe of senders, pools and assets.
ingest::BundleActions random_bundle(std::mt19937_64& rng, std::uint64_t block, std::uint64_t index,
                                    std::size_t max_txs = 6, std::size_t max_actions = 5);

}  // namespace mevscope::test
