// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <mevscope/common/uint256.hpp>
#include <mevscope/ingest/bundle.hpp>
#include <mevscope/ingest/trace_source.hpp>
#include <mevscope/trace/trace.hpp>

namespace mevscope::revenue {

struct BundleRevenue {
    std::uint64_t block_number{0};
    std::uint64_t bundle_index{0};
    Uint256 gas_fee_total;
    Uint256 coinbase_transfer_total;
    Uint256 total;

    friend bool operator==(const BundleRevenue&, const BundleRevenue&) = default;
};

struct BlockRevenue {
    std::uint64_t block_number{0};
    std::size_t bundles{0};
    Uint256 total;

    friend bool operator==(const BlockRevenue&, const BlockRevenue&) = default;
};

//! Gas fees (gas_used * effective_gas_price) plus Ether transfers to the coinbase, with
//! `traces` aligned to the bundle's transactions. Throws OverflowError past 2^256 - 1.
BundleRevenue bundle_revenue(const ingest::Bundle& bundle, std::span<const trace::ExecutionTrace> traces);
//! Resolves the traces from `source`; throws IncompleteBundleError when any is missing.
BundleRevenue bundle_revenue(const ingest::Bundle& bundle, ingest::TraceSource& source);

//! Sums per block, in block order.
std::vector<BlockRevenue> block_revenue(std::span<const BundleRevenue> bundles);

//! "block_number,bundle_index,gas_fee_wei,coinbase_wei,total_wei" and one row per bundle.
std::string to_csv(std::span<const BundleRevenue> rows);
//! "block_number,bundles,total_wei" and one row per block.
std::string to_csv(std::span<const BlockRevenue> rows);

}  // namespace mevscope::revenue
