// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/revenue/revenue.hpp>

#include <map>

#include <mevscope/common/errors.hpp>
#include <mevscope/lifter/transfers.hpp>

namespace mevscope::revenue {

BundleRevenue bundle_revenue(const ingest::Bundle& bundle, std::span<const trace::ExecutionTrace> traces) {
    if (traces.size() != bundle.txs.size()) {
        throw IncompleteBundleError("bundle " + ingest::BundleRef{bundle.block_number, bundle.bundle_index}.to_string() + ": " +
                                    std::to_string(traces.size()) + " traces for " + std::to_string(bundle.txs.size()) +
                                    " transactions");
    }
    BundleRevenue r{bundle.block_number, bundle.bundle_index, {}, {}, {}};
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& tx = bundle.txs[i];
        r.gas_fee_total = r.gas_fee_total.checked_add(Uint256{tx.gas_used}.checked_mul(tx.effective_gas_price));
        const lifter::CodeIndexDetector standards{traces[i]};
        for (const auto& t : lifter::extract_all_transfers(traces[i], standards)) {
            if (t.kind == lifter::TransferKind::kEther && t.to == bundle.coinbase) {
                r.coinbase_transfer_total = r.coinbase_transfer_total.checked_add(t.value);
            }
        }
    }
    r.total = r.gas_fee_total.checked_add(r.coinbase_transfer_total);
    return r;
}

BundleRevenue bundle_revenue(const ingest::Bundle& bundle, ingest::TraceSource& source) {
    return bundle_revenue(bundle, ingest::fetch_traces(bundle, source));
}

std::vector<BlockRevenue> block_revenue(std::span<const BundleRevenue> bundles) {
    std::map<std::uint64_t, BlockRevenue> blocks;
    for (const auto& b : bundles) {
        auto& block = blocks.try_emplace(b.block_number, BlockRevenue{b.block_number, 0, {}}).first->second;
        ++block.bundles;
        block.total = block.total.checked_add(b.total);
    }
    std::vector<BlockRevenue> out;
    out.reserve(blocks.size());
    for (auto& [number, block] : blocks) out.push_back(block);
    return out;
}

std::string to_csv(std::span<const BundleRevenue> rows) {
    std::string out = "block_number,bundle_index,gas_fee_wei,coinbase_wei,total_wei\n";
    for (const auto& r : rows) {
        out += std::to_string(r.block_number) + ',' + std::to_string(r.bundle_index) + ',' + r.gas_fee_total.to_decimal() + ',' +
               r.coinbase_transfer_total.to_decimal() + ',' + r.total.to_decimal() + '\n';
    }
    return out;
}

std::string to_csv(std::span<const BlockRevenue> rows) {
    std::string out = "block_number,bundles,total_wei\n";
    for (const auto& r : rows) out += std::to_string(r.block_number) + ',' + std::to_string(r.bundles) + ',' + r.total.to_decimal() + '\n';
    return out;
}

}  // namespace mevscope::revenue
