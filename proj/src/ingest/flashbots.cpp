// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/ingest/flashbots.hpp>

#include <algorithm>
#include <map>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::ingest {

using jsonio::json;

namespace {

    void sort_bundles(std::vector<Bundle>& bundles) {
        std::sort(bundles.begin(), bundles.end(), [](const Bundle& a, const Bundle& b) {
            return std::pair{a.block_number, a.bundle_index} < std::pair{b.block_number, b.bundle_index};
        });
    }

    std::vector<Bundle> decode_page(const json& doc, std::optional<std::uint64_t>& lowest) {
        const auto& blocks = jsonio::field(doc, "blocks", "");
        if (!blocks.is_array()) throw ParseError("blocks: expected array");
        std::vector<Bundle> out;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto path = jsonio::element("blocks", b);
            const auto& block = blocks[b];
            const auto number = jsonio::u64_at(jsonio::field(block, "block_number", path), jsonio::child(path, "block_number"));
            lowest = lowest ? std::min(*lowest, number) : number;
            const auto miner_it = block.contains("miner") ? block.find("miner") : block.find("fee_recipient");
            if (miner_it == block.end()) throw ParseError(jsonio::child(path, "miner") + ": missing field");
            const auto coinbase = jsonio::address_at(*miner_it, jsonio::child(path, "miner"));

            struct Entry {
                std::uint64_t tx_index;
                TxMeta meta;
            };
            std::map<std::uint64_t, std::vector<Entry>> by_bundle;
            const auto& txs = jsonio::field(block, "transactions", path);
            const auto txs_path = jsonio::child(path, "transactions");
            if (!txs.is_array()) throw ParseError(txs_path + ": expected array");
            for (std::size_t t = 0; t < txs.size(); ++t) {
                const auto tp = jsonio::element(txs_path, t);
                const auto& tx = txs[t];
                Entry e;
                e.tx_index = jsonio::u64_at(jsonio::field(tx, "tx_index", tp), jsonio::child(tp, "tx_index"));
                e.meta.hash = jsonio::word_at(jsonio::field(tx, "transaction_hash", tp), jsonio::child(tp, "transaction_hash"));
                e.meta.gas_used = jsonio::u64_at(jsonio::field(tx, "gas_used", tp), jsonio::child(tp, "gas_used"));
                e.meta.effective_gas_price = jsonio::decimal_at(jsonio::field(tx, "gas_price", tp), jsonio::child(tp, "gas_price"));
                const auto bundle_index = jsonio::u64_at(jsonio::field(tx, "bundle_index", tp), jsonio::child(tp, "bundle_index"));
                by_bundle[bundle_index].push_back(std::move(e));
            }
            for (auto& [index, entries] : by_bundle) {
                std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.tx_index < y.tx_index; });
                Bundle bundle{number, index, coinbase, {}};
                for (auto& e : entries) bundle.txs.push_back(std::move(e.meta));
                out.push_back(std::move(bundle));
            }
        }
        return out;
    }

}  // namespace

std::vector<Bundle> FlashbotsBlocksClient::parse_page(std::string_view body, std::optional<std::uint64_t>& lowest) {
    try {
        return decode_page(jsonio::parse_document(body, "blocks page"), lowest);
    } catch (const ParseError& e) {
        throw AdapterError(std::string{"flashbots blocks API: "} + e.what());
    }
}

std::vector<Bundle> FlashbotsBlocksClient::fetch(BlockRange range) {
    std::vector<Bundle> out;
    if (range.to < range.from) return out;
    std::uint64_t before = range.to + 1;
    for (std::size_t page = 0; page < config_.max_pages; ++page) {
        const auto target = "/v1/blocks?before=" + std::to_string(before) + "&limit=" + std::to_string(config_.page_limit);
        std::optional<std::uint64_t> lowest;
        auto bundles = parse_page(transport_.get(target), lowest);
        if (!lowest) break;
        for (auto& b : bundles) {
            if (range.contains(b.block_number)) out.push_back(std::move(b));
        }
        if (*lowest <= range.from) break;
        if (*lowest >= before) throw AdapterError("flashbots blocks API: page did not advance below block " + std::to_string(before));
        before = *lowest;
    }
    sort_bundles(out);
    return out;
}

std::vector<Bundle> fetch_bundles(const std::string& source, BlockRange range, const FetchOptions& options) {
    const bool remote = source.starts_with("http://") || source.starts_with("https://");
    if (!remote && !options.replay_dir) {
        auto all = parse_bundle_fixture(read_file(source));
        std::vector<Bundle> out;
        for (auto& b : all) {
            if (range.contains(b.block_number)) out.push_back(std::move(b));
        }
        return out;
    }

    std::unique_ptr<Transport> transport;
    if (options.replay_dir) {
        transport = make_replay_transport(*options.replay_dir);
    } else {
        transport = make_http_transport(source);
        if (options.record_dir) transport = make_recording_transport(std::move(transport), *options.record_dir);
    }
    FlashbotsBlocksClient client{*transport, options.flashbots};
    return client.fetch(range);
}

}  // namespace mevscope::ingest
