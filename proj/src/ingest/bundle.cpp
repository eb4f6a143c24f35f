// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/ingest/bundle.hpp>

#include <algorithm>
#include <charconv>
#include <map>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::ingest {

using jsonio::json;

std::vector<TxHash> Bundle::tx_hashes() const {
    std::vector<TxHash> out;
    out.reserve(txs.size());
    for (const auto& t : txs) out.push_back(t.hash);
    return out;
}

std::string BundleRef::to_string() const { return std::to_string(block_number) + "/" + std::to_string(bundle_index); }

BundleRef BundleRef::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto number = [&](std::string_view part) {
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || end != part.data() + part.size()) {
            throw ParseError("bundle reference '" + std::string{text} + "' is not block/index");
        }
        return v;
    };
    if (slash == std::string_view::npos) throw ParseError("bundle reference '" + std::string{text} + "' is not block/index");
    return {number(text.substr(0, slash)), number(text.substr(slash + 1))};
}

namespace {

    TxMeta tx_from_json(const json& j, const std::string& path) {
        TxMeta t;
        t.hash = jsonio::word_at(jsonio::field(j, "hash", path), jsonio::child(path, "hash"));
        t.gas_used = jsonio::u64_at(jsonio::field(j, "gas_used", path), jsonio::child(path, "gas_used"));
        t.effective_gas_price =
            jsonio::decimal_at(jsonio::field(j, "effective_gas_price", path), jsonio::child(path, "effective_gas_price"));
        return t;
    }

    json tx_json(const TxMeta& t) {
        return {{"hash", t.hash.to_hex()},
                {"gas_used", t.gas_used},
                {"effective_gas_price", t.effective_gas_price.to_decimal()}};
    }

    std::vector<TxMeta> txs_from_json(const json& j, const std::string& path) {
        const auto& txs = jsonio::field(j, "txs", path);
        const auto txs_path = jsonio::child(path, "txs");
        if (!txs.is_array()) throw ParseError(txs_path + ": expected array");
        std::vector<TxMeta> out;
        for (std::size_t i = 0; i < txs.size(); ++i) out.push_back(tx_from_json(txs[i], jsonio::element(txs_path, i)));
        return out;
    }

    void parse_block(const json& block, const std::string& path, std::vector<Bundle>& out) {
        const auto number = jsonio::u64_at(jsonio::field(block, "block_number", path), jsonio::child(path, "block_number"));
        const auto coinbase = jsonio::address_at(jsonio::field(block, "coinbase", path), jsonio::child(path, "coinbase"));
        const auto& bundles = jsonio::field(block, "bundles", path);
        const auto bundles_path = jsonio::child(path, "bundles");
        if (!bundles.is_array()) throw ParseError(bundles_path + ": expected array");
        for (std::size_t i = 0; i < bundles.size(); ++i) {
            const auto b_path = jsonio::element(bundles_path, i);
            Bundle b;
            b.block_number = number;
            b.coinbase = coinbase;
            b.bundle_index = jsonio::u64_at(jsonio::field(bundles[i], "bundle_index", b_path), jsonio::child(b_path, "bundle_index"));
            b.txs = txs_from_json(bundles[i], b_path);
            if (b.txs.empty()) throw ParseError(jsonio::child(b_path, "txs") + ": a bundle holds at least one transaction");
            out.push_back(std::move(b));
        }
    }

}  // namespace

std::vector<Bundle> parse_bundle_fixture(std::string_view document) {
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
    const json doc = jsonio::parse_document(document, "bundle fixture");
    std::vector<Bundle> out;
    if (doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i) parse_block(doc[i], jsonio::element("", i), out);
    } else {
        parse_block(doc, "", out);
    }
    std::stable_sort(out.begin(), out.end(), [](const Bundle& a, const Bundle& b) {
        return std::pair{a.block_number, a.bundle_index} < std::pair{b.block_number, b.bundle_index};
    });
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].block_number == out[i - 1].block_number && out[i].bundle_index == out[i - 1].bundle_index) {
            throw ParseError("bundle fixture: duplicate bundle " + std::to_string(out[i].block_number) + "/" +
                             std::to_string(out[i].bundle_index));
        }
    }
    return out;
}

std::string serialize_bundle_fixture(const std::vector<Bundle>& bundles) {
    std::map<std::uint64_t, json> blocks;
    for (const auto& b : bundles) {
        auto& block = blocks[b.block_number];
        if (block.is_null()) {
            block = {{"block_number", b.block_number}, {"coinbase", b.coinbase.to_hex()}, {"bundles", json::array()}};
        }
        json txs = json::array();
        for (const auto& t : b.txs) txs.push_back(tx_json(t));
        block["bundles"].push_back({{"bundle_index", b.bundle_index}, {"txs", std::move(txs)}});
    }
    json doc = json::array();
    for (auto& [_, block] : blocks) doc.push_back(std::move(block));
    return doc.dump(2) + "\n";
}

json to_json(const Bundle& b) {
    json txs = json::array();
    for (const auto& t : b.txs) txs.push_back(tx_json(t));
    return {{"block_number", b.block_number},
            {"bundle_index", b.bundle_index},
            {"coinbase", b.coinbase.to_hex()},
            {"txs", std::move(txs)}};
}

Bundle bundle_from_json(const json& j, const std::string& path) {
    Bundle b;
    b.block_number = jsonio::u64_at(jsonio::field(j, "block_number", path), jsonio::child(path, "block_number"));
    b.bundle_index = jsonio::u64_at(jsonio::field(j, "bundle_index", path), jsonio::child(path, "bundle_index"));
    b.coinbase = jsonio::address_at(jsonio::field(j, "coinbase", path), jsonio::child(path, "coinbase"));
    b.txs = txs_from_json(j, path);
    return b;
}

json to_json(const BundleActions& b) {
    json j = to_json(b.bundle);
    json per_tx = json::array();
    for (const auto& tx : b.per_tx) per_tx.push_back(lifter::to_json(tx));
    j["per_tx"] = std::move(per_tx);
    return j;
}

BundleActions bundle_actions_from_json(const json& j, const std::string& path) {
    BundleActions b;
    b.bundle = bundle_from_json(j, path);
    const auto& per_tx = jsonio::field(j, "per_tx", path);
    const auto per_tx_path = jsonio::child(path, "per_tx");
    if (!per_tx.is_array()) throw ParseError(per_tx_path + ": expected array");
    for (std::size_t i = 0; i < per_tx.size(); ++i) {
        b.per_tx.push_back(lifter::transaction_from_json(per_tx[i], jsonio::element(per_tx_path, i)));
    }
    if (b.per_tx.size() != b.bundle.txs.size()) {
        throw ParseError(per_tx_path + ": expected " + std::to_string(b.bundle.txs.size()) + " entries");
    }
    return b;
}

void check_alignment(const BundleActions& b) {
    if (b.per_tx.size() != b.bundle.txs.size()) {
        throw IncompleteBundleError("bundle " + b.ref().to_string() + ": per-transaction actions not aligned");
    }
    for (std::size_t i = 0; i < b.per_tx.size(); ++i) {
        if (b.per_tx[i].tx_hash != b.bundle.txs[i].hash) {
            throw IncompleteBundleError("bundle " + b.ref().to_string() + ": transaction " + std::to_string(i) +
                                        " out of order");
        }
    }
}

}  // namespace mevscope::ingest
