// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/matrix/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <mevscope/common/errors.hpp>

namespace mevscope::matrix {

using lifter::AssetId;
using lifter::DefiAction;
using lifter::Direction;
using lifter::TransactionActions;

void MatrixConfig::validate() const {
    if (height < 12) throw ConfigError("matrix height must be at least 12, got " + std::to_string(height));
    if (width < 8) throw ConfigError("matrix width must be at least 8, got " + std::to_string(width));
}

AssetRanking AssetRanking::from_corpus(std::span<const ingest::BundleActions> corpus) {
    std::map<AssetId, std::pair<std::size_t, std::size_t>> seen;  // asset -> (count, first occurrence)
    std::size_t position = 0;
    for (const auto& b : corpus) {
        for (const auto& tx : b.per_tx) {
            for (const auto& a : tx.actions) {
                for (const auto& p : a.params) {
                    auto [it, inserted] = seen.try_emplace(p.asset, 0, position++);
                    ++it->second.first;
                }
            }
        }
    }
    std::vector<std::pair<AssetId, std::pair<std::size_t, std::size_t>>> entries(seen.begin(), seen.end());
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        if (x.second.first != y.second.first) return x.second.first > y.second.first;
        return x.second.second < y.second.second;
    });
    AssetRanking r;
    for (const auto& [asset, stats] : entries) {
        r.rank_.emplace(asset, r.order_.size());
        r.order_.push_back(asset);
    }
    return r;
}

std::optional<std::size_t> AssetRanking::rank_of(const AssetId& asset) const {
    const auto it = rank_.find(asset);
    if (it == rank_.end()) return std::nullopt;
    return it->second;
}

double AssetRanking::normalized(const AssetId& asset) const {
    const auto r = rank_of(asset);
    if (!r) return 1.0;
    return static_cast<double>(*r) / static_cast<double>(order_.size());
}

AddressIndex::AddressIndex(const TransactionActions& tx) {
    add(tx.sender);
    if (tx.recipient) add(*tx.recipient);
    for (const auto& a : tx.actions) {
        add(a.contract);
        for (const auto& p : a.params) add(p.counterparty);
    }
}

void AddressIndex::add(const Address& a) {
    if (index_.emplace(a, order_.size()).second) order_.push_back(a);
}

std::size_t AddressIndex::index_of(const Address& a) const {
    const auto it = index_.find(a);
    if (it == index_.end()) throw NotFoundError("address " + a.to_hex() + " is not indexed");
    return it->second;
}

double AddressIndex::normalized(const Address& a) const {
    return static_cast<double>(index_of(a)) / static_cast<double>(order_.size());
}

double normalize_amount(double v, double v_max) noexcept {
    if (!(v_max > 0.0) || v == 0.0) return 0.0;
    const double scaled = std::log1p(std::fabs(v)) / std::log1p(v_max);
    return std::copysign(std::min(scaled, 1.0), v);
}

double amount_max(const ingest::BundleActions& bundle) noexcept {
    double m = 0.0;
    for (const auto& tx : bundle.per_tx) {
        for (const auto& a : tx.actions) {
            for (const auto& p : a.params) m = std::max(m, p.amount.to_double());
            if (a.token_id) m = std::max(m, a.token_id->to_double());
        }
    }
    return m;
}

namespace {

    std::vector<double> filled(std::size_t height, double v) { return std::vector<double>(height, v); }

    void set_row(std::vector<double>& column, std::size_t row, double v) {
        if (row < column.size()) column[row] = v;
    }

    //! Most frequent parameter asset of the transaction, ties by first occurrence.
    std::optional<AssetId> dominant_asset(const TransactionActions& tx) {
        std::vector<std::pair<AssetId, std::size_t>> counts;
        for (const auto& a : tx.actions) {
            for (const auto& p : a.params) {
                auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& c) { return c.first == p.asset; });
                if (it == counts.end()) {
                    counts.emplace_back(p.asset, 1);
                } else {
                    ++it->second;
                }
            }
        }
        if (counts.empty()) return std::nullopt;
        return std::max_element(counts.begin(), counts.end(), [](const auto& x, const auto& y) { return x.second < y.second; })
            ->first;
    }

    std::vector<double> change_column(const TransactionActions& tx, const AddressIndex& addresses, const EncodeContext& ctx) {
        std::vector<double> net(addresses.size(), 0.0);
        if (const auto asset = dominant_asset(tx)) {
            for (const auto& a : tx.actions) {
                for (const auto& p : a.params) {
                    if (p.asset != *asset) continue;
                    const double v = p.amount.to_double();
                    const double into_contract = p.direction == Direction::kIn ? v : -v;
                    net[addresses.index_of(a.contract)] += into_contract;
                    net[addresses.index_of(p.counterparty)] -= into_contract;
                }
            }
        }
        auto column = filled(ctx.height, kSeparator);
        for (std::size_t i = 0; i < net.size() && i < ctx.height; ++i) column[i] = normalize_amount(net[i], ctx.amount_max);
        return column;
    }

    void append(Block& into, Block&& from) {
        for (auto& c : from.columns) into.columns.push_back(std::move(c));
    }

}  // namespace

Block encode_action(const DefiAction& action, const AddressIndex& addresses, const EncodeContext& ctx) {
    Block block;
    auto header = filled(ctx.height, kSeparator);
    for (std::size_t r = 0; r < kHeaderRows; ++r) header[r] = 0.0;
    header[registry::ordinal(action.type)] = 1.0;
    block.columns.push_back(std::move(header));
    block.columns.push_back(filled(ctx.height, kSeparator));

    const auto asset_cell = [&](const AssetId& a) { return ctx.assets != nullptr ? ctx.assets->normalized(a) : 1.0; };
    for (const auto& p : action.params) {
        auto column = filled(ctx.height, kSeparator);
        set_row(column, kDirectionRow, p.direction == Direction::kIn ? 1.0 : -1.0);
        set_row(column, kAssetRow, asset_cell(p.asset));
        set_row(column, kAmountRow, normalize_amount(p.amount.to_double(), ctx.amount_max));
        set_row(column, kCounterpartyRow, addresses.normalized(p.counterparty));
        block.columns.push_back(std::move(column));
    }
    if (action.token_id) {
        auto column = filled(ctx.height, kSeparator);
        set_row(column, kDirectionRow, 0.0);
        set_row(column, kAssetRow, asset_cell(AssetId::token(action.contract)));
        set_row(column, kAmountRow, normalize_amount(action.token_id->to_double(), ctx.amount_max));
        set_row(column, kCounterpartyRow, addresses.normalized(action.contract));
        block.columns.push_back(std::move(column));
    }
    return block;
}

Block encode_transaction(const TransactionActions& tx, const EncodeContext& ctx) {
    const AddressIndex addresses{tx};
    Block block;
    block.columns.push_back(filled(ctx.height, addresses.normalized(tx.sender)));
    block.columns.push_back(tx.recipient ? filled(ctx.height, addresses.normalized(*tx.recipient))
                                         : filled(ctx.height, kSeparator));
    for (std::size_t i = 0; i < tx.actions.size(); ++i) {
        if (i > 0) block.columns.push_back(filled(ctx.height, kSeparator));
        append(block, encode_action(tx.actions[i], addresses, ctx));
    }
    block.columns.push_back(change_column(tx, addresses, ctx));
    return block;
}

BundleMatrix encode_bundle(const ingest::BundleActions& bundle, const MatrixConfig& config, const AssetRanking& assets,
                           std::optional<double> fixed_amount_max) {
    config.validate();
    const EncodeContext ctx{config.height, &assets, fixed_amount_max.value_or(amount_max(bundle))};

    Block all;
    BundleMatrix m;
    for (std::size_t t = 0; t < bundle.per_tx.size(); ++t) {
        if (t > 0) {
            all.columns.push_back(filled(config.height, kSeparator));
            all.columns.push_back(filled(config.height, kSeparator));
        }
        append(all, encode_transaction(bundle.per_tx[t], ctx));
        m.addresses.push_back(AddressIndex{bundle.per_tx[t]}.order());
    }

    m.height = config.height;
    m.width = config.width;
    m.used_width = std::min(all.width(), config.width);
    m.cells.assign(config.height * config.width, kSeparator);
    for (std::size_t c = 0; c < m.used_width; ++c) {
        for (std::size_t r = 0; r < config.height; ++r) m.cells[r * config.width + c] = all.columns[c][r];
    }
    m.assets = assets.order();
    return m;
}

std::string BundleMatrix::to_csv() const {
    std::string out;
    out.reserve(height * width * 10);
    char buf[32];
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            std::snprintf(buf, sizeof buf, "%.6f", at(r, c));
            if (c > 0) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace mevscope::matrix
