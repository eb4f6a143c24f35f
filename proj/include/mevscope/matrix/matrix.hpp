// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <mevscope/ingest/bundle.hpp>
#include <mevscope/lifter/actlifter.hpp>

namespace mevscope::matrix {

inline constexpr std::size_t kHeaderRows = 10;
inline constexpr std::size_t kDirectionRow = 10;
inline constexpr std::size_t kAssetRow = 11;
inline constexpr std::size_t kAmountRow = 12;
inline constexpr std::size_t kCounterpartyRow = 13;
inline constexpr double kSeparator = -1.0;

struct MatrixConfig {
    std::size_t height{16};
    std::size_t width{256};

    //! Throws ConfigError unless height >= 12 and width >= 8.
    void validate() const;
};

//! Corpus-level asset popularity: rank 0 is the most frequent asset, ties by first occurrence.
class AssetRanking {
  public:
    AssetRanking() = default;
    static AssetRanking from_corpus(std::span<const ingest::BundleActions> corpus);

    [[nodiscard]] std::optional<std::size_t> rank_of(const lifter::AssetId& asset) const;
    //! rank / size in [0, 1); assets outside the corpus map to 1.
    [[nodiscard]] double normalized(const lifter::AssetId& asset) const;
    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] const std::vector<lifter::AssetId>& order() const noexcept { return order_; }

  private:
    std::vector<lifter::AssetId> order_;
    std::map<lifter::AssetId, std::size_t> rank_;
};

//! Addresses of one transaction in order of first appearance: sender, recipient, then per
//! action its contract followed by its parameter counterparties.
class AddressIndex {
  public:
    explicit AddressIndex(const lifter::TransactionActions& tx);
    [[nodiscard]] std::size_t index_of(const Address& a) const;
    //! index / size in [0, 1).
    [[nodiscard]] double normalized(const Address& a) const;
    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] const std::vector<Address>& order() const noexcept { return order_; }

  private:
    void add(const Address& a);
    std::vector<Address> order_;
    std::map<Address, std::size_t> index_;
};

//! sign(v) * log(1 + |v|) / log(1 + v_max), clipped to [-1, 1]; 0 when v_max is 0.
double normalize_amount(double v, double v_max) noexcept;

//! Largest parameter amount or token id in the bundle.
double amount_max(const ingest::BundleActions& bundle) noexcept;

struct EncodeContext {
    std::size_t height{16};
    const AssetRanking* assets{nullptr};
    double amount_max{0.0};
};

//! Column-major block of `height`-row columns.
struct Block {
    std::vector<std::vector<double>> columns;
    [[nodiscard]] std::size_t width() const noexcept { return columns.size(); }
};

Block encode_action(const lifter::DefiAction& action, const AddressIndex& addresses, const EncodeContext& ctx);
Block encode_transaction(const lifter::TransactionActions& tx, const EncodeContext& ctx);

struct BundleMatrix {
    std::size_t height{0};
    std::size_t width{0};
    std::vector<double> cells;  // row-major
    std::size_t used_width{0};  // columns before padding or truncation point
    std::vector<std::vector<Address>> addresses;  // per transaction, index order
    std::vector<lifter::AssetId> assets;  // ranking order used for the asset rows

    [[nodiscard]] double at(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
    //! H rows of W comma-separated values with six decimals.
    [[nodiscard]] std::string to_csv() const;

    friend bool operator==(const BundleMatrix&, const BundleMatrix&) = default;
};

//! Transaction blocks in order with two separators between them, padded with -1 or
//! truncated to the configured width. `fixed_amount_max` overrides the bundle maximum.
BundleMatrix encode_bundle(const ingest::BundleActions& bundle, const MatrixConfig& config, const AssetRanking& assets,
                           std::optional<double> fixed_amount_max = std::nullopt);

}  // namespace mevscope::matrix
