// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/matrix/matrix.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include <mevscope/common/errors.hpp>

#include "support/builders.hpp"
#include "support/bundles.hpp"
#include "support/oracles.hpp"

namespace mevscope::matrix {

using registry::ActionType;
using test::addr;
using test::BundleBuilder;
using test::ColumnRole;
using test::swap;
using test::token;

namespace {

    std::vector<double> column(const BundleMatrix& m, std::size_t c) {
        std::vector<double> out;
        for (std::size_t r = 0; r < m.height; ++r) out.push_back(m.at(r, c));
        return out;
    }

    bool all_separator(const std::vector<double>& col) {
        return std::all_of(col.begin(), col.end(), [](double v) { return v == kSeparator; });
    }

    ingest::BundleActions prefix(const ingest::BundleActions& b, std::size_t k) {
        ingest::BundleActions p = b;
        p.bundle.txs.resize(k);
        p.per_tx.resize(k);
        return p;
    }

}  // namespace

TEST_CASE("config validation rejects small matrices", "[matrix]") {
    CHECK_THROWS_AS((MatrixConfig{11, 64}.validate()), ConfigError);
    CHECK_THROWS_AS((MatrixConfig{16, 7}.validate()), ConfigError);
    CHECK_NOTHROW((MatrixConfig{12, 8}.validate()));
}

TEST_CASE("amount normalization is odd, monotone and bounded", "[matrix]") {
    CHECK(normalize_amount(0.0, 10.0) == 0.0);
    CHECK(normalize_amount(5.0, 0.0) == 0.0);
    CHECK(normalize_amount(10.0, 10.0) == 1.0);
    CHECK(normalize_amount(1e9, 10.0) == 1.0);
    CHECK(normalize_amount(-1e9, 10.0) == -1.0);
    double previous = -2.0;
    for (double v = -100.0; v <= 100.0; v += 0.5) {
        const double n = normalize_amount(v, 100.0);
        CHECK(n >= previous);
        CHECK(n == -normalize_amount(-v, 100.0));
        CHECK(std::fabs(n) <= 1.0);
        previous = n;
    }
}

TEST_CASE("asset ranking orders by frequency then first appearance", "[matrix]") {
    const auto b = BundleBuilder{}
                       .tx(addr(1), {swap(addr(300), token(2), 1, token(1), 1)})
                       .tx(addr(1), {swap(addr(300), token(1), 1, token(3), 1)})
                       .build();
    const std::vector corpus{b};
    const auto ranking = AssetRanking::from_corpus(corpus);
    REQUIRE(ranking.size() == 3);
    CHECK(ranking.order() == std::vector{token(1), token(2), token(3)});
    CHECK(ranking.normalized(token(1)) == 0.0);
    CHECK(ranking.normalized(token(3)) == Catch::Approx(2.0 / 3.0));
    CHECK(ranking.normalized(token(9)) == 1.0);
}

TEST_CASE("block widths follow the action parameters", "[matrix]") {
    const auto b = BundleBuilder{}.tx(addr(1), {}).build();
    const AddressIndex addresses{b.per_tx[0]};
    const EncodeContext ctx{16, nullptr, 10.0};
    CHECK(encode_action(test::rebasing(addr(1001)), addresses, ctx).width() == 2);
    const auto with_swap = BundleBuilder{}.tx(addr(1), {swap(addr(300), token(1), 5, token(2), 7)}).build();
    const AddressIndex swap_addresses{with_swap.per_tx[0]};
    CHECK(encode_action(with_swap.per_tx[0].actions[0], swap_addresses, ctx).width() == 4);
    CHECK(encode_transaction(b.per_tx[0], ctx).width() == 3);
    CHECK(encode_transaction(with_swap.per_tx[0], ctx).width() == 7);

    const auto two = BundleBuilder{}
                         .tx(addr(1), {swap(addr(300), token(1), 5, token(2), 7), test::rebasing(addr(1001))})
                         .build();
    CHECK(encode_transaction(two.per_tx[0], ctx).width() == 3 + 4 + 2 + 1);
}

TEST_CASE("swap encoding places header, parameters and change rows", "[matrix]") {
    const auto b = BundleBuilder{}.tx(addr(1), {swap(addr(300), token(1), 100, token(2), 50, addr(7))}).build();
    const std::vector corpus{b};
    const auto ranking = AssetRanking::from_corpus(corpus);
    const auto m = encode_bundle(b, {16, 16}, ranking);
    REQUIRE(m.used_width == 7);
    // addresses: sender, recipient, pool, trader
    REQUIRE(m.addresses.at(0) == std::vector{addr(1), addr(0xd0), addr(300), addr(7)});
    CHECK(column(m, 0) == std::vector<double>(16, 0.0));
    CHECK(column(m, 1) == std::vector<double>(16, 0.25));
    for (std::size_t r = 0; r < kHeaderRows; ++r) CHECK(m.at(r, 2) == (r == registry::ordinal(ActionType::kSwap) ? 1.0 : 0.0));
    CHECK(all_separator(column(m, 3)));
    CHECK(m.at(kDirectionRow, 4) == 1.0);
    CHECK(m.at(kAssetRow, 4) == 0.0);
    CHECK(m.at(kAmountRow, 4) == 1.0);
    CHECK(m.at(kCounterpartyRow, 4) == 0.75);
    CHECK(m.at(kDirectionRow, 5) == -1.0);
    CHECK(m.at(kAssetRow, 5) == 0.5);
    CHECK(m.at(kAmountRow, 5) == Catch::Approx(std::log1p(50.0) / std::log1p(100.0)));
    CHECK(m.at(14, 5) == kSeparator);
    CHECK(column(m, 6) == std::vector<double>{0.0, 0.0, 1.0, -1.0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1});
    for (std::size_t c = 7; c < 16; ++c) CHECK(all_separator(column(m, c)));
}

TEST_CASE("token ids get their own column", "[matrix]") {
    const auto b = BundleBuilder{}.tx(addr(1), {test::nft(ActionType::kNftMinting, addr(200), 3)}).build();
    const auto m = encode_bundle(b, {16, 8}, AssetRanking{});
    REQUIRE(m.used_width == 6);
    CHECK(m.at(kDirectionRow, 4) == 0.0);
    CHECK(m.at(kAssetRow, 4) == 1.0);
    CHECK(m.at(kAmountRow, 4) == 1.0);
    CHECK(m.at(kCounterpartyRow, 4) == Catch::Approx(2.0 / 3.0));
}

TEST_CASE("empty bundle is all separators", "[matrix]") {
    ingest::BundleActions empty;
    const auto m = encode_bundle(empty, {16, 32}, AssetRanking{});
    CHECK(m.used_width == 0);
    CHECK(m.cells.size() == 16 * 32);
    CHECK(std::all_of(m.cells.begin(), m.cells.end(), [](double v) { return v == kSeparator; }));
}

TEST_CASE("wide bundles are truncated to the configured width", "[matrix]") {
    BundleBuilder builder;
    for (int i = 0; i < 10; ++i) builder.tx(addr(1), {swap(addr(300), token(1), 5, token(2), 7)});
    const auto b = builder.build();
    const auto full = encode_bundle(b, {16, 256}, AssetRanking{});
    const auto cut = encode_bundle(b, {16, 20}, AssetRanking{});
    CHECK(full.used_width == 10 * 7 + 9 * 2);
    CHECK(cut.used_width == 20);
    for (std::size_t r = 0; r < 16; ++r) {
        for (std::size_t c = 0; c < 20; ++c) CHECK(cut.at(r, c) == full.at(r, c));
    }
}

TEST_CASE("fuzzed bundles satisfy the matrix invariants", "[matrix][property]") {
    std::mt19937_64 rng{20260601};
    std::vector<ingest::BundleActions> corpus;
    for (std::uint64_t i = 0; i < 1000; ++i) corpus.push_back(test::random_bundle(rng, 100 + i, 0));
    const auto ranking = AssetRanking::from_corpus(corpus);

    std::uniform_int_distribution<std::size_t> heights{12, 20};
    std::uniform_int_distribution<std::size_t> widths{8, 160};
    std::size_t failures = 0;
    for (const auto& b : corpus) {
        const MatrixConfig config{heights(rng), widths(rng)};
        const auto m = encode_bundle(b, config, ranking);
        const auto layout = test::matrix_layout(b);
        bool ok = m.height == config.height && m.width == config.width && m.cells.size() == config.height * config.width;
        ok = ok && m.used_width == std::min(layout.size(), config.width);
        ok = ok && std::all_of(m.cells.begin(), m.cells.end(), [](double v) { return v >= -1.0 && v <= 1.0; });
        for (std::size_t c = 0; ok && c < m.width; ++c) {
            const auto col = column(m, c);
            if (c >= m.used_width) {
                ok = all_separator(col);
                continue;
            }
            switch (layout[c]) {
                case ColumnRole::kSeparator:
                    ok = all_separator(col);
                    break;
                case ColumnRole::kHeader: {
                    double sum = 0.0;
                    for (std::size_t r = 0; r < kHeaderRows; ++r) {
                        ok = ok && (col[r] == 0.0 || col[r] == 1.0);
                        sum += col[r];
                    }
                    ok = ok && sum == 1.0;
                    for (std::size_t r = kHeaderRows; r < m.height; ++r) ok = ok && col[r] == kSeparator;
                    break;
                }
                case ColumnRole::kParam:
                    ok = std::fabs(col[kDirectionRow]) == 1.0 && col[kAssetRow] >= 0.0;
                    break;
                case ColumnRole::kTokenId:
                    ok = col[kDirectionRow] == 0.0;
                    break;
                case ColumnRole::kSender:
                case ColumnRole::kRecipient:
                    ok = std::all_of(col.begin(), col.end(), [&](double v) { return v == col[0] && v >= 0.0 && v < 1.0; });
                    break;
                case ColumnRole::kChange:
                    break;
            }
        }
        if (!ok) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("encoding is deterministic and prefixes encode as column prefixes", "[matrix][property]") {
    std::mt19937_64 rng{77};
    for (int i = 0; i < 200; ++i) {
        const auto b = test::random_bundle(rng, 1, 0, 6, 4);
        const std::vector corpus{b};
        const auto ranking = AssetRanking::from_corpus(corpus);
        const MatrixConfig config{16, 256};
        const auto full = encode_bundle(b, config, ranking);
        CHECK(full == encode_bundle(b, config, ranking));
        for (std::size_t k = 1; k < b.per_tx.size(); ++k) {
            const auto part = encode_bundle(prefix(b, k), config, ranking, amount_max(b));
            REQUIRE(part.used_width <= full.used_width);
            bool same = true;
            for (std::size_t r = 0; r < config.height; ++r) {
                for (std::size_t c = 0; c < part.used_width; ++c) same = same && part.at(r, c) == full.at(r, c);
            }
            CHECK(same);
        }
    }
}

TEST_CASE("csv export prints every cell with six decimals", "[matrix]") {
    const auto b = BundleBuilder{}.tx(addr(1), {swap(addr(300), token(1), 100, token(2), 50)}).build();
    const auto m = encode_bundle(b, {12, 8}, AssetRanking{});
    const auto csv = m.to_csv();
    std::istringstream in{csv};
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(rows == 12);
    CHECK(csv.rfind("0.000000,0.250000,", 0) == 0);
    CHECK(csv.find("-1.000000") != std::string::npos);
}

}  // namespace mevscope::matrix
