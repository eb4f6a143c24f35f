// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mevscope/ingest/bundle.hpp>
#include <mevscope/ingest/transport.hpp>

namespace mevscope::ingest {

struct FlashbotsConfig {
    std::size_t page_limit{100};
    std::size_t max_pages{100000};
};

//! Client for the Flashbots blocks API (`GET /v1/blocks?before=N&limit=M`), which pages
//! backwards from `before`. Schema drift raises AdapterError naming the field.
class FlashbotsBlocksClient {
  public:
    FlashbotsBlocksClient(Transport& transport, FlashbotsConfig config = {}) : transport_{transport}, config_{config} {}

    [[nodiscard]] std::vector<Bundle> fetch(BlockRange range);

    //! Decodes one page into bundles; also reports the lowest block number in the page.
    static std::vector<Bundle> parse_page(std::string_view body, std::optional<std::uint64_t>& lowest_block);

  private:
    Transport& transport_;
    FlashbotsConfig config_;
};

struct FetchOptions {
    std::optional<std::string> record_dir;
    std::optional<std::string> replay_dir;
    FlashbotsConfig flashbots;
};

//! `source` is either an http(s) URL of a blocks API or a path to a bundle fixture.
//! Returns bundles within `range` ordered by (block_number, bundle_index).
std::vector<Bundle> fetch_bundles(const std::string& source, BlockRange range, const FetchOptions& options = {});

}  // namespace mevscope::ingest
