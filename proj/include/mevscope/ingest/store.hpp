// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <mevscope/ingest/bundle.hpp>

namespace mevscope::ingest {

//! Append-only NDJSON corpus of BundleActions, one record per line. Single writer.
class BundleActionsStore {
  public:
    explicit BundleActionsStore(std::filesystem::path path) : path_{std::move(path)} {}

    //! Appends records in order and flushes.
    void append(std::span<const BundleActions> records) const;
    void append(const BundleActions& record) const { append(std::span{&record, 1}); }

    //! Records in insertion order; a missing file is an empty store. A corrupt line raises
    //! ParseError naming "line N".
    [[nodiscard]] std::vector<BundleActions> load() const;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

//! Parses an NDJSON document of BundleActions records.
std::vector<BundleActions> parse_bundle_actions_ndjson(std::string_view document, const std::string& source_name);

}  // namespace mevscope::ingest
