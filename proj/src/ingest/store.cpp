// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/ingest/store.hpp>

#include <fstream>

#include <mevscope/common/errors.hpp>
#include <mevscope/common/files.hpp>
#include <mevscope/common/json_fields.hpp>

namespace mevscope::ingest {

using jsonio::json;

void BundleActionsStore::append(std::span<const BundleActions> records) const {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out{path_, std::ios::binary | std::ios::app};
    if (!out) throw Error("cannot open " + path_.string() + " for append");
    for (const auto& r : records) {
        check_alignment(r);
        out << to_json(r).dump() << '\n';
    }
    out.flush();
    if (!out) throw Error("write to " + path_.string() + " failed");
}

std::vector<BundleActions> BundleActionsStore::load() const {
    if (!std::filesystem::exists(path_)) return {};
    return parse_bundle_actions_ndjson(read_file(path_.string()), path_.string());
}

std::vector<BundleActions> parse_bundle_actions_ndjson(std::string_view document, const std::string& source_name) {
    std::vector<BundleActions> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < document.size()) {
        ++line_no;
        const auto end = document.find('\n', pos);
        const auto line = document.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? document.size() : end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const auto where = source_name + ": line " + std::to_string(line_no);
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError(where + ": malformed JSON");
        try {
            out.push_back(bundle_actions_from_json(j, ""));
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return out;
}

}  // namespace mevscope::ingest
