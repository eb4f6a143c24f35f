// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace mevscope {

//! Whole-file read; throws Error naming the path when the file cannot be opened.
std::string read_file(const std::string& path);
//! Atomic-ish replace: writes a sibling temporary then renames it over `path`.
void write_file(const std::string& path, std::string_view content);

}  // namespace mevscope
