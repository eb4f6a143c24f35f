// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/common/files.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <mevscope/common/errors.hpp>

namespace mevscope {

std::string read_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        if (!out) throw Error("cannot write " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace mevscope
