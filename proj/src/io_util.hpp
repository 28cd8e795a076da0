#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "reval/errors.hpp"

namespace reval::detail {

inline std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw InputError("cannot open " + path.string() + " for reading");
    return in;
}

inline std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, binary ? (std::ios::binary | std::ios::trunc) : std::ios::trunc);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    return out;
}

inline std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

}  // namespace reval::detail
