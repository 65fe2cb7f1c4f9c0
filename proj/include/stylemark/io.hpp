#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace stylemark {

// Throws IoError.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers never
// observe a partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace stylemark
