#pragma once

#include <filesystem>
#include <string>

namespace shade {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// True when the bytes form valid UTF-8.
bool is_valid_utf8(const std::string& bytes);

} // namespace shade
