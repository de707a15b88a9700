#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace ewp {

// Whole-file helpers; both throw Error{io_failure}.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace ewp
