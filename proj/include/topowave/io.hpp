#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace topowave {

/// Shortest form that still carries 17 significant digits ("%.17g"), so
/// every double written by the tools parses back bit-exactly.
std::string format_real(double value);

/// Writes to "<path>.tmp-<pid>" and renames over path. Throws IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace topowave
