#pragma once

#include <filesystem>
#include <string>

namespace standby {

// 10 significant digits, the fixed format of every CSV we write.
std::string fmt_num(double v);

// Writes to a temporary sibling and renames it into place. Throws Error(Io).
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace standby
