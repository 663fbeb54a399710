#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace qwalk {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Writes to a sibling temporary and renames into place, so a failed
/// writer never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace qwalk
