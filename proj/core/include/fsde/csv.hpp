#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fsde/path.hpp"

namespace fsde {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Header `t,x1,...,xd`, one row per node.
void write_path_csv(std::ostream& out, const SamplePath& path);
std::string path_to_csv(const SamplePath& path);
SamplePath read_path_csv(std::istream& in);

/// Writes content to a sibling temp file and renames it over target.
void write_file_atomic(const std::filesystem::path& target, std::string_view content);

}  // namespace fsde
