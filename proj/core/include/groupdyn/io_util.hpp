#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace groupdyn {

// Splits one delimited line; no quoting, empty fields preserved.
std::vector<std::string> split_line(std::string_view line, char sep);

// Formats a double so that reading it back reproduces the exact value.
std::string fmt_double(double v);

// Lowercases ASCII letters, leaves other bytes untouched.
std::string to_lower(std::string_view s);

// Lowercase word tokens: runs of [a-z0-9_] plus any non-ASCII bytes;
// everything else separates. A leading '#' on a word is stripped.
std::vector<std::string> split_words(std::string_view text);

// Writes content to path via a temporary file + rename so re-runs
// overwrite atomically.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace groupdyn
