#pragma once
// Small shared helpers: file IO, number formatting, parallel loops.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace jssp {

std::string read_file(const std::filesystem::path& path);

// Writes through a temp file in the target directory and renames it into
// place, so readers never observe partial content. Creates parent dirs.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Shortest decimal form of a double that round-trips exactly.
std::string fmt_double(double v);
// Lambda values in method names and policy specs: one decimal when the value
// is an exact tenth ("0.5", "1.0"), shortest round-trip form otherwise.
std::string lambda_label(double lambda);
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string lower(std::string_view s);
std::string_view trim(std::string_view s);

// Runs fn(i) for i in [0, n). Work units must be independent and keyed by
// index; any thread count then produces identical results. threads <= 1 runs
// inline. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace jssp
