#pragma once

// Internal helpers shared by the CSV writers and readers.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pesl1::detail {

std::string shortest(double v);
std::string fixed4(double v);
double parse_double(std::string_view token);

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace pesl1::detail
