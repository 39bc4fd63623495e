#pragma once

// Small text helpers shared by the observation parsers and the app layer.

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace windfarm::detail {

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view line);

/// RFC 4180-style field split (double-quoted fields, "" escapes).
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no);

std::string_view trim(std::string_view s);
std::string_view strip_bom(std::string_view s);

double parse_double(std::string_view token, std::size_t line_no, const char* what);

std::chrono::sys_seconds make_time(int year, int month, int day, int hour, int minute,
                                   int second, std::size_t line_no);

/// Accepts "YYYY-MM-DD[T ]hh:mm[:ss][Z|+00:00]" and a bare "YYYY-MM-DD".
std::chrono::sys_seconds parse_iso8601(std::string_view text, std::size_t line_no);

}  // namespace windfarm::detail
