#include "text_util.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "windfarm/error.hpp"

namespace windfarm::detail {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (end < text.size() || !line.empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      if (!current.empty() || was_quoted) throw ParseError(line_no, "stray quote in CSV field");
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted CSV field");
  fields.push_back(std::move(current));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
  return s;
}

double parse_double(std::string_view token, std::size_t line_no, const char* what) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value))
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

std::chrono::sys_seconds make_time(int year, int month, int day, int hour, int minute,
                                   int second, std::size_t line_no) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 ||
      second > 60)
    throw ParseError(line_no, "invalid calendar date/time");
  return sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
}

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t n, std::size_t line_no) {
  if (pos + n > s.size()) throw ParseError(line_no, "truncated timestamp '" + std::string(s) + "'");
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError(line_no, "bad timestamp '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

void expect(std::string_view s, std::size_t pos, char c, std::size_t line_no) {
  if (pos >= s.size() || s[pos] != c)
    throw ParseError(line_no, "bad timestamp '" + std::string(s) + "'");
}

}  // namespace

std::chrono::sys_seconds parse_iso8601(std::string_view text, std::size_t line_no) {
  text = trim(text);
  const int y = digits(text, 0, 4, line_no);
  expect(text, 4, '-', line_no);
  const int mo = digits(text, 5, 2, line_no);
  expect(text, 7, '-', line_no);
  const int d = digits(text, 8, 2, line_no);
  int h = 0, mi = 0, sec = 0;
  std::size_t pos = 10;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    h = digits(text, pos + 1, 2, line_no);
    expect(text, pos + 3, ':', line_no);
    mi = digits(text, pos + 4, 2, line_no);
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      sec = digits(text, pos + 1, 2, line_no);
      pos += 3;
    }
  }
  const auto rest = text.substr(std::min(pos, text.size()));
  if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000"))
    throw ParseError(line_no, "unsupported timestamp suffix '" + std::string(rest) + "' (UTC only)");
  return make_time(y, mo, d, h, mi, sec, line_no);
}

}  // namespace windfarm::detail
