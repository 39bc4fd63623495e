#include "windfarm/wind_resource.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include "windfarm/error.hpp"
#include "text_util.hpp"

namespace windfarm {

namespace {

constexpr double kNdbcMissingDirection = 999.0;
constexpr double kNdbcMissingSpeed = 99.0;
constexpr double kNormTolerance = 1e-9;

// Maps 360 to 0 and rejects anything outside [0, 360].
std::optional<double> normalize_direction(double deg) {
  if (!std::isfinite(deg) || deg < 0.0 || deg > 360.0) return std::nullopt;
  return deg == 360.0 ? 0.0 : deg;
}

struct NdbcColumns {
  std::optional<std::size_t> year, month, day, hour, minute;
  std::size_t direction = 0;
  std::size_t speed = 0;
  std::size_t count = 0;
};

NdbcColumns ndbc_columns(const std::vector<std::string_view>& header, std::size_t line_no) {
  NdbcColumns cols;
  std::optional<std::size_t> dir, spd;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string_view name = header[i];
    if (!name.empty() && name.front() == '#') name.remove_prefix(1);
    if (name == "YY" || name == "YYYY") cols.year = i;
    else if (name == "MM") cols.month = i;
    else if (name == "DD") cols.day = i;
    else if (name == "hh") cols.hour = i;
    else if (name == "mm") cols.minute = i;
    else if (name == "WDIR" || name == "WD") dir = i;
    else if (name == "WSPD") spd = i;
  }
  if (!dir || !spd) throw ParseError(line_no, "NDBC header lacks WDIR/WSPD columns");
  if (!cols.year || !cols.month || !cols.day || !cols.hour)
    throw ParseError(line_no, "NDBC header lacks date/hour columns");
  cols.direction = *dir;
  cols.speed = *spd;
  cols.count = header.size();
  return cols;
}

int field_int(std::string_view token, std::size_t line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

ObservationSet parse_ndbc(std::string_view text, double measurement_height) {
  ObservationSet out;
  std::optional<NdbcColumns> cols;
  bool skip_units = false;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto tokens = detail::split_whitespace(line);
    if (!cols) {
      cols = ndbc_columns(tokens, line_no);
      skip_units = true;
      continue;
    }
    if (line.front() == '#') {
      if (skip_units) {
        skip_units = false;
        continue;
      }
      continue;
    }
    skip_units = false;
    if (tokens.size() != cols->count)
      throw ParseError(line_no, "expected " + std::to_string(cols->count) + " columns, got " +
                                    std::to_string(tokens.size()));
    int year = field_int(tokens[*cols->year], line_no, "year");
    if (year < 100) year += 1900;
    const int month = field_int(tokens[*cols->month], line_no, "month");
    const int day = field_int(tokens[*cols->day], line_no, "day");
    const int hour = field_int(tokens[*cols->hour], line_no, "hour");
    const int minute = cols->minute ? field_int(tokens[*cols->minute], line_no, "minute") : 0;

    const auto dir_tok = tokens[cols->direction];
    const auto spd_tok = tokens[cols->speed];
    if (dir_tok == "MM" || spd_tok == "MM") {
      ++out.dropped_rows;
      continue;
    }
    const double dir = detail::parse_double(dir_tok, line_no, "WDIR");
    const double spd = detail::parse_double(spd_tok, line_no, "WSPD");
    if (dir >= kNdbcMissingDirection || spd >= kNdbcMissingSpeed) {
      ++out.dropped_rows;
      continue;
    }
    WindSample sample{detail::make_time(year, month, day, hour, minute, 0, line_no), spd, 0.0,
                      measurement_height};
    auto norm = normalize_direction(dir);
    if (!norm || !(spd >= 0.0)) {
      ++out.dropped_rows;
      continue;
    }
    sample.direction = *norm;
    out.samples.push_back(sample);
  }
  if (!cols) throw ParseError(line_no, "missing NDBC header");
  return out;
}

ObservationSet parse_generic(std::string_view text, double measurement_height) {
  ObservationSet out;
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (line_no == 1) line = detail::strip_bom(line);
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv(line, line_no);
    if (!have_header) {
      const std::vector<std::string> expected = {"timestamp", "speed_mps", "direction_deg",
                                                 "height_m"};
      if (fields.size() != expected.size())
        throw ParseError(line_no, "expected header timestamp,speed_mps,direction_deg,height_m");
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (detail::trim(fields[i]) != expected[i])
          throw ParseError(line_no, "unexpected header column '" + fields[i] + "'");
      have_header = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
    const auto ts = detail::trim(fields[0]);
    const auto spd_tok = detail::trim(fields[1]);
    const auto dir_tok = detail::trim(fields[2]);
    const auto h_tok = detail::trim(fields[3]);
    if (spd_tok.empty() || dir_tok.empty()) {
      ++out.dropped_rows;
      continue;
    }
    WindSample sample;
    sample.timestamp = detail::parse_iso8601(ts, line_no);
    sample.speed = detail::parse_double(spd_tok, line_no, "speed_mps");
    const double dir = detail::parse_double(dir_tok, line_no, "direction_deg");
    sample.measurement_height =
        h_tok.empty() ? measurement_height : detail::parse_double(h_tok, line_no, "height_m");
    auto norm = normalize_direction(dir);
    if (!norm || !(sample.speed >= 0.0) || !(sample.measurement_height > 0.0)) {
      ++out.dropped_rows;
      continue;
    }
    sample.direction = *norm;
    out.samples.push_back(sample);
  }
  if (!have_header) throw ParseError(line_no, "missing CSV header");
  return out;
}

// Strips NCEI quality suffixes such as "12s" or "270*".
std::string_view strip_flags(std::string_view token) {
  while (!token.empty() && !(std::isdigit(static_cast<unsigned char>(token.back())) ||
                             token.back() == '.'))
    token.remove_suffix(1);
  return token;
}

ObservationSet parse_ncei(std::string_view text, double measurement_height,
                          const NceiColumnMap& map) {
  ObservationSet out;
  std::optional<std::size_t> ts_col, spd_col, dir_col;
  std::size_t width = 0;
  std::size_t line_no = 0;
  auto is_missing = [&](std::string_view tok) {
    return std::find(map.missing_tokens.begin(), map.missing_tokens.end(), tok) !=
           map.missing_tokens.end();
  };
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (line_no == 1) line = detail::strip_bom(line);
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv(line, line_no);
    if (!ts_col) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = detail::trim(fields[i]);
        if (name == map.timestamp_column) ts_col = i;
        if (name == map.speed_column) spd_col = i;
        if (name == map.direction_column) dir_col = i;
      }
      if (!ts_col || !spd_col || !dir_col)
        throw ParseError(line_no, "NCEI header lacks mapped columns " + map.timestamp_column +
                                      "/" + map.speed_column + "/" + map.direction_column);
      width = fields.size();
      continue;
    }
    if (fields.size() < width)
      throw ParseError(line_no, "expected " + std::to_string(width) + " fields, got " +
                                    std::to_string(fields.size()));
    const auto spd_tok = detail::trim(fields[*spd_col]);
    const auto dir_tok = detail::trim(fields[*dir_col]);
    if (is_missing(spd_tok) || is_missing(dir_tok)) {
      ++out.dropped_rows;
      continue;
    }
    const auto spd_num = strip_flags(spd_tok);
    const auto dir_num = strip_flags(dir_tok);
    if (spd_num.empty() || dir_num.empty()) {
      ++out.dropped_rows;
      continue;
    }
    WindSample sample;
    sample.timestamp = detail::parse_iso8601(detail::trim(fields[*ts_col]), line_no);
    sample.speed = detail::parse_double(spd_num, line_no, map.speed_column.c_str()) * map.speed_scale;
    sample.measurement_height = measurement_height;
    auto norm = normalize_direction(detail::parse_double(dir_num, line_no, map.direction_column.c_str()));
    if (!norm || !(sample.speed >= 0.0)) {
      ++out.dropped_rows;
      continue;
    }
    sample.direction = *norm;
    out.samples.push_back(sample);
  }
  if (!ts_col) throw ParseError(line_no, "missing NCEI header");
  return out;
}

}  // namespace

bool WindSample::valid() const {
  return std::isfinite(speed) && speed >= 0.0 && direction >= 0.0 && direction < 360.0 &&
         measurement_height > 0.0;
}

ObservationFormat parse_format(std::string_view name) {
  if (name == "ndbc") return ObservationFormat::ndbc;
  if (name == "ncei") return ObservationFormat::ncei;
  if (name == "generic_csv" || name == "csv") return ObservationFormat::generic_csv;
  throw Error("unsupported observation format '" + std::string(name) + "'");
}

std::string_view to_string(ObservationFormat format) {
  switch (format) {
    case ObservationFormat::ndbc: return "ndbc";
    case ObservationFormat::ncei: return "ncei";
    case ObservationFormat::generic_csv: return "generic_csv";
  }
  return "?";
}

NceiColumnMap NceiColumnMap::from_json(const nlohmann::json& j) {
  NceiColumnMap map;
  map.timestamp_column = j.value("timestamp_column", map.timestamp_column);
  map.speed_column = j.value("speed_column", map.speed_column);
  map.direction_column = j.value("direction_column", map.direction_column);
  map.speed_scale = j.value("speed_scale", map.speed_scale);
  if (j.contains("missing_tokens")) map.missing_tokens = j.at("missing_tokens").get<std::vector<std::string>>();
  return map;
}

ObservationSet parse_observations(std::string_view raw_text, ObservationFormat format,
                                  double measurement_height, const NceiColumnMap& ncei_map) {
  if (detail::trim(raw_text).empty()) throw ParseError(0, "empty input");
  if (!(measurement_height > 0.0)) throw DomainError("measurement height must be positive");
  ObservationSet out;
  switch (format) {
    case ObservationFormat::ndbc: out = parse_ndbc(raw_text, measurement_height); break;
    case ObservationFormat::ncei: out = parse_ncei(raw_text, measurement_height, ncei_map); break;
    case ObservationFormat::generic_csv: out = parse_generic(raw_text, measurement_height); break;
  }
  if (out.samples.empty())
    throw EmptyDatasetError(std::to_string(out.dropped_rows) + " rows dropped");
  return out;
}

double shear_factor(double h_from, double h_to, double z0) {
  if (!(z0 > 0.0)) throw DomainError("roughness length must be positive");
  if (!(h_from > z0) || !(h_to > z0))
    throw DomainError("log-law heights must exceed the roughness length");
  return std::log(h_to / z0) / std::log(h_from / z0);
}

double extrapolate_speed(double v_h1, double h1, double h2, double z0) {
  if (!(v_h1 >= 0.0)) throw DomainError("wind speed must be non-negative");
  return v_h1 * shear_factor(h1, h2, z0);
}

double WindDistribution::probability(std::size_t sector, std::size_t bin) const {
  if (mode == ProbabilityMode::joint) return joint_at(sector, bin);
  return p_theta[sector] * p_u[bin];
}

std::size_t WindDistribution::sector_of(double direction_deg) const {
  const double w = sector_width();
  double shifted = std::fmod(direction_deg + 0.5 * w, 360.0);
  if (shifted < 0.0) shifted += 360.0;
  auto s = static_cast<std::size_t>(std::floor(shifted / w));
  return s % static_cast<std::size_t>(sector_count);
}

std::size_t WindDistribution::bin_of(double speed) const {
  auto it = std::upper_bound(speed_bin_edges.begin(), speed_bin_edges.end(), speed);
  if (it == speed_bin_edges.begin()) return 0;
  auto idx = static_cast<std::size_t>(it - speed_bin_edges.begin()) - 1;
  return std::min(idx, bin_count() - 1);
}

void WindDistribution::validate() const {
  if (sector_count < 1) throw DomainError("sector_count must be >= 1");
  if (!(reference_height > 0.0)) throw DomainError("reference height must be positive");
  if (p_theta.size() != static_cast<std::size_t>(sector_count))
    throw DomainError("p_theta size does not match sector_count");
  if (p_u.empty() || speed_bin_edges.size() != p_u.size() + 1)
    throw DomainError("speed_bin_edges must have one more entry than p_u");
  if (joint.size() != p_theta.size() * p_u.size())
    throw DomainError("joint table has wrong size");
  for (std::size_t i = 1; i < speed_bin_edges.size(); ++i)
    if (!(speed_bin_edges[i] > speed_bin_edges[i - 1]))
      throw DomainError("speed bin edges must be strictly increasing");
  auto check = [](const std::vector<double>& v, const char* what) {
    double sum = 0.0;
    for (double p : v) {
      if (!(p >= 0.0)) throw DomainError(std::string(what) + " has a negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
      throw DomainError(std::string(what) + " does not sum to 1");
  };
  check(p_theta, "p_theta");
  check(p_u, "p_u");
  check(joint, "joint table");
}

WindDistribution WindDistribution::empty(int sector_count, double speed_bin_width,
                                         double reference_height, double max_speed) {
  if (sector_count < 1) throw DomainError("sector_count must be >= 1");
  if (!(speed_bin_width > 0.0)) throw DomainError("speed bin width must be positive");
  WindDistribution d;
  d.reference_height = reference_height;
  d.sector_count = sector_count;
  const auto bins = static_cast<std::size_t>(std::ceil(max_speed / speed_bin_width - 1e-12));
  d.speed_bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) d.speed_bin_edges[b] = b * speed_bin_width;
  d.p_theta.assign(sector_count, 0.0);
  d.p_u.assign(bins, 0.0);
  d.joint.assign(sector_count * bins, 0.0);
  return d;
}

WindDistribution WindDistribution::from_marginals(std::vector<double> p_theta,
                                                  std::vector<double> p_u,
                                                  double speed_bin_width,
                                                  double reference_height) {
  WindDistribution d = empty(static_cast<int>(p_theta.size()), speed_bin_width,
                             reference_height, speed_bin_width * p_u.size());
  d.p_theta = std::move(p_theta);
  d.p_u = std::move(p_u);
  for (std::size_t s = 0; s < d.p_theta.size(); ++s)
    for (std::size_t b = 0; b < d.p_u.size(); ++b)
      d.joint[s * d.p_u.size() + b] = d.p_theta[s] * d.p_u[b];
  d.validate();
  return d;
}

WindDistribution build_distribution(std::span<const WindSample> samples,
                                    const BinningOptions& options, SurfaceRoughness roughness) {
  if (samples.empty()) throw EmptyDatasetError("no samples to bin");
  if (!(roughness.z0 > 0.0)) throw DomainError("roughness length must be positive");
  const double min_height =
      std::min_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
        return a.measurement_height < b.measurement_height;
      })->measurement_height;
  if (!(roughness.z0 < min_height))
    throw DomainError("roughness length must be below every measurement height");

  WindDistribution d = WindDistribution::empty(options.sector_count, options.speed_bin_width,
                                               options.reference_height, options.max_speed);
  d.mode = options.mode;
  const std::size_t bins = d.bin_count();
  std::vector<std::size_t> counts(d.joint.size(), 0);
  for (const auto& s : samples) {
    if (!s.valid()) throw DomainError("invalid wind sample");
    const double v = extrapolate_speed(s.speed, s.measurement_height, options.reference_height,
                                       roughness.z0);
    ++counts[d.sector_of(s.direction) * bins + d.bin_of(v)];
  }
  const auto n = static_cast<double>(samples.size());
  std::vector<std::size_t> sector_counts(d.p_theta.size(), 0), bin_counts(bins, 0);
  for (std::size_t s = 0; s < d.p_theta.size(); ++s)
    for (std::size_t b = 0; b < bins; ++b) {
      const auto c = counts[s * bins + b];
      sector_counts[s] += c;
      bin_counts[b] += c;
      d.joint[s * bins + b] = static_cast<double>(c) / n;
    }
  for (std::size_t s = 0; s < d.p_theta.size(); ++s)
    d.p_theta[s] = static_cast<double>(sector_counts[s]) / n;
  for (std::size_t b = 0; b < bins; ++b) d.p_u[b] = static_cast<double>(bin_counts[b]) / n;
  d.validate();
  return d;
}

WindDistribution build_distribution(std::span<const WindSample> samples, int sector_count,
                                    double speed_bin_width, double reference_height,
                                    SurfaceRoughness roughness) {
  BinningOptions options;
  options.sector_count = sector_count;
  options.speed_bin_width = speed_bin_width;
  options.reference_height = reference_height;
  return build_distribution(samples, options, roughness);
}

double mean_speed(const WindDistribution& dist) {
  double mean = 0.0;
  for (std::size_t b = 0; b < dist.bin_count(); ++b) mean += dist.p_u[b] * dist.bin_speed(b);
  return mean;
}

std::vector<std::size_t> dominant_sectors(const WindDistribution& dist) {
  std::vector<std::size_t> order(dist.p_theta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist.p_theta[a] > dist.p_theta[b]; });
  return order;
}

void to_json(nlohmann::json& j, const WindDistribution& dist) {
  nlohmann::json joint = nlohmann::json::array();
  for (std::size_t s = 0; s < dist.p_theta.size(); ++s) {
    auto first = dist.joint.begin() + static_cast<std::ptrdiff_t>(s * dist.bin_count());
    joint.push_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(dist.bin_count())));
  }
  j = nlohmann::json{
      {"reference_height", dist.reference_height},
      {"sector_count", dist.sector_count},
      {"sector_width", dist.sector_width()},
      {"speed_bin_edges", dist.speed_bin_edges},
      {"p_theta", dist.p_theta},
      {"p_u", dist.p_u},
      {"joint", std::move(joint)},
      {"mode", dist.mode == ProbabilityMode::joint ? "joint" : "product_of_marginals"},
  };
}

void from_json(const nlohmann::json& j, WindDistribution& dist) {
  dist.reference_height = j.at("reference_height").get<double>();
  dist.sector_count = j.at("sector_count").get<int>();
  dist.speed_bin_edges = j.at("speed_bin_edges").get<std::vector<double>>();
  dist.p_theta = j.at("p_theta").get<std::vector<double>>();
  dist.p_u = j.at("p_u").get<std::vector<double>>();
  dist.joint.clear();
  if (j.contains("joint")) {
    for (const auto& row : j.at("joint")) {
      auto values = row.get<std::vector<double>>();
      dist.joint.insert(dist.joint.end(), values.begin(), values.end());
    }
  } else {
    for (double pt : dist.p_theta)
      for (double pu : dist.p_u) dist.joint.push_back(pt * pu);
  }
  const auto mode = j.value("mode", std::string("product_of_marginals"));
  if (mode == "joint") dist.mode = ProbabilityMode::joint;
  else if (mode == "product_of_marginals") dist.mode = ProbabilityMode::product_of_marginals;
  else throw DomainError("unknown probability mode '" + mode + "'");
  dist.validate();
}

}  // namespace windfarm
