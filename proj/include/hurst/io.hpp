#pragma once

// Plain-text / CSV series ingestion. The first numeric column is used; a
// first row that does not parse as numbers is taken as a header. Blank lines
// and lines starting with '#' are skipped.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/signal.hpp"

namespace hurst {

struct SeriesData {
  std::vector<double> samples;
  std::string column;  // header name, empty when headerless
  std::size_t column_index = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  if (delim == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

inline bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

inline char detect_delimiter(std::string_view line) {
  for (char d : {',', ';', '\t'}) {
    if (line.find(d) != std::string_view::npos) return d;
  }
  return ' ';
}

}  // namespace detail

inline SeriesData parse_series(std::istream& in, const std::string& source = "<input>") {
  SeriesData data;
  std::string line;
  std::size_t line_no = 0;
  bool column_chosen = false;
  bool header_checked = false;
  char delim = ' ';

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;

    if (!header_checked) {
      delim = detail::detect_delimiter(view);
      header_checked = true;
      const auto fields = detail::split_fields(view, delim);
      bool all_numeric = true;
      for (auto f : fields) {
        double tmp;
        if (!detail::parse_double(f, tmp)) all_numeric = false;
      }
      if (!all_numeric) {
        // header row; remember names, pick the column on the first data row
        std::vector<std::string> names;
        for (auto f : fields) names.emplace_back(f);
        std::string next;
        while (std::getline(in, next)) {
          ++line_no;
          std::string_view nv = detail::trim(next);
          if (nv.empty() || nv.front() == '#') continue;
          const auto row = detail::split_fields(nv, delim);
          for (std::size_t i = 0; i < row.size(); ++i) {
            double v;
            if (detail::parse_double(row[i], v)) {
              data.column_index = i;
              data.column = i < names.size() ? names[i] : std::string{};
              data.samples.push_back(v);
              column_chosen = true;
              break;
            }
          }
          if (!column_chosen) {
            fail(ErrorKind::parse_error,
                 source + ":" + std::to_string(line_no) + ": no numeric field in first data row");
          }
          break;
        }
        continue;
      }
    }

    const auto fields = detail::split_fields(view, delim);
    if (!column_chosen) {
      data.column_index = 0;
      column_chosen = true;
    }
    double v;
    if (data.column_index >= fields.size() ||
        !detail::parse_double(fields[data.column_index], v)) {
      const std::string bad = data.column_index < fields.size()
                                  ? std::string(fields[data.column_index])
                                  : std::string("<missing>");
      fail(ErrorKind::parse_error,
           source + ":" + std::to_string(line_no) + ": non-numeric value '" + bad + "'");
    }
    data.samples.push_back(v);
  }
  if (data.samples.empty()) fail(ErrorKind::empty_input, source + ": no numeric samples");
  return data;
}

inline SeriesData read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open '" + path + "'");
  return parse_series(in, path);
}

/// Truncates to the largest power of two not exceeding the sample count.
/// With `strict`, a non-power-of-two length is a parse error instead.
inline Signal to_dyadic_signal(std::vector<double> samples, bool strict, std::ostream* warn) {
  if (samples.size() < 2) {
    fail(ErrorKind::empty_input, "need at least 2 samples, got " + std::to_string(samples.size()));
  }
  if (!is_power_of_two(samples.size())) {
    std::size_t keep = 1;
    while (keep * 2 <= samples.size()) keep *= 2;
    if (strict) {
      fail(ErrorKind::parse_error, "length " + std::to_string(samples.size()) +
                                       " is not a power of two (--strict)");
    }
    if (warn != nullptr) {
      *warn << "warning: truncating " << samples.size() << " samples to " << keep << '\n';
    }
    samples.resize(keep);
  }
  return Signal(std::move(samples));
}

inline void write_series(std::ostream& out, const Signal& signal) {
  char buf[32];
  for (double x : signal.samples()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

}  // namespace hurst
