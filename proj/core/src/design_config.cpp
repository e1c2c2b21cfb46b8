#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "ufofdm/design_problem.hpp"
#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ParameterError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParameterError("cannot parse " + std::string(what) + " from '" + std::string(t) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text) {
  std::string t(trim(text));
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ParameterError("cannot parse boolean from '" + t + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string t;
  for (char ch : trim(text)) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(static_cast<char>(std::tolower(ch)));
  }
  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) return parse_double(t, "angle");

  std::string coef = t.substr(0, pi_pos);
  std::string rest = t.substr(pi_pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    factor = parse_double(coef, "angle coefficient");
  }
  double denom = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParameterError("cannot parse angle from '" + t + "'");
    denom = parse_double(rest.substr(1), "angle denominator");
    if (denom == 0.0) throw ParameterError("angle denominator is zero");
  }
  return factor * kPi / denom;
}

std::string format_angle(double radians) {
  const double ratio = radians / kPi;
  for (int den = 1; den <= 1024; den *= 2) {
    const double num = ratio * den;
    const double rounded = std::round(num);
    if (std::abs(num - rounded) < 1e-12 && rounded != 0.0) {
      const long n = std::lround(rounded);
      std::string out = (n == 1 ? "" : (n == -1 ? "-" : std::to_string(n))) + "pi";
      if (den != 1) out += "/" + std::to_string(den);
      return out;
    }
  }
  return format_double(radians);
}

std::vector<int> parse_carriers(std::string_view text, int M) {
  const std::string_view t = trim(text);
  std::vector<int> out;
  if (const auto colon = t.find(':'); colon != std::string_view::npos) {
    const int a = parse_int(t.substr(0, colon), "carrier range start");
    const int b = parse_int(t.substr(colon + 1), "carrier range end");
    if (M <= 0 || a < 0 || b < 0 || a >= M || b >= M) throw ParameterError("carrier range outside [0, M-1]");
    for (int k = a;; k = (k + 1) % M) {
      out.push_back(k);
      if (k == b) break;
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const auto comma = t.find(',', pos);
    const auto piece = t.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!trim(piece).empty()) out.push_back(parse_int(piece, "carrier index"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParameterError("empty carrier list");
  return out;
}

std::string format_carriers(std::span<const int> carriers) {
  if (carriers.empty()) return "";
  bool run = true;
  for (std::size_t i = 1; i < carriers.size(); ++i) run = run && carriers[i] == carriers[i - 1] + 1;
  if (run) return std::to_string(carriers.front()) + ":" + std::to_string(carriers.back());
  std::string out;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(carriers[i]);
  }
  return out;
}

DesignSpec parse_design_config(std::string_view text, const DesignSpec& base) {
  DesignSpec spec = base;
  std::string carriers_text;
  bool have_S = false;
  bool have_G = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view l = trim(line);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(l.substr(0, eq)));
    const std::string_view value = trim(l.substr(eq + 1));
    if (key == "M") {
      spec.M = parse_int(value, "M");
    } else if (key == "N") {
      spec.N = parse_int(value, "N");
    } else if (key == "carriers") {
      carriers_text = std::string(value);
    } else if (key == "lambda") {
      spec.lambda = parse_double(value, "lambda");
    } else if (key == "stopband_start") {
      spec.stopband_start = parse_angle(value);
    } else if (key == "stopband_grid") {
      spec.stopband_grid = parse_int(value, "stopband_grid");
      have_S = true;
    } else if (key == "nonneg_grid") {
      spec.nonneg_grid = parse_int(value, "nonneg_grid");
      have_G = true;
    } else if (key == "allow_carrier_overlap") {
      spec.allow_carrier_overlap = parse_bool(value);
    } else {
      throw ParameterError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!carriers_text.empty()) spec.carriers = parse_carriers(carriers_text, spec.M);
  // Grids follow N (S = 15N, G = 16N) unless given explicitly.
  if (!have_S && spec.N != base.N) spec.stopband_grid = 15 * spec.N;
  if (!have_G && spec.N != base.N) spec.nonneg_grid = 16 * spec.N;
  spec.validate();
  return spec;
}

std::string format_design_config(const DesignSpec& spec) {
  std::ostringstream out;
  out << "M = " << spec.M << '\n'
      << "N = " << spec.N << '\n'
      << "carriers = " << format_carriers(spec.carriers) << '\n'
      << "lambda = " << format_double(spec.lambda) << '\n'
      << "stopband_start = " << format_angle(spec.stopband_start) << '\n'
      << "stopband_grid = " << spec.stopband_grid << '\n'
      << "nonneg_grid = " << spec.nonneg_grid << '\n'
      << "allow_carrier_overlap = " << (spec.allow_carrier_overlap ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace ufofdm
