#include "dimspect/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dimspect {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// strtod accepts hex floats, inf and nan; only finite decimals get through.
double parse_real(std::string_view text, const char* what) {
  const auto t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw InvalidArgument(std::string("cannot parse ") + what + " '" + std::string(t) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

PointCloud read_points(std::istream& in) {
  std::vector<Point> pts;
  int dim = 0;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string buf(t);
    for (auto& ch : buf) {
      if (ch == ',' || ch == '\t') ch = ' ';
    }
    Point p{0.0, 0.0, 0.0};
    int k = 0;
    std::string_view rest(buf);
    while (true) {
      rest = trim(rest);
      if (rest.empty()) break;
      const auto end = rest.find(' ');
      const auto tok = rest.substr(0, end);
      if (k >= 3) throw InvalidArgument("line " + std::to_string(lineno) + ": more than 3 coordinates");
      p[k++] = parse_real(tok, "coordinate");
      if (end == std::string_view::npos) break;
      rest = rest.substr(end);
    }
    if (dim == 0) dim = k;
    if (k != dim) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                            " coordinates, got " + std::to_string(k));
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw InvalidArgument("point input holds no points");
  return PointCloud(dim, std::move(pts));
}

PointCloud read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open point file '" + path + "'");
  return read_points(in);
}

void write_points(std::ostream& out, const PointCloud& points) {
  char buf[32];
  for (const auto& p : points.points()) {
    for (int k = 0; k < points.dimension(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      if (k > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

std::vector<Theta> parse_theta_grid(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) throw InvalidArgument("empty theta grid");
  std::vector<double> values;
  if (t.find(':') != std::string_view::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw InvalidArgument("theta grid range must be a:b:step");
    const double a = parse_real(parts[0], "grid start");
    const double b = parse_real(parts[1], "grid end");
    const double step = parse_real(parts[2], "grid step");
    if (!(step > 0.0) || b < a) throw InvalidArgument("theta grid needs step > 0 and end >= start");
    const double steps = std::round((b - a) / step);
    if (steps > 1e6) throw InvalidArgument("theta grid is too large");
    const auto count = static_cast<long long>(steps) + 1;
    for (long long i = 0; i < count; ++i) {
      values.push_back(i + 1 == count ? b : a + static_cast<double>(i) * step);
    }
  } else {
    for (auto part : split(t, ',')) values.push_back(parse_real(part, "theta"));
  }
  std::vector<Theta> grid;
  grid.reserve(values.size());
  for (double v : values) {
    if (v < 0.0 || v > 1.0) throw InvalidArgument("theta must lie in [0, 1]");
    if (!grid.empty() && !(v > grid.back().value())) {
      throw InvalidArgument("theta grid must increase strictly");
    }
    grid.emplace_back(v);
  }
  return grid;
}

std::vector<double> parse_delta_list(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) throw InvalidArgument("empty delta list");
  std::vector<double> out;
  for (auto part : split(t, ',')) {
    const double d = parse_real(part, "delta");
    if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (!out.empty() && !(d < out.back())) throw InvalidArgument("deltas must decrease strictly");
    out.push_back(d);
  }
  return out;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const DimensionSpectrum& spectrum) {
  for (const auto& [k, v] : spectrum.metadata()) out << "# " << k << '=' << v << '\n';
  out << "theta,lower,upper,method\n";
  for (const auto& s : spectrum.samples()) {
    out << format_real(s.theta.value()) << ',' << format_real(s.lower) << ','
        << format_real(s.upper) << ',' << to_string(s.method) << '\n';
  }
}

json spectrum_to_json(const DimensionSpectrum& spectrum) {
  json samples = json::array();
  for (const auto& s : spectrum.samples()) {
    samples.push_back({{"theta", s.theta.value()},
                       {"lower", s.lower},
                       {"upper", s.upper},
                       {"method", std::string(to_string(s.method))}});
  }
  json meta = json::object();
  for (const auto& [k, v] : spectrum.metadata()) meta[k] = v;
  return {{"ambient_dimension", spectrum.ambient_dimension()},
          {"metadata", meta},
          {"samples", samples}};
}

DimensionSpectrum spectrum_from_json(const json& j) {
  try {
    const int n = j.at("ambient_dimension").get<int>();
    DimensionSpectrum::Metadata meta;
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) meta[k] = v.get<std::string>();
    }
    std::vector<SpectrumSample> samples;
    for (const auto& s : j.at("samples")) {
      samples.push_back({Theta(s.at("theta").get<double>()), s.at("lower").get<double>(),
                         s.at("upper").get<double>(),
                         method_from_string(s.at("method").get<std::string>())});
    }
    return DimensionSpectrum(n, std::move(samples), std::move(meta));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed spectrum JSON: ") + e.what());
  }
}

CarpetSpec carpet_from_json(const json& j) {
  try {
    std::vector<Digit> digits;
    for (const auto& d : j.at("digits")) {
      if (!d.is_array() || d.size() != 2) throw InvalidArgument("each digit must be [col, row]");
      digits.push_back({d[0].get<int>(), d[1].get<int>()});
    }
    return CarpetSpec(j.at("m").get<int>(), j.at("n").get<int>(), std::move(digits));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed carpet JSON: ") + e.what());
  }
}

json carpet_to_json(const CarpetSpec& spec) {
  json digits = json::array();
  for (const auto& d : spec.digits()) digits.push_back({d.col, d.row});
  return {{"m", spec.m()}, {"n", spec.n()}, {"digits", digits}};
}

json measure_to_json(const AtomicMeasure& measure) {
  json atoms = json::array();
  for (const auto& a : measure.atoms()) {
    json x = json::array();
    for (int k = 0; k < measure.dimension(); ++k) x.push_back(a.x[k]);
    atoms.push_back({{"x", x}, {"mass", a.mass}});
  }
  return {{"dimension", measure.dimension()}, {"total", measure.total()}, {"atoms", atoms}};
}

AtomicMeasure measure_from_json(const json& j) {
  try {
    std::vector<Atom> atoms;
    int dim = j.contains("dimension") ? j.at("dimension").get<int>() : 0;
    for (const auto& a : j.at("atoms")) {
      const auto& x = a.at("x");
      if (dim == 0) dim = static_cast<int>(x.size());
      if (static_cast<int>(x.size()) != dim || dim < 1 || dim > 3) {
        throw InvalidArgument("atom coordinates do not match the measure dimension");
      }
      Point p{0.0, 0.0, 0.0};
      for (int k = 0; k < dim; ++k) p[k] = x[k].get<double>();
      atoms.push_back({p, a.at("mass").get<double>()});
    }
    if (dim == 0) throw InvalidArgument("measure JSON has no atoms");
    return AtomicMeasure(dim, std::move(atoms));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed measure JSON: ") + e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open JSON file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace dimspect
