#include "polarmax/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

namespace polarmax {

std::string tool_version() { return POLARMAX_VERSION; }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

namespace {

// JSON has no infinity; singular values are written as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::vector<double> parse_numbers(std::string_view line, const char* what) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ',' || line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc()) throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(line) + "'");
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

}  // namespace

Json to_json(const Point& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(number(x[i]));
  return a;
}

Json to_json(const PointSet& points) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < points.cols(); ++j) a.push_back(to_json(Point(points.col(j))));
  return a;
}

Json to_json(const PolarizationReport& report) {
  Json j;
  j["value"] = number(report.value);
  j["witness"] = to_json(report.witness);
  j["resolution"] = report.resolution;
  j["kernel"] = report.kernel.describe();
  j["mode"] = to_string(report.mode);
  j["singular"] = report.singular;
  return j;
}

Json to_json(const DiscreteMeasure& measure) {
  Json j;
  j["support"] = to_json(measure.support);
  Json w = Json::array();
  for (Eigen::Index k = 0; k < measure.weights.size(); ++k) w.push_back(measure.weights[k]);
  j["weights"] = std::move(w);
  return j;
}

Json to_json(const Domain& domain) {
  Json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) {
          j["shape"] = std::is_same_v<T, Sphere> ? "sphere" : "ball";
          j["p"] = s.p;
          j["radius"] = number(s.radius);
          j["center"] = to_json(s.center);
        } else if constexpr (std::is_same_v<T, Cube>) {
          j["shape"] = "cube";
          j["p"] = s.p;
          j["side"] = number(s.side);
          j["corner"] = to_json(s.corner);
        } else if constexpr (std::is_same_v<T, Interval>) {
          j["shape"] = "interval";
          j["a"] = number(s.a);
          j["b"] = number(s.b);
        } else {
          j["shape"] = "cloud";
          j["points"] = to_json(s.points);
        }
      },
      domain.shape());
  return j;
}

namespace {

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("shape: expected a coordinate array");
  Point x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) x[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return x;
}

}  // namespace

Domain domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j["shape"].is_string())
    throw std::invalid_argument("shape: expected an object with a \"shape\" field");
  const std::string shape = j["shape"].get<std::string>();
  const auto allowed = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items())
      if (key != "shape" && std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        throw std::invalid_argument("shape: unknown field '" + key + "' for " + shape);
  };
  const auto num = [&](const char* key, double fallback) { return j.contains(key) ? j[key].get<double>() : fallback; };
  const auto pt = [&](const char* key) { return j.contains(key) ? point_from_json(j[key]) : Point(); };
  if (shape == "sphere" || shape == "ball") {
    allowed({"p", "radius", "center"});
    const int p = j.at("p").get<int>();
    return shape == "sphere" ? Domain::sphere(p, num("radius", 1.0), pt("center"))
                             : Domain::ball(p, num("radius", 1.0), pt("center"));
  }
  if (shape == "circle") {
    allowed({"radius", "center"});
    return Domain::circle(num("radius", 1.0), pt("center"));
  }
  if (shape == "cube") {
    allowed({"p", "side", "corner"});
    return Domain::cube(j.at("p").get<int>(), num("side", 1.0), pt("corner"));
  }
  if (shape == "interval") {
    allowed({"a", "b"});
    return Domain::interval(j.at("a").get<double>(), j.at("b").get<double>());
  }
  if (shape == "cloud") {
    allowed({"points"});
    return Domain::cloud(points_from_json(j.at("points")));
  }
  throw std::invalid_argument("shape: unknown shape '" + shape + "'");
}

PointSet points_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("points: expected a non-empty array of points");
  const std::size_t p = rows[0].size();
  PointSet out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (!rows[j].is_array() || rows[j].size() != p) throw std::invalid_argument("points: ragged point list");
    for (std::size_t i = 0; i < p; ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i].get<double>();
  }
  return out;
}

PointSet read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto row = parse_numbers(line, "points csv");
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("points csv: rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("points csv: no points");
  PointSet out(static_cast<Eigen::Index>(rows.front().size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < rows[j].size(); ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
  return out;
}

PointSet load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) out << (i ? "," : "") << format_double(points(i, j));
    out << '\n';
  }
}

Point parse_point(std::string_view text) {
  const auto v = parse_numbers(text, "point");
  if (v.empty()) throw std::invalid_argument("point: empty");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace polarmax
