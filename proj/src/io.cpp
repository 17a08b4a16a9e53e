#include "fpi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpi {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Rational scalar_to_rational(const json& s) {
  if (s.is_string()) return parse_rational(s.get<std::string>());
  if (s.is_number_integer()) return Rational(s.get<long>());
  // shortest round-trip text of the number, read as an exact decimal
  if (s.is_number()) return parse_rational(s.dump());
  throw std::invalid_argument("point coordinate must be a number or a \"p/q\" string");
}

double scalar_to_double(const json& s) {
  if (s.is_number()) return s.get<double>();
  if (s.is_string()) return to_double(parse_rational(s.get<std::string>()));
  throw std::invalid_argument("point coordinate must be a number or a \"p/q\" string");
}

json rational_cell(const Rational& q) {
  long v = 0;
  if (as_integer(q, &v)) return v;
  return to_string(q);
}

}  // namespace

json point_set_to_json(const PointSet& ps) {
  json j;
  j["d"] = ps.dim();
  j["mode"] = std::string(to_string(ps.mode()));
  json pts = json::array();
  if (ps.has_exact_coords()) {
    for (const auto& p : ps.exact_points()) {
      json row = json::array();
      for (const auto& c : p) row.push_back(rational_cell(c));
      pts.push_back(std::move(row));
    }
  } else {
    for (const auto& p : ps.points()) pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = std::move(pts);
  if (ps.mode() == NumericMode::Rational && !ps.has_exact_coords()) {
    const auto& g = *ps.exact_gram();
    json rows = json::array();
    for (std::size_t r = 0; r < g.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(rational_cell(g(r, c)));
      rows.push_back(std::move(row));
    }
    j["gram"] = std::move(rows);
  }
  return j;
}

PointSet point_set_from_json(const json& j) {
  if (!j.contains("d") || !j.contains("points")) throw std::invalid_argument("point-set JSON needs \"d\" and \"points\"");
  const auto dim = j.at("d").get<std::size_t>();
  const NumericMode mode = j.contains("mode") ? parse_mode(j.at("mode").get<std::string>()) : NumericMode::Float;
  const auto& pts = j.at("points");
  if (!pts.is_array()) throw std::invalid_argument("\"points\" must be an array");

  if (mode == NumericMode::Float) {
    std::vector<VectorD> out;
    for (const auto& row : pts) {
      VectorD v(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) v[i] = scalar_to_double(row[i]);
      out.push_back(std::move(v));
    }
    return PointSet::from_float(dim, std::move(out));
  }

  if (j.contains("gram")) {
    std::vector<VectorD> out;
    for (const auto& row : pts) {
      VectorD v(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) v[i] = scalar_to_double(row[i]);
      out.push_back(std::move(v));
    }
    const auto& rows = j.at("gram");
    GramMatrix g(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) throw std::invalid_argument("\"gram\" must be square");
      for (std::size_t c = 0; c < rows.size(); ++c) g(r, c) = scalar_to_rational(rows[r][c]);
    }
    return PointSet::with_exact_gram(dim, std::move(out), std::move(g));
  }

  std::vector<VectorQ> out;
  for (const auto& row : pts) {
    VectorQ v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v[i] = scalar_to_rational(row[i]);
    out.push_back(std::move(v));
  }
  return PointSet::from_rational(dim, std::move(out));
}

PointSet point_set_from_csv(const std::string& text, NumericMode mode) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      first = false;
      try {
        (void)parse_rational(cells.at(0));
      } catch (const std::exception&) {
        continue;  // header row
      }
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::invalid_argument("CSV point set has no rows");
  const std::size_t dim = rows.front().size();
  if (mode == NumericMode::Float) {
    std::vector<VectorD> out;
    for (const auto& r : rows) {
      VectorD v(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) v[i] = to_double(parse_rational(r[i]));
      out.push_back(std::move(v));
    }
    return PointSet::from_float(dim, std::move(out));
  }
  std::vector<VectorQ> out;
  for (const auto& r : rows) {
    VectorQ v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = parse_rational(r[i]);
    out.push_back(std::move(v));
  }
  return PointSet::from_rational(dim, std::move(out));
}

PointSet load_point_set(const std::filesystem::path& path, NumericMode csv_mode) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".csv") return point_set_from_csv(buf.str(), csv_mode);
  return point_set_from_json(json::parse(buf.str()));
}

void save_point_set(const std::filesystem::path& path, const PointSet& ps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (path.extension() == ".csv") {
    for (const auto& p : ps.points()) {
      for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? "," : "") << format_double(p[i]);
      out << '\n';
    }
    return;
  }
  out << point_set_to_json(ps).dump(2) << '\n';
}

}  // namespace fpi
