#include "dd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace dd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string csv_rows_header(const MetaList& meta, const std::string& columns) {
  return render_metadata(meta) + columns + "\n";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

bool is_skippable(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;  // blank
}

}  // namespace

std::string render_metadata(const MetaList& meta) {
  std::string out;
  for (const auto& [key, value] : meta)
    out += "# " + key + "=" + value + "\n";
  return out;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      const long long num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      const std::string den_text = text.substr(slash + 1);
      const long long den = std::stoll(den_text, &used);
      if (used != den_text.size() || den == 0)
        throw std::invalid_argument(text);
      return static_cast<double>(num) / static_cast<double>(den);
    }
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number or rational: '" + text + "'");
  }
}

void write_filter_csv(const std::filesystem::path& path,
                      const std::vector<double>& omega_t_over_2pi,
                      const std::vector<double>& values, const MetaList& meta) {
  std::string out = csv_rows_header(meta, "omega_t_over_2pi,value");
  for (std::size_t i = 0; i < omega_t_over_2pi.size(); ++i)
    out += format_double(omega_t_over_2pi[i]) + "," + format_double(values[i]) +
           "\n";
  write_text_atomic(path, out);
}

void write_curve_csv(const std::filesystem::path& path,
                     const CoherenceCurve& curve, const MetaList& meta) {
  std::string out = csv_rows_header(meta, "tau_us,L");
  for (std::size_t i = 0; i < curve.tau_values.size(); ++i)
    out += format_double(curve.tau_values[i] * 1e6) + "," +
           format_double(curve.l_values[i]) + "\n";
  write_text_atomic(path, out);
}

CoherenceCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  CoherenceCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    if (!header_seen) {
      header_seen = true;  // column names
      continue;
    }
    std::istringstream row(line);
    double tau_us = 0.0, level = 0.0;
    char comma = 0;
    if (!(row >> tau_us >> comma >> level))
      throw IoError("bad curve row in " + path.string() + ": " + line);
    curve.tau_values.push_back(tau_us * 1e-6);
    curve.l_values.push_back(level);
  }
  if (curve.tau_values.empty())
    throw IoError("no curve data in " + path.string());
  return curve;
}

void write_dips_csv(const std::filesystem::path& path,
                    const std::vector<Dip>& dips, const MetaList& meta) {
  std::string out = csv_rows_header(meta, "tau_us,depth,width_us,zone");
  for (const auto& dip : dips)
    out += format_double(dip.tau_center * 1e6) + "," +
           format_double(dip.depth) + "," + format_double(dip.width * 1e6) +
           "," + dip.zone_label + "\n";
  write_text_atomic(path, out);
}

void write_map_csv(const std::filesystem::path& path, const MagnitudeMap& map,
                   const MetaList& meta) {
  std::string out = render_metadata(meta);
  for (double dperp : map.d_perp_axis) out += "," + format_double(dperp * 1e9);
  out += "\n";
  for (std::size_t i = 0; i < map.d_par_axis.size(); ++i) {
    out += format_double(map.d_par_axis[i] * 1e9);
    for (double v : map.values[i]) out += "," + format_double(v);
    out += "\n";
  }
  write_text_atomic(path, out);
}

void write_map_json(const std::filesystem::path& path, const MagnitudeMap& map,
                    const MetaList& meta) {
  nlohmann::json j;
  for (const auto& [key, value] : meta) j["meta"][key] = value;
  auto& dpar = j["d_par_nm"] = nlohmann::json::array();
  for (double v : map.d_par_axis) dpar.push_back(v * 1e9);
  auto& dperp = j["d_perp_nm"] = nlohmann::json::array();
  for (double v : map.d_perp_axis) dperp.push_back(v * 1e9);
  j["values"] = map.values;
  write_text_atomic(path, j.dump(2) + "\n");
}

MagnitudeMap read_map_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  MagnitudeMap map;
  std::string line;
  bool axis_seen = false;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!axis_seen) {
      if (cells.empty() || !cells.front().empty())
        throw IoError("bad map axis row in " + path.string());
      for (std::size_t i = 1; i < cells.size(); ++i)
        map.d_perp_axis.push_back(std::stod(cells[i]) * 1e-9);
      axis_seen = true;
      continue;
    }
    if (cells.size() != map.d_perp_axis.size() + 1)
      throw IoError("ragged map row in " + path.string() + ": " + line);
    map.d_par_axis.push_back(std::stod(cells.front()) * 1e-9);
    std::vector<double> values;
    values.reserve(cells.size() - 1);
    for (std::size_t i = 1; i < cells.size(); ++i)
      values.push_back(std::stod(cells[i]));
    map.values.push_back(std::move(values));
  }
  if (map.values.empty()) throw IoError("no map data in " + path.string());
  return map;
}

void write_bath_file(const std::filesystem::path& path,
                     const std::vector<NuclearSpin>& bath,
                     const MetaList& meta) {
  std::string out = render_metadata(meta);
  out += "# a_par_hz a_perp_hz [d_nm theta_deg]\n";
  for (const auto& spin : bath) {
    out += format_double(spin.a_par / kTwoPi) + " " +
           format_double(spin.a_perp / kTwoPi);
    if (spin.origin) {
      out += " " + format_double(spin.origin->d * 1e9) + " " +
             format_double(spin.origin->theta * 180.0 / std::numbers::pi);
    }
    out += "\n";
  }
  write_text_atomic(path, out);
}

std::vector<NuclearSpin> read_bath_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<NuclearSpin> bath;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    std::istringstream row(line);
    double a_par_hz = 0.0, a_perp_hz = 0.0;
    if (!(row >> a_par_hz >> a_perp_hz))
      throw IoError("bad bath row in " + path.string() + ": " + line);
    NuclearSpin spin;
    spin.a_par = a_par_hz * kTwoPi;
    spin.a_perp = std::abs(a_perp_hz) * kTwoPi;
    double d_nm = 0.0, theta_deg = 0.0;
    if (row >> d_nm >> theta_deg)
      spin.origin = SpinGeometry{d_nm * 1e-9, theta_deg * std::numbers::pi / 180.0};
    bath.push_back(spin);
  }
  return bath;
}

}  // namespace dd
