#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dd/analysis.hpp"
#include "dd/coherence.hpp"
#include "dd/spin_bath.hpp"

namespace dd {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered key=value pairs emitted as "# key=value" header lines. Stripping
// the "# " prefix yields a valid flat config file that reproduces the run.
using MetaList = std::vector<std::pair<std::string, std::string>>;

std::string render_metadata(const MetaList& meta);

// Writes via a temporary file in the same directory plus rename.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string format_double(double v);  // shortest round-trippable-ish, %.10g

// Exact rational ("3/10") or plain floating-point literal.
double parse_fraction(const std::string& text);

// filter CSV: header lines, then "omega_t_over_2pi,value" rows.
void write_filter_csv(const std::filesystem::path& path,
                      const std::vector<double>& omega_t_over_2pi,
                      const std::vector<double>& values, const MetaList& meta);

// curve CSV: header lines, then "tau_us,L" rows.
void write_curve_csv(const std::filesystem::path& path,
                     const CoherenceCurve& curve, const MetaList& meta);
CoherenceCurve read_curve_csv(const std::filesystem::path& path);

// dip report CSV: "tau_us,depth,width_us,zone" rows.
void write_dips_csv(const std::filesystem::path& path,
                    const std::vector<Dip>& dips, const MetaList& meta);

// map CSV: first row is ",d_perp_nm..." and each following row starts with
// its d_par_nm value. JSON form is {d_par_nm, d_perp_nm, values}.
void write_map_csv(const std::filesystem::path& path, const MagnitudeMap& map,
                   const MetaList& meta);
void write_map_json(const std::filesystem::path& path, const MagnitudeMap& map,
                    const MetaList& meta);
MagnitudeMap read_map_csv(const std::filesystem::path& path);

// bath file: one spin per line, "a_par_hz a_perp_hz [d_nm theta_deg]";
// '#' comments and blank lines are skipped on read.
void write_bath_file(const std::filesystem::path& path,
                     const std::vector<NuclearSpin>& bath,
                     const MetaList& meta);
std::vector<NuclearSpin> read_bath_file(const std::filesystem::path& path);

}  // namespace dd
