#pragma once
// Deterministic file output: CSV grids/sweeps with fixed %.17g formatting and
// ordered JSON sidecars.  Identical inputs must produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "qopa/correlations.hpp"
#include "qopa/output_state.hpp"
#include "qopa/wigner.hpp"

namespace qopa {

inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string grid_csv(const PhaseGrid& g) {
  std::string s = "x,y,W,envelope_a,envelope_b,superposition_sq\n";
  for (const auto& smp : g.samples) {
    s += format_double(smp.x);
    s += ',';
    s += format_double(smp.y);
    s += ',';
    s += format_double(smp.w.value);
    s += ',';
    s += format_double(smp.w.envelope_a);
    s += ',';
    s += format_double(smp.w.envelope_b);
    s += ',';
    s += format_double(smp.w.superposition_modulus_sq);
    s += '\n';
  }
  return s;
}

inline nlohmann::ordered_json grid_sidecar(const PhaseGrid& g) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["gain"] = g.gain;
  j["phi"] = g.phi;
  j["configuration"] = to_string(g.spec.configuration);
  j["mode"] = g.spec.mode == GridMode::Marginal ? "marginal" : "slice";
  j["axes"] = {squeezed_axis_name(g.spec.configuration, g.spec.x_axis.coord),
               squeezed_axis_name(g.spec.configuration, g.spec.y_axis.coord)};
  j["ranges"] = {{g.spec.x_axis.min, g.spec.x_axis.max},
                 {g.spec.y_axis.min, g.spec.y_axis.max}};
  j["counts"] = {g.spec.x_axis.count, g.spec.y_axis.count};
  j["min_value"] = g.min_value;
  j["min_x"] = g.samples[g.min_index].x;
  j["min_y"] = g.samples[g.min_index].y;
  return j;
}

inline nlohmann::ordered_json output_state_json(const OutputState& st) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["configuration"] = to_string(st.configuration);
  j["gain"] = st.gain;
  j["phi"] = st.phi;
  j["truncation"] = st.truncation;
  j["mode_labels"] = st.mode_labels;
  j["normalization_deficit"] = st.normalization_deficit;
  j["paper_prefactor"] = st.paper_prefactor;
  j["printed_prefactor_degenerate"] = st.printed_prefactor_degenerate;
  j["truncation_warning"] = st.truncation_warning;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [occ, amp] : st.amplitudes) {  // std::map: deterministic order
    nlohmann::ordered_json e;
    e["occupations"] = occ;
    e["re"] = amp.real();
    e["im"] = amp.imag();
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

struct SweepRow {
  double value = 0.0;
  CorrelationReport report;
};

inline std::string sweep_csv(const std::string& sweep_var, const std::vector<SweepRow>& rows) {
  std::string s = "sweep_var,value,G1_1,G1_2,G2_11,G2_22,G2_12,G2_12_printed,V,s_over_n,fringe\n";
  for (const auto& r : rows) {
    s += sweep_var;
    s += ',';
    s += format_double(r.value);
    s += ',';
    s += format_double(r.report.g1_1);
    s += ',';
    s += format_double(r.report.g1_2);
    s += ',';
    s += format_double(r.report.g2_11);
    s += ',';
    s += format_double(r.report.g2_22);
    s += ',';
    s += format_double(r.report.g2_12);
    s += ',';
    s += format_double(r.report.g2_12_printed);
    s += ',';
    s += r.report.visibility_mode2.applicable ? format_double(r.report.visibility_mode2.value)
                                              : std::string("nan");
    s += ',';
    s += r.report.snr_mode2.applicable ? format_double(r.report.snr_mode2.value)
                                       : std::string("nan");
    s += ',';
    s += format_double(r.report.fringe.value);
    s += '\n';
  }
  return s;
}

}  // namespace qopa
