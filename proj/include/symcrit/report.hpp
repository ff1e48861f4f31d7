#pragma once

// Text and structured (JSON) renderings of a FactorizationReport. Key order
// is fixed and there is no timestamp, so equal inputs give equal bytes.

#include "symcrit/abelian_group.hpp"
#include "symcrit/symmetry.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace symcrit {

inline constexpr const char *tool_version = "1.0.0";
inline constexpr const char *report_schema = "symcrit.report/1";
inline constexpr const char *oracle_schema = "symcrit.oracle/1";

struct InputInfo {
  std::string path;
  std::string sha256;
};

namespace detail {

inline nlohmann::ordered_json group_json(const FpAbelianGroup &g) {
  nlohmann::ordered_json j;
  j["text"] = g.to_string();
  j["invariant_factors"] = nlohmann::ordered_json::array();
  for (const auto &d : g.invariant_factors()) j["invariant_factors"].push_back(d.str());
  j["free_rank"] = g.free_rank();
  const auto o = g.order();
  j["order"] = o ? nlohmann::ordered_json(o->str()) : nlohmann::ordered_json(nullptr);
  return j;
}

/// "Z/4 + Z/2" from the two summands; trivial summands are dropped.
inline std::string direct_sum_string(const FpAbelianGroup &a, const FpAbelianGroup &b) {
  if (a.is_trivial()) return b.to_string();
  if (b.is_trivial()) return a.to_string();
  return a.to_string() + " + " + b.to_string();
}

}  // namespace detail

/// 0 -> ker -> K(G+) + K(G-) -> K(G) -> coker -> 0, with trivial end terms
/// dropped.
inline std::string exact_sequence_string(const FactorizationReport &r) {
  std::string s = "0 -> ";
  if (!r.ker.is_trivial()) s += r.ker.to_string() + " -> ";
  s += detail::direct_sum_string(r.groups.k_plus, r.groups.k_minus) + " -> " + r.groups.k.to_string();
  if (!r.coker.is_trivial()) s += " -> " + r.coker.to_string();
  return s + " -> 0";
}

inline nlohmann::ordered_json report_json(const FactorizationReport &r, const InputInfo &in) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = report_schema;
  j["tool_version"] = tool_version;
  j["input"] = {{"path", in.path}, {"sha256", in.sha256}};
  j["sizes"] = {{"V_L", r.v_left},  {"V_fixed", r.v_fixed}, {"V_R", r.v_right}, {"E_L", r.e_left},
                {"E_fixed", r.e_fixed}, {"E_R", r.e_right}, {"V_plus", r.v_plus}, {"E_plus", r.e_plus},
                {"V_minus", r.v_minus}, {"E_minus", r.e_minus}};
  j["exponent"] = r.exponent;
  j["applicability"] = {{"plus_connected", r.plus_connected},
                        {"has_fixed_vertices", r.has_fixed_vertices},
                        {"fixed_subgraph_forest", r.fixed_forest},
                        {"fixed_components", r.fixed_components}};
  j["groups"] = {{"K", detail::group_json(r.groups.k)},
                 {"K_plus", detail::group_json(r.groups.k_plus)},
                 {"K_minus", detail::group_json(r.groups.k_minus)},
                 {"K_plus_sum_K_minus", detail::group_json(r.groups.source)},
                 {"ker_f", detail::group_json(r.ker)},
                 {"coker_f", detail::group_json(r.coker)},
                 {"ker_ft", detail::group_json(r.ker_t)},
                 {"coker_ft", detail::group_json(r.coker_t)}};
  j["exact_sequence"] = exact_sequence_string(r);
  const auto &id = r.identification;
  j["bicycles"] = {{"phi_fixed_dim", id.phi_fixed_dim},
                   {"psi_fixed_dim", id.psi_fixed_dim},
                   {"log2_ker", id.log2_ker},
                   {"log2_coker", id.log2_coker},
                   {"ft_kernel_dim", id.ft_kernel_dim},
                   {"alternate_log2_ker", id.alt_log2_ker},
                   {"alternate_log2_coker", id.alt_log2_coker},
                   {"alternate_ker_matches", id.alt_ker_matches},
                   {"alternate_coker_matches", id.alt_coker_matches}};
  const auto &s = r.snake;
  j["snake"] = {{"psi_cycles", s.psi_cycles},
                {"psi_bonds", s.psi_bonds},
                {"psi_cap", s.psi_cap},
                {"psi_sum", s.psi_sum},
                {"phi_cycles", s.phi_cycles},
                {"phi_bonds", s.phi_bonds},
                {"phi_cap", s.phi_cap},
                {"phi_sum", s.phi_sum},
                {"cycle_difference", s.cycle_difference},
                {"literal_cycle_difference", s.literal_cycle_difference}};
  j["witnesses"] = {{"literal_ft_witness", r.torsion.literal_ft_witness},
                    {"injection_domain_dim", r.injection.domain_dim},
                    {"injection_kernel_dim", r.injection.kernel_dim}};
  j["checks"] = json::array();
  for (const auto &c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", !c.applicable ? "not_applicable" : c.passed ? "pass" : "fail"},
                           {"detail", c.detail}});
  j["verdict"] = r.all_applicable_pass() ? "pass" : "fail";
  return j;
}

inline std::string report_text(const FactorizationReport &r, const InputInfo &in) {
  std::ostringstream o;
  o << "graph " << in.path << "  (sha256 " << in.sha256 << ")\n";
  o << "  V_L=" << r.v_left << " V^phi=" << r.v_fixed << " V_R=" << r.v_right << "  E_L=" << r.e_left
    << " E^phi=" << r.e_fixed << " E_R=" << r.e_right << '\n';
  o << "  G+: " << r.v_plus << " vertices, " << r.e_plus << " edges" << (r.plus_connected ? " (connected)" : " (disconnected)")
    << "   G-: " << r.v_minus << " vertices, " << r.e_minus << " edges\n";
  o << "K(G)       " << r.groups.k.to_string() << '\n';
  o << "K(G+)      " << r.groups.k_plus.to_string() << '\n';
  o << "K(G-)      " << r.groups.k_minus.to_string() << '\n';
  o << "ker f*     " << r.ker.to_string() << '\n';
  o << "coker f*   " << r.coker.to_string() << '\n';
  o << "sequence   " << exact_sequence_string(r) << '\n';
  o << "exponent   |V^phi| - |E^phi| - 1 = " << r.exponent << '\n';
  o << "bicycles   phi-fixed dim " << r.identification.phi_fixed_dim << ", psi-fixed dim "
    << r.identification.psi_fixed_dim << '\n';
  o << "checks\n";
  for (const auto &c : r.checks)
    o << "  [" << (!c.applicable ? "n/a " : c.passed ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << '\n';
  o << "verdict    " << (r.all_applicable_pass() ? "pass" : "fail") << '\n';
  return o.str();
}

}  // namespace symcrit
