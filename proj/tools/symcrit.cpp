// symcrit: analyze reflective symmetric graphs, cross-check against brute
// force, and generate random test graphs.

#include "symcrit/critical.hpp"
#include "symcrit/graph_file.hpp"
#include "symcrit/oracle.hpp"
#include "symcrit/report.hpp"
#include "symcrit/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace symcrit;

constexpr int exit_pass = 0;
constexpr int exit_input_error = 1;
constexpr int exit_fail = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256_hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::ostringstream o;
  for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return o.str();
}

SymmetricGraph parse_text(const std::string &text) {
  std::istringstream in(text);
  return parse_symmetric_graph(in);
}

// ---------------------------------------------------------------------------
// analyze

// --strict: a check whose hypotheses are not met counts as a failure.
bool verdict_pass(const FactorizationReport &r, bool strict) {
  if (!strict) return r.all_applicable_pass();
  return std::all_of(r.checks.begin(), r.checks.end(), [](const Check &c) { return c.applicable && c.passed; });
}

int cmd_analyze(const std::vector<std::string> &paths, const std::string &format, bool strict) {
  int code = exit_pass;
  json all = json::array();
  for (const auto &path : paths) {
    try {
      const std::string text = read_file(path);
      const InputInfo info{path, sha256_hex(text)};
      const auto report = main_theorem_verdict(parse_text(text));
      if (format == "structured") all.push_back(report_json(report, info));
      else std::cout << report_text(report, info) << (paths.size() > 1 ? "\n" : "");
      if (!verdict_pass(report, strict)) code = std::max(code, exit_fail);
    } catch (const std::exception &e) {
      std::cerr << "symcrit: " << path << ": " << e.what() << '\n';
      if (const auto *bad = dynamic_cast<const InvalidGraph *>(&e))
        for (const auto &v : bad->violations()) std::cerr << "  " << v.message() << '\n';
      code = std::max(code, exit_input_error);
    }
  }
  if (format == "structured") {
    if (paths.size() == 1 && all.size() == 1) std::cout << all[0].dump(2) << '\n';
    else if (paths.size() > 1) std::cout << all.dump(2) << '\n';
  }
  return code;
}

// ---------------------------------------------------------------------------
// oracle

struct Comparison {
  std::string name;
  std::string computed;
  std::string enumerated;
  bool agree;
};

void compare(std::vector<Comparison> &out, std::string name, const BigInt &computed, std::uint64_t enumerated) {
  out.push_back({std::move(name), computed.str(), std::to_string(enumerated), computed == BigInt(enumerated)});
}

std::vector<Comparison> plain_comparisons(const Multigraph &g, std::size_t limit) {
  std::vector<Comparison> out;
  compare(out, "forests = |K(G)|", forest_count(g), oracle::count_maximal_forests(g, limit));
  const auto space = p_bicycle_space(g, 2);
  const auto found = oracle::bicycles(g, limit);
  compare(out, "bicycles = 2^dim(Z ∩ B mod 2)", BigInt(1) << space.dim(), found.size());
  bool members = true;
  for (const auto h : found) {
    ModpVector v(g.edge_count(), 0);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = (h >> j) & 1U;
    members = members && space.contains(v);
  }
  out.push_back({"enumerated bicycles lie in Z ∩ B mod 2", members ? "yes" : "no", "yes", members});
  return out;
}

std::vector<Comparison> symmetric_comparisons(const SymmetricGraph &g, std::size_t limit) {
  auto out = plain_comparisons(g.graph, limit);
  const auto m = build_maps(g);
  const auto groups = critical_groups(m);
  compare(out, "forests(G+) = |K(G+)|", *groups.k_plus.order(), oracle::count_maximal_forests(m.dec.plus, limit));
  compare(out, "forests(G-) = |K(G-)|", *groups.k_minus.order(), oracle::count_maximal_forests(m.dec.minus, limit));
  const auto f_star = induced_f_star(m, groups);
  compare(out, "phi-fixed bicycles = |coker f*|", *hom_cokernel(f_star).order(),
          oracle::count_fixed_bicycles(g.graph, m.phi_perm, limit));
  compare(out, "psi-fixed bicycles = |ker f*|", *hom_kernel(f_star).order(),
          oracle::count_fixed_bicycles(m.plus_minus, m.psi_perm, limit));
  return out;
}

int cmd_oracle(const std::string &path, std::size_t max_enum, const std::string &format) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception &e) {
    std::cerr << "symcrit: " << e.what() << '\n';
    return exit_input_error;
  }
  std::string mode = "symmetric";
  std::vector<Comparison> rows;
  try {
    std::optional<SymmetricGraph> sg;
    std::string symmetric_error;
    try {
      sg = parse_text(text);
    } catch (const std::exception &e) {
      symmetric_error = e.what();
    }
    if (sg) {
      rows = symmetric_comparisons(*sg, max_enum);
    } else {
      std::istringstream in(text);
      Multigraph g;
      try {
        g = parse_plain_graph(in);
      } catch (const std::exception &) {
        throw InputError(symmetric_error);
      }
      mode = "plain";
      rows = plain_comparisons(g, max_enum);
    }
  } catch (const std::exception &e) {
    std::cerr << "symcrit: " << path << ": " << e.what() << '\n';
    return exit_input_error;
  }

  const bool ok = std::all_of(rows.begin(), rows.end(), [](const Comparison &c) { return c.agree; });
  if (format == "structured") {
    json j;
    j["schema"] = oracle_schema;
    j["tool_version"] = tool_version;
    j["input"] = {{"path", path}, {"sha256", sha256_hex(text)}};
    j["mode"] = mode;
    j["comparisons"] = json::array();
    for (const auto &c : rows)
      j["comparisons"].push_back(
          {{"name", c.name}, {"computed", c.computed}, {"enumerated", c.enumerated}, {"agree", c.agree}});
    j["verdict"] = ok ? "agree" : "disagree";
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "oracle " << path << " (" << mode << " graph)\n";
    for (const auto &c : rows)
      std::cout << "  [" << (c.agree ? "ok  " : "DIFF") << "] " << c.name << ": " << c.computed << " vs "
                << c.enumerated << '\n';
    std::cout << "verdict " << (ok ? "agree" : "disagree") << '\n';
  }
  return ok ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------
// random

int cmd_random(std::uint64_t seed, const RandomGraphParams &p) {
  try {
    const std::string body = serialize(random_symmetric_graph(seed, p));
    std::cout << "# symcrit random --seed " << seed << " --left-vertices " << p.left_vertices
              << " --fixed-vertices " << p.fixed_vertices << " --left-edges " << p.left_edges << " --fixed-edges "
              << p.fixed_edges << (p.allow_loops ? "" : " --no-loops") << '\n';
    std::cout << body;
  } catch (const std::exception &e) {
    std::cerr << "symcrit: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_pass;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Critical groups of graphs with a reflective symmetry"};
  app.require_subcommand(1);

  std::vector<std::string> analyze_paths;
  std::string analyze_format = "text";
  auto *analyze = app.add_subcommand("analyze", "Run every check and print a report");
  analyze->add_option("files", analyze_paths, "Symmetric graph files")->required()->check(CLI::ExistingFile);
  analyze->add_option("--format", analyze_format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  bool strict = false;
  analyze->add_flag("--strict", strict, "Exit 2 when a check is not applicable");

  std::string oracle_path;
  std::string oracle_format = "text";
  std::size_t max_enum = oracle::max_edges;
  auto *orc = app.add_subcommand("oracle", "Compare against brute-force enumeration");
  orc->add_option("file", oracle_path, "Symmetric or plain graph file")->required()->check(CLI::ExistingFile);
  orc->add_option("--max-enum", max_enum, "Largest edge count to enumerate (at most 20)")
      ->check(CLI::Range(std::size_t{0}, oracle::max_edges));
  orc->add_option("--format", oracle_format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::uint64_t seed = 1;
  RandomGraphParams params;
  bool no_loops = false;
  auto *rnd = app.add_subcommand("random", "Write a random symmetric graph to standard output");
  rnd->add_option("--seed", seed, "Generator seed");
  rnd->add_option("--left-vertices", params.left_vertices, "Vertices strictly left of the axis");
  rnd->add_option("--fixed-vertices", params.fixed_vertices, "Vertices on the axis");
  rnd->add_option("--left-edges", params.left_edges, "Edges in the left half (each is mirrored)");
  rnd->add_option("--fixed-edges", params.fixed_edges, "Edges along the axis");
  rnd->add_flag("--no-loops", no_loops, "Do not generate loops");

  auto *ver = app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input_error;
  }

  if (*analyze) return cmd_analyze(analyze_paths, analyze_format, strict);
  if (*orc) return cmd_oracle(oracle_path, max_enum, oracle_format);
  if (*rnd) {
    params.allow_loops = !no_loops;
    return cmd_random(seed, params);
  }
  if (*ver) {
    std::cout << "symcrit " << tool_version << '\n';
    return exit_pass;
  }
  return exit_input_error;
}
