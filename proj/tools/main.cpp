/*
   Copyright 2026 the ringnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringnet/decompose.hpp"
#include "ringnet/parser.hpp"
#include "ringnet/report.hpp"
#include "ringnet/represent.hpp"

namespace {

using namespace ringnet;
using ordered_json = nlohmann::ordered_json;

/// Collects verdicts/matrices/sets once; renders as text lines or as the
/// single JSON object depending on the output mode.
class Report {
 public:
  explicit Report(bool json_mode) : json_mode_(json_mode) {
    doc_["verdicts"] = ordered_json::object();
    doc_["matrices"] = ordered_json::object();
    doc_["sets"] = ordered_json::object();
    doc_["errata"] = ordered_json::array();
  }

  void line(const std::string& s) {
    if (!json_mode_) std::cout << s << '\n';
  }

  void verdict(const std::string& name, bool value) {
    doc_["verdicts"][name] = value;
    line(name + ": " + (value ? "yes" : "no"));
  }

  void matrix(const std::string& name, const LogicalMatrix& m) {
    doc_["matrices"][name] = ordered_json{{"rows", m.rows}, {"cols", m.cols}};
    line(name + " = " + to_delta_string(m));
  }

  void int_set(const std::string& name, const std::vector<int>& v, const std::string& rendered = "") {
    doc_["sets"][name] = v;
    if (!rendered.empty()) {
      line(name + ": " + rendered);
      return;
    }
    std::ostringstream os;
    os << name << ": {";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    os << '}';
    line(os.str());
  }

  void pair_set(const std::string& name, const std::vector<std::pair<int, int>>& v) {
    ordered_json arr = ordered_json::array();
    std::ostringstream os;
    os << name << ": {";
    for (std::size_t i = 0; i < v.size(); ++i) {
      arr.push_back({v[i].first, v[i].second});
      if (i) os << ',';
      os << '(' << v[i].first << ',' << v[i].second << ')';
    }
    os << '}';
    doc_["sets"][name] = arr;
    line(os.str());
  }

  void erratum(const std::string& note) {
    doc_["errata"].push_back(note);
    line("erratum: " + note);
  }

  void raw(const std::string& key, const std::string& body) {
    doc_[key] = body;
    line(body);
  }

  /// machine-readable payload only; no text rendering
  void data(const std::string& key, ordered_json value) { doc_[key] = std::move(value); }

  void finish() {
    if (json_mode_) std::cout << doc_.dump(2) << '\n';
  }

  bool any_negative() const {
    for (const auto& [key, value] : doc_["verdicts"].items()) {
      (void)key;
      if (value.is_boolean() && !value.get<bool>()) return true;
    }
    return false;
  }

 private:
  bool json_mode_;
  ordered_json doc_;
};

struct GlobalOptions {
  std::string format = "text";
  std::size_t budget = 1'000'000;
  int steps = 20;
  unsigned seed = 1;
  bool exit_zero_on_negative = false;

  bool json() const { return format == "json"; }
  CompileOptions compile() const { return CompileOptions{budget}; }
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<int> parse_value_list(const std::string& text, const Network& net) {
  std::vector<int> labels;
  std::istringstream is(text);
  std::string item;
  const int k = net.ring->k;
  std::optional<CrtIso> iso;
  if (net.crt_literals) iso = crt_iso(k);
  while (std::getline(is, item, ',')) {
    const int v = std::stoi(item);
    if (v < 0 || v >= k) throw std::invalid_argument("state/input value out of range: " + item);
    const int label = value_to_label(k, v);
    labels.push_back(iso ? iso->to_product(label) : label);
  }
  return labels;
}

std::string tuple_of(const Network& net, int state_index) {
  return state_tuple(net.ring->k, net.n, state_index);
}

long long assrsize(const Network& net) {
  long long r = 1;
  for (int i = 0; i < net.n; ++i) r *= net.ring->k;
  return r;
}

int exit_code(const Report& report, const GlobalOptions& opt) {
  return (!opt.exit_zero_on_negative && report.any_negative()) ? 1 : 0;
}

int cmd_ring_verify(const GlobalOptions& opt, const std::string& path) {
  Report report(opt.json());
  const RingPtr ring = read_ring(read_text_file(path));
  const AxiomReport rep = verify_ring(*ring);
  report.line("ring " + ring->name + " k=" + std::to_string(ring->k));
  report.verdict("add_commutative", rep.add_commutative);
  report.verdict("add_associative", rep.add_associative);
  report.verdict("add_identity", rep.add_identity);
  report.verdict("add_invertible", rep.add_invertible);
  report.verdict("mul_associative", rep.mul_associative);
  report.verdict("mul_identity", rep.mul_identity);
  report.verdict("mul_commutative", rep.mul_commutative);
  report.verdict("distributive_left", rep.distributive_left);
  report.verdict("distributive_right", rep.distributive_right);
  report.verdict("is_commutative_ring", rep.is_commutative_ring());
  report.finish();
  return exit_code(report, opt);
}

int cmd_ring_enum(const GlobalOptions& opt, int k, int budget_ms) {
  Report report(opt.json());
  const EnumerationResult res = enumerate_rings(k, std::chrono::milliseconds(budget_ms));
  report.line("found " + std::to_string(res.rings.size()) + " commutative rings with " + std::to_string(k) +
              " elements" + (res.complete ? "" : " (partial: budget exceeded)"));
  report.verdict("enumeration_complete", res.complete);
  for (std::size_t i = 0; i < res.rings.size(); ++i) {
    const auto& r = res.rings[i];
    report.matrix("add_" + std::to_string(i + 1), r->add);
    report.matrix("mul_" + std::to_string(i + 1), r->mul);
    report.matrix("neg_" + std::to_string(i + 1), r->neg);
    if (!opt.json()) std::cout << write_ring(*r);
  }
  report.finish();
  return exit_code(report, opt);
}

int cmd_ring_iso(const GlobalOptions& opt, const std::string& f1, const std::string& f2) {
  Report report(opt.json());
  const RingPtr a = read_ring(read_text_file(f1));
  const RingPtr b = read_ring(read_text_file(f2));
  const auto isos = find_isomorphisms(*a, *b);
  report.verdict("isomorphic", !isos.empty());
  int index = 0;
  for (const auto& pi : isos) {
    std::ostringstream os;
    for (std::size_t i = 0; i < pi.size(); ++i) {
      if (i) os << ',';
      os << pi[i];
    }
    report.int_set("iso_" + std::to_string(++index), pi, "[" + os.str() + "]");
  }
  report.finish();
  return exit_code(report, opt);
}

int cmd_net_compile(const GlobalOptions& opt, const std::string& path, bool verify_symbolic) {
  Report report(opt.json());
  const Network net = parse_network_file(path);
  const Assr assr = compile_assr(net, opt.compile());
  report.line("ring " + net.ring->name + " states=" + std::to_string(net.n) +
              " inputs=" + std::to_string(net.m) + " outputs=" + std::to_string(net.p));
  for (int i = 0; i < net.n; ++i) {
    report.matrix("M" + std::to_string(i + 1), assr.node[static_cast<std::size_t>(i)]);
  }
  report.matrix(net.is_control() ? "L" : "M", assr.M);
  for (int l = 0; l < net.p; ++l) {
    report.matrix("E" + std::to_string(l + 1), assr.out[static_cast<std::size_t>(l)]);
  }
  if (net.p > 0) report.matrix("E", assr.E);
  if (verify_symbolic) {
    const Assr symbolic = compile_assr_symbolic(net, opt.compile());
    const bool same = symbolic.M == assr.M && (net.p == 0 || symbolic.E == assr.E);
    report.verdict("symbolic_matches_bruteforce", same);
    if (!same) report.erratum("symbolic and brute-force compilation disagree");
  }
  report.finish();
  return exit_code(report, opt);
}

int cmd_net_simulate(const GlobalOptions& opt, const std::string& path, const std::string& x0_text,
                     const std::string& u_text, int steps) {
  Report report(opt.json());
  const Network net = parse_network_file(path);
  const std::vector<int> x0 = parse_value_list(x0_text, net);
  if (static_cast<int>(x0.size()) != net.n) throw std::invalid_argument("--x0 must list one value per state");
  std::vector<std::vector<int>> controls;
  if (!u_text.empty()) {
    std::istringstream is(u_text);
    std::string step;
    while (std::getline(is, step, ';')) controls.push_back(parse_value_list(step, net));
    // a control sequence shorter than the horizon repeats cyclically
    const std::size_t period = controls.size();
    while (static_cast<int>(controls.size()) < steps && period > 0) {
      controls.push_back(controls[controls.size() % period]);
    }
  }
  if (net.m > 0 && controls.empty()) throw std::invalid_argument("control network needs --u");
  for (const auto& u : controls) {
    if (static_cast<int>(u.size()) != net.m) throw std::invalid_argument("--u step arity mismatch");
  }
  const auto traj = trajectory_eval(net, x0, controls, steps);
  const int k = net.ring->k;
  ordered_json rows = ordered_json::array();
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const int idx = pack_state(k, traj[t]);
    std::ostringstream os;
    os << "t=" << t << "  d" << assrsize(net) << "[" << idx << "]  " << tuple_of(net, idx);
    report.line(os.str());
    rows.push_back(idx);
  }
  report.data("trajectory_states", rows);
  report.finish();
  return exit_code(report, opt);
}

int cmd_net_analyze(const GlobalOptions& opt, const std::string& path) {
  Report report(opt.json());
  const Network net = parse_network_file(path);
  const AnalysisReport rep = analyze(net, opt.compile());
  report.line("ring " + rep.ring_name + " k=" + std::to_string(rep.k) + " states=" + std::to_string(rep.states));

  if (!net.is_control()) {
    std::ostringstream fp;
    for (std::size_t i = 0; i < rep.fixed_points.size(); ++i) {
      if (i) fp << ", ";
      fp << rep.fixed_points[i] << " ~ " << tuple_of(net, rep.fixed_points[i]);
    }
    report.int_set("fixed_points", rep.fixed_points, "{" + fp.str() + "}");
    report.line("attractors: " + std::to_string(rep.attractors.size()));
    ordered_json cycles = ordered_json::array();
    for (const auto& c : rep.attractors) {
      std::ostringstream os;
      os << "  cycle length " << c.states.size() << " basin " << c.basin << " states {";
      for (std::size_t i = 0; i < c.states.size(); ++i) {
        if (i) os << ',';
        os << c.states[i];
      }
      os << '}';
      report.line(os.str());
      cycles.push_back({{"states", c.states}, {"basin", c.basin}});
    }
    report.data("attractor_cycles", cycles);
    report.finish();
    return exit_code(report, opt);
  }

  if (rep.pure_control_terms) {
    report.line("note: dynamics contain pure control terms; ideal-restriction analyses need controls inside the ideal");
  }
  std::ostringstream cfp;
  for (std::size_t i = 0; i < rep.control_fixed_points.size(); ++i) {
    if (i) cfp << ", ";
    cfp << rep.control_fixed_points[i] << " ~ " << tuple_of(net, rep.control_fixed_points[i]);
  }
  report.int_set("control_fixed_points", rep.control_fixed_points, "{" + cfp.str() + "}");
  report.int_set("globally_reachable", rep.globally_reachable);
  report.verdict("completely_controllable", rep.completely_controllable);
  report.int_set("stabilizable_to", rep.stabilizable_targets);
  std::ostringstream sync;
  for (std::size_t i = 0; i < rep.sync_targets.size(); ++i) {
    if (i) sync << ", ";
    sync << label_to_value(rep.k, rep.sync_targets[i]);
  }
  report.int_set("synchronization_targets", rep.sync_targets, "{" + sync.str() + "}");
  if (rep.obs) {
    report.verdict("observable", rep.obs->observable);
    report.pair_set("indistinguishable_pairs", rep.obs->indistinguishable);
    report.verdict("observable_post_transition", rep.obs->observable_post);
    report.pair_set("indistinguishable_pairs_post_transition", rep.obs->indistinguishable_post);
  }
  report.finish();
  return exit_code(report, opt);
}

int cmd_decompose(const GlobalOptions& opt, const std::string& path) {
  Report report(opt.json());
  const Network net = parse_network_file(path);
  const DecompositionReport rep = verify_decomposition(net, opt.compile());
  report.line("factors: " + std::to_string(rep.factor_nets.size()));
  for (std::size_t i = 0; i < rep.factor_nets.size(); ++i) {
    report.line("--- factor " + std::to_string(i + 1) + " over " + rep.factor_nets[i].ring->name + " ---");
    report.raw("factor_" + std::to_string(i + 1), print_network(rep.factor_nets[i]));
    report.matrix("M_factor_" + std::to_string(i + 1), rep.factor_assrs[i].M);
  }
  report.matrix("M_original", rep.original);
  report.matrix("M_recombined", rep.combined);
  report.verdict("decomposition_transition_equal", rep.transition_equal);
  if (rep.output_equal) report.verdict("decomposition_output_equal", *rep.output_equal);
  for (std::size_t i = 0; i < rep.factor_fixed_points.size(); ++i) {
    report.int_set("factor_" + std::to_string(i + 1) + "_fixed_points", rep.factor_fixed_points[i]);
  }

  // seeded trajectory spot-checks of the factor correspondence
  if (!net.is_control()) {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> pick(1, static_cast<int>(compile_assr(net, opt.compile()).state_count()));
    const Assr original = compile_assr(net, opt.compile());
    std::vector<Assr> fassr;
    for (const auto& f : rep.factor_nets) fassr.push_back(compile_assr(f, opt.compile()));
    bool all_ok = true;
    const int samples = 10;
    for (int s = 0; s < samples; ++s) {
      const int z0 = pick(rng);
      const auto zt = trajectory(original.M, z0, opt.steps);
      for (std::size_t i = 1; i <= fassr.size(); ++i) {
        const auto labels = unpack_state(net.ring->k, net.n, z0);
        std::vector<int> parts(static_cast<std::size_t>(net.n));
        for (int j = 0; j < net.n; ++j) {
          parts[static_cast<std::size_t>(j)] = project(*net.ring, labels[static_cast<std::size_t>(j)], static_cast<int>(i));
        }
        const int kf = rep.factor_nets[i - 1].ring->k;
        const auto ft = trajectory(fassr[i - 1].M, pack_state(kf, parts), opt.steps);
        for (int t = 0; t <= opt.steps; ++t) {
          const auto zl = unpack_state(net.ring->k, net.n, zt[static_cast<std::size_t>(t)]);
          std::vector<int> zp(static_cast<std::size_t>(net.n));
          for (int j = 0; j < net.n; ++j) {
            zp[static_cast<std::size_t>(j)] = project(*net.ring, zl[static_cast<std::size_t>(j)], static_cast<int>(i));
          }
          if (pack_state(kf, zp) != ft[static_cast<std::size_t>(t)]) all_ok = false;
        }
      }
    }
    report.verdict("trajectory_spot_checks", all_ok);
  }
  report.finish();
  return exit_code(report, opt);
}

int cmd_product(const GlobalOptions& opt, const std::string& f1, const std::string& f2) {
  Report report(opt.json());
  const Network a = parse_network_file(f1);
  const Network b = parse_network_file(f2);
  const Network prod = product_network(a, b);
  report.raw("product_network", print_network(prod));
  report.finish();
  return exit_code(report, opt);
}

int cmd_represent(const GlobalOptions& opt, const std::string& path, const std::string& matrix_text) {
  Report report(opt.json());
  Representation rep;
  if (!matrix_text.empty()) {
    rep = represent_map(parse_delta(matrix_text), opt.compile());
  } else {
    rep = represent_network(parse_network_file(path), opt.compile());
  }
  report.raw("represented_network", print_network(rep.net));
  // re-parse and re-verify the emitted text
  const Network back = parse_network(print_network(rep.net));
  const Assr assr = compile_assr(back, opt.compile());
  bool equal = true;
  for (std::size_t i = 0; i < rep.source.size(); ++i) equal = equal && assr.node[i] == rep.source[i];
  report.verdict("representation_exact", equal);
  report.matrix("M", rep.assr.M);
  report.finish();
  return exit_code(report, opt);
}

int cmd_linear_analyze(const GlobalOptions& opt, const std::string& path) {
  Report report(opt.json());
  const LinearNetwork lin = parse_linear_file(path);
  const LinearControllabilityReport rep = linear_controllability(lin, opt.compile());
  for (std::size_t i = 0; i < rep.factors.size(); ++i) {
    report.line("--- factor " + std::to_string(i + 1) + " over " + rep.factors[i].ring->name + " ---");
    report.raw("factor_" + std::to_string(i + 1), print_linear(rep.factors[i]));
    const Assr assr = linear_assr(rep.factors[i], opt.compile());
    report.matrix("L_factor_" + std::to_string(i + 1), assr.M);
    report.verdict("factor_" + std::to_string(i + 1) + "_completely_controllable",
                   rep.factor_verdicts[i]);
  }
  report.verdict("combined_completely_controllable", rep.combined);

  // cross-check against the unprojected polynomial compilation when it fits
  try {
    const Assr direct = compile_assr(linear_to_network(lin), opt.compile());
    const bool direct_verdict = controllability(direct).completely_controllable;
    report.verdict("direct_completely_controllable", direct_verdict);
    if (direct_verdict != rep.combined) {
      report.erratum("combined and direct controllability verdicts disagree");
    }
  } catch (const BudgetExceeded&) {
    report.line("direct cross-check skipped: budget exceeded");
  }
  report.finish();
  return exit_code(report, opt);
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions opt;
  CLI::App app{"workbench for dynamical networks over finite commutative rings"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", opt.budget, "state-space budget in matrix columns")->envname("RINGNET_BUDGET");
  app.add_option("--steps", opt.steps, "trajectory step limit");
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_flag("--exit-zero-on-negative", opt.exit_zero_on_negative,
               "do not signal negative analysis verdicts through the exit status");

  // ring verify / enum / iso
  auto* ring_cmd = app.add_subcommand("ring", "construct and relate rings");
  ring_cmd->require_subcommand(1);
  std::string ring_file, ring_file2;
  auto* verify_cmd = ring_cmd->add_subcommand("verify", "check the ring axioms of a serialized ring");
  verify_cmd->add_option("file", ring_file)->required();
  int enum_k = 4;
  int enum_budget_ms = 60000;
  auto* enum_cmd = ring_cmd->add_subcommand("enum", "enumerate commutative rings of a given size");
  enum_cmd->add_option("k", enum_k)->required();
  enum_cmd->add_option("--budget-ms", enum_budget_ms);
  auto* iso_cmd = ring_cmd->add_subcommand("iso", "list ring isomorphisms between two serialized rings");
  iso_cmd->add_option("file1", ring_file)->required();
  iso_cmd->add_option("file2", ring_file2)->required();

  // net compile / simulate / analyze
  auto* net_cmd = app.add_subcommand("net", "compile, simulate and analyze networks");
  net_cmd->require_subcommand(1);
  std::string net_file, x0_text, u_text;
  bool verify_symbolic = false;
  int sim_steps = 10;
  auto* compile_cmd = net_cmd->add_subcommand("compile", "algebraic state-space representation");
  compile_cmd->add_option("file", net_file)->required();
  compile_cmd->add_flag("--verify-symbolic", verify_symbolic, "cross-check with the symbolic compiler");
  auto* simulate_cmd = net_cmd->add_subcommand("simulate", "trajectory table");
  simulate_cmd->add_option("file", net_file)->required();
  simulate_cmd->add_option("--x0", x0_text, "initial state values, comma separated")->required();
  simulate_cmd->add_option("--u", u_text, "control values per step, ';' between steps");
  simulate_cmd->add_option("--steps", sim_steps);
  auto* analyze_cmd = net_cmd->add_subcommand("analyze", "fixed points, attractors and control verdicts");
  analyze_cmd->add_option("file", net_file)->required();

  std::string deco_file;
  auto* deco_cmd = app.add_subcommand("decompose", "factor a network over a product ring");
  deco_cmd->add_option("file", deco_file)->required();

  std::string prod_file1, prod_file2;
  auto* prod_cmd = app.add_subcommand("product", "pairwise product of two networks");
  prod_cmd->add_option("file1", prod_file1)->required();
  prod_cmd->add_option("file2", prod_file2)->required();

  std::string rep_file, rep_matrix;
  auto* rep_cmd = app.add_subcommand("represent", "realize a map or network over the prime product ring");
  rep_cmd->add_option("file", rep_file);
  rep_cmd->add_option("--matrix", rep_matrix, "transition map in delta notation, e.g. d6[4,6,1,3,2,5]");

  auto* linear_cmd = app.add_subcommand("linear", "linear networks over product rings");
  linear_cmd->require_subcommand(1);
  std::string lin_file;
  auto* lin_analyze = linear_cmd->add_subcommand("analyze", "per-factor and combined verdicts");
  lin_analyze->add_option("file", lin_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return cmd_ring_verify(opt, ring_file);
    if (enum_cmd->parsed()) return cmd_ring_enum(opt, enum_k, enum_budget_ms);
    if (iso_cmd->parsed()) return cmd_ring_iso(opt, ring_file, ring_file2);
    if (compile_cmd->parsed()) return cmd_net_compile(opt, net_file, verify_symbolic);
    if (simulate_cmd->parsed()) return cmd_net_simulate(opt, net_file, x0_text, u_text, sim_steps);
    if (analyze_cmd->parsed()) return cmd_net_analyze(opt, net_file);
    if (deco_cmd->parsed()) return cmd_decompose(opt, deco_file);
    if (prod_cmd->parsed()) return cmd_product(opt, prod_file1, prod_file2);
    if (rep_cmd->parsed()) {
      if (rep_file.empty() && rep_matrix.empty()) {
        std::cerr << "represent: need a network file or --matrix\n";
        return 2;
      }
      return cmd_represent(opt, rep_file, rep_matrix);
    }
    if (lin_analyze->parsed()) return cmd_linear_analyze(opt, lin_file);
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " at line " << e.line << ", column " << e.col;
    std::cerr << ": " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget refusal: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
