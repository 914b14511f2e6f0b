#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dfamin/dfa.hpp"
#include "dfamin/distance.hpp"
#include "dfamin/hardness.hpp"
#include "dfamin/kmin.hpp"

// Exit codes: 0 success, 2 parse error, 3 infinite difference where a finite
// one was required, 4 violated constraint (improper colouring, parameter
// bounds, precondition failures).

namespace {

using dfamin::Dfa;
using dfamin::Mode;
using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dfamin::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dfamin::ResourceError("cannot write '" + path + "'");
  out << text;
}

Dfa load_dfa(const std::string& path) { return dfamin::parse_dfa(slurp(path)); }

void write_dfa(const Dfa& d, const std::string& path, bool dot) {
  std::string text = dot ? dfamin::to_dot(d) : dfamin::serialize_dfa(d);
  if (path.empty() || path == "-")
    std::cout << text;
  else
    spit(path, text);
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    spit(path, text);
}

Mode parse_mode(const std::string& mode) {
  if (mode == "partial") return Mode::kPartial;
  if (mode == "total") return Mode::kTotal;
  throw dfamin::ArgumentError("mode must be 'partial' or 'total'");
}

json sym_json(const dfamin::SymdiffResult& sd, int64_t bound) {
  json j;
  j["errors"] = sd.count.str();
  j["max_error_len"] = sd.max_error_len;
  if (bound >= dfamin::kInf)
    j["similarity_bound"] = nullptr;
  else
    j["similarity_bound"] = bound;
  j["finite"] = bound < dfamin::kInf;
  return j;
}

json report_json(const dfamin::HardnessReport& r) {
  json j;
  j["instance_states"] = r.instance_states;
  j["colored_states"] = r.colored_states;
  j["errors"] = r.errors.str();
  j["max_error_len"] = r.max_error_len;
  j["expected_low"] = r.expected_low.str();
  j["expected_high"] = r.expected_high.str();
  j["pass"] = r.pass;
  j["details"] = r.details;
  return j;
}

std::string sizes_csv(const std::vector<int64_t>& sizes) {
  std::string csv;
  for (size_t k = 0; k < sizes.size(); ++k)
    csv += std::to_string(k) + "," + std::to_string(sizes[k]) + "\n";
  return csv;
}

struct GenArgs {
  std::string family, graph_path, coloring_path;
  std::string out_instance, out_colored, out_report;
  int64_t s = 4, k = 17;
};

int run_gen(const GenArgs& a, bool verify_only) {
  dfamin::Graph g = dfamin::parse_graph(slurp(a.graph_path));
  dfamin::HardnessInstance inst;
  if (a.family == "hyper")
    inst = dfamin::build_hyper_instance(g);
  else if (a.family == "kmin")
    inst = dfamin::build_kmin_instance(g, a.s, a.k);
  else
    throw dfamin::ArgumentError("family must be 'hyper' or 'kmin'");
  if (!verify_only && !a.out_instance.empty())
    spit(a.out_instance, dfamin::serialize_dfa(inst.dfa));

  if (a.coloring_path.empty()) {
    if (verify_only)
      throw dfamin::ArgumentError("verify needs a colouring");
    json j;
    j["family"] = inst.family;
    j["states"] = inst.dfa.num_states();
    j["expected_low"] = inst.errors_low.str();
    j["expected_high"] = inst.errors_high.str();
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  dfamin::Coloring c = dfamin::parse_coloring(g, slurp(a.coloring_path));
  Dfa colored = a.family == "hyper" ? dfamin::build_hyper_colored(g, c)
                                    : dfamin::build_kmin_colored(g, c, a.s, a.k);
  if (!verify_only && !a.out_colored.empty())
    spit(a.out_colored, dfamin::serialize_dfa(colored));

  dfamin::HardnessReport r = dfamin::verify_hardness(inst, colored);
  json j = report_json(r);
  std::cout << j.dump(2) << "\n";
  if (!a.out_report.empty()) spit(a.out_report, j.dump(2) + "\n");
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DFA minimisation toolkit: classical, hyper- and k-minimisation,"
               " distance forests, language comparison, hardness instances"};
  app.require_subcommand(1);

  std::string in_path, in_path_b, out_path, mode = "partial";
  int64_t k = 0;
  int64_t max_len = dfamin::kAutoLen;
  bool dot = false;

  auto add_io = [&](CLI::App* cmd, bool with_out = true) {
    cmd->add_option("input", in_path, "input DFA file")->required();
    if (with_out) cmd->add_option("-o,--output", out_path, "output file ('-' = stdout)");
    cmd->add_option("--mode", mode, "minimality convention: partial|total")
        ->check(CLI::IsMember({"partial", "total"}));
  };

  CLI::App* c_min = app.add_subcommand("minimise", "classical minimisation");
  add_io(c_min);
  c_min->add_flag("--dot", dot, "write DOT instead of the text format");

  CLI::App* c_kmin = app.add_subcommand("kmin", "k-minimisation");
  add_io(c_kmin);
  c_kmin->add_option("-k", k, "similarity horizon")->required()->check(CLI::NonNegativeNumber);
  c_kmin->add_flag("--dot", dot, "write DOT instead of the text format");

  CLI::App* c_hyper = app.add_subcommand("hypermin", "hyper-minimisation");
  add_io(c_hyper);
  c_hyper->add_flag("--dot", dot, "write DOT instead of the text format");

  CLI::App* c_sizes = app.add_subcommand("sizes", "k-minimal sizes, CSV rows k,size");
  add_io(c_sizes);

  CLI::App* c_sweep = app.add_subcommand("sweep", "k-minimal sizes via the merging sweep");
  add_io(c_sweep);

  CLI::App* c_forest = app.add_subcommand("forest", "distance forest of a minimal DFA");
  add_io(c_forest);

  CLI::App* c_cmp = app.add_subcommand("compare", "symmetric difference of two DFAs");
  c_cmp->add_option("a", in_path, "first DFA")->required();
  c_cmp->add_option("b", in_path_b, "second DFA")->required();
  c_cmp->add_option("--max-len", max_len, "count only words up to this length");

  GenArgs ga;
  auto add_gen = [&](CLI::App* cmd, bool coloring_required) {
    cmd->add_option("family", ga.family, "hyper|kmin")->required();
    cmd->add_option("graph", ga.graph_path, "edge-list graph file")->required();
    auto* col = cmd->add_option("coloring", ga.coloring_path, "vertex-colour file");
    if (coloring_required) col->required();
    cmd->add_option("--s", ga.s, "chain parameter (kmin family)");
    cmd->add_option("--k", ga.k, "similarity horizon (kmin family)");
  };
  CLI::App* c_gen = app.add_subcommand("gen", "generate a hardness instance");
  add_gen(c_gen, false);
  c_gen->add_option("--out-instance", ga.out_instance, "write the instance DFA here");
  c_gen->add_option("--out-colored", ga.out_colored, "write the collapsed DFA here");
  c_gen->add_option("--report", ga.out_report, "write the JSON report here");

  CLI::App* c_verify = app.add_subcommand("verify", "re-derive and check a hardness pair");
  add_gen(c_verify, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_min->parsed() || c_hyper->parsed() || c_kmin->parsed()) {
      Dfa d = load_dfa(in_path);
      Mode m = parse_mode(mode);
      Dfa out;
      if (c_min->parsed())
        out = dfamin::minimise(d, m);
      else if (c_hyper->parsed())
        out = dfamin::hyper_minimise(d, m);
      else
        out = dfamin::k_minimise(d, k, m);
      std::cout << d.num_states() << " " << out.num_states() << "\n";
      if (c_kmin->parsed()) {
        dfamin::SymdiffResult sd = dfamin::count_symdiff(d, out);
        std::cout << "errors: " << sd.count.str() << "\n";
        std::cout << "similarity_bound: " << dfamin::similarity_bound(d, out) << "\n";
      }
      if (!out_path.empty()) write_dfa(out, out_path, dot);
      return 0;
    }
    if (c_sizes->parsed()) {
      write_text(sizes_csv(dfamin::sizes_for_all_k(load_dfa(in_path), parse_mode(mode))),
                 out_path);
      return 0;
    }
    if (c_sweep->parsed()) {
      dfamin::AllKSweep sweep(load_dfa(in_path), parse_mode(mode));
      std::vector<int64_t> sizes;
      sizes.push_back(sweep.state_count());
      while (!sweep.done()) {
        sweep.advance();
        sizes.push_back(sweep.state_count());
      }
      write_text(sizes_csv(sizes), out_path);
      return 0;
    }
    if (c_forest->parsed()) {
      Dfa d = load_dfa(in_path);
      dfamin::DistanceForest f = dfamin::build_distance_forest(d);
      write_text(f.dump(d), out_path);
      return 0;
    }
    if (c_cmp->parsed()) {
      Dfa a = load_dfa(in_path);
      Dfa b = load_dfa(in_path_b);
      int64_t bound = dfamin::similarity_bound(a, b);
      dfamin::SymdiffResult sd = dfamin::count_symdiff(a, b, max_len);
      std::cout << sym_json(sd, bound).dump(2) << "\n";
      return 0;
    }
    if (c_gen->parsed()) return run_gen(ga, false);
    if (c_verify->parsed()) return run_gen(ga, true);
  } catch (const dfamin::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dfamin::InfiniteDifferenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dfamin::ColoringError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const dfamin::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const dfamin::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
