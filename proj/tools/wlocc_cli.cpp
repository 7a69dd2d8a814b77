// wlocc: command-line front end.
//
// Exit status: 0 success, 1 property check failed, 2 invalid input,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wlocc/boundary_maps.hpp"
#include "wlocc/figures.hpp"
#include "wlocc/propcheck.hpp"
#include "wlocc/protocol_json.hpp"
#include "wlocc/protocols.hpp"
#include "wlocc/roundopt.hpp"

namespace {

using namespace wlocc;

// Integers, fractions p/q and plain decimals are exact; anything else
// (exponents, inf) is not.
std::optional<Rational> parse_exact(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const Rational den(boost::multiprecision::cpp_int(text.substr(slash + 1)));
      if (den == 0) return std::nullopt;
      return Rational(boost::multiprecision::cpp_int(text.substr(0, slash))) / den;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(whole.begin());
    if (whole.empty()) whole = "0";
    if (frac.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational v = Rational(boost::multiprecision::cpp_int(whole)) +
                 Rational(boost::multiprecision::cpp_int(frac.empty() ? "0" : frac), scale);
    return neg ? Rational(-v) : v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double parse_real(const std::string& text) {
  if (auto exact = parse_exact(text)) return to_double(*exact);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::MalformedInput, "cannot parse number \"" + text + "\"");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  return out;
}

WState parse_state(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(Errc::MalformedInput, "state must be xA,xB,xC");
  return make_state(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
}

Party parse_party_or_throw(const std::string& text) {
  auto p = parse_party(text);
  if (!p) throw Error(Errc::MalformedInput, "unknown party \"" + text + "\"");
  return *p;
}

std::string fmt(double v) { return format_value(v); }

std::string path_string(const std::vector<int>& path) {
  std::string s;
  for (int i : path) s += std::to_string(i);
  return s.empty() ? "-" : s;
}

std::string pair_string(const std::optional<PartyPair>& pair) {
  if (!pair) return "-";
  return std::string{party_name(pair->first), party_name(pair->second)};
}

// monotones -----------------------------------------------------------------

struct MonotonesOptions {
  std::string state = "1/3,1/3,1/3";
  double tol = kDefaultTol;
};

void run_monotones(const MonotonesOptions& o) {
  const WState s = parse_state(o.state);
  std::cout << "x0=" << fmt(s.x0()) << "\n";
  std::cout << "class=" << state_class_name(s.classify(o.tol)) << "\n";
  std::cout << "eta=" << fmt(eta(s, o.tol)) << "\n";
  std::cout << "kappa=" << fmt(kappa(s, o.tol)) << "\n";
  std::cout << "zeta=" << fmt(zeta(s, o.tol)) << "\n";
  for (Party p : kParties) std::cout << "zeta_star_" << party_name(p) << "=" << fmt(zeta_star(s, p, o.tol)) << "\n";
  if (s.classify(o.tol) == StateClass::Bipartite) {
    std::cout << "concurrence=" << fmt(concurrence(s, o.tol)) << "\n";
    std::cout << "e2=" << fmt(e2(s, o.tol)) << "\n";
  }
}

// simulate ------------------------------------------------------------------

struct SimulateOptions {
  std::string protocol;
  std::string json_path;
  std::string emit_json;
  std::string state = "1/3,1/3,1/3";
  std::string eps = "0.1";
  int n = 1;
  std::string eps_prime = "0.01";
  int n_prime = 1;
  std::string star = "A";
  std::string parties = "BC";
  double tau = 1e-3;
  int blocks = 1;
  int max_leaves = 50;
};

void run_simulate(const SimulateOptions& o) {
  const WState state = parse_state(o.state);
  ProtocolNode protocol;
  std::optional<ProtocolKind> kind;
  if (!o.json_path.empty()) {
    std::ifstream in(o.json_path);
    if (!in) throw Error(Errc::MalformedInput, "cannot read " + o.json_path);
    std::stringstream buf;
    buf << in.rdbuf();
    protocol = protocol_from_json(buf.str());
  } else {
    kind = parse_protocol_kind(o.protocol);
    if (!kind) throw Error(Errc::MalformedInput, "unknown protocol \"" + o.protocol + "\"");
    ProtocolSpec spec;
    spec.kind = *kind;
    spec.eps = parse_real(o.eps);
    spec.n = o.n;
    spec.eps_prime = parse_real(o.eps_prime);
    spec.n_prime = o.n_prime;
    spec.star = parse_party_or_throw(o.star);
    spec.parties.clear();
    for (char c : o.parties) spec.parties.push_back(parse_party_or_throw(std::string(1, c)));
    spec.tau = o.tau;
    spec.blocks = o.blocks;
    protocol = build(spec, state);
  }
  if (!o.emit_json.empty()) {
    std::ofstream out(o.emit_json);
    out << protocol_to_json(protocol, 2) << "\n";
  }

  const WState root = (kind && *kind == ProtocolKind::Theorem1Optimal) ? w_state() : state;
  const auto leaves = execute(root, protocol);
  if (o.max_leaves > 0) {
    std::cout << "leaf,probability,class,pair,concurrence,xA,xB,xC,path\n";
    int shown = 0;
    for (const auto& l : leaves) {
      if (shown++ >= o.max_leaves) break;
      std::cout << shown - 1 << ',' << fmt(l.probability) << ',' << leaf_class_name(l.cls) << ','
                << pair_string(l.pair) << ',' << fmt(l.concurrence) << ',' << fmt(l.state[Party::A]) << ','
                << fmt(l.state[Party::B]) << ',' << fmt(l.state[Party::C]) << ',' << path_string(l.path) << "\n";
    }
    if (static_cast<int>(leaves.size()) > o.max_leaves) {
      std::cout << "# " << leaves.size() - o.max_leaves << " more leaves not shown\n";
    }
  }
  std::cout << "leaves=" << leaves.size() << "\n";
  std::cout << "total_probability=" << fmt(total_probability(leaves)) << "\n";
  std::cout << "P_EPR=" << fmt(epr_mass(leaves)) << "\n";
  std::cout << "expected_concurrence=" << fmt(expected_value(leaves, Measure::Concurrence)) << "\n";
  std::cout << "expected_epr_probability=" << fmt(expected_value(leaves, Measure::EprProbability)) << "\n";
  std::cout << "sequential_rounds=" << sequential_rounds(protocol) << "\n";
  std::cout << "broadcast_rounds=" << broadcast_rounds(protocol) << "\n";
  if (kind && *kind == ProtocolKind::Theorem1Optimal) {
    const auto exact = execute(w_state<Rational>(), theorem1_protocol<Rational>(o.blocks));
    std::cout << "P_EPR_exact=" << to_string(epr_mass(exact)) << "\n";
  }
}

// optimize ------------------------------------------------------------------

struct OptimizeOptions {
  std::string task = "star";
  int rounds = 10;
  std::string gamma = "1/2";
  std::string state = "1/3,1/3,1/3";
  std::string star = "A";
};

void print_schedule(const std::vector<double>& eps) {
  std::cout << "epsilons=";
  for (std::size_t i = 0; i < eps.size(); ++i) std::cout << (i ? "," : "") << fmt(eps[i]);
  std::cout << "\n";
}

void run_optimize(const OptimizeOptions& o) {
  if (o.task == "star") {
    const WState s = parse_state(o.state);
    const Party star = parse_party_or_throw(o.star);
    const auto opt = star_schedule(o.rounds, s, star);
    print_schedule(opt.epsilons);
    std::cout << "gain=" << fmt(opt.gain) << "\n";
    std::cout << "objective=" << fmt(opt.objective) << "\n";
    std::cout << "uniform_objective=" << fmt(star_uniform_schedule(o.rounds, s, star).objective) << "\n";
    std::cout << "zeta_star=" << fmt(zeta_star(s, star)) << "\n";
  } else if (o.task == "step2") {
    const auto opt = step2_schedule(o.rounds, parse_real(o.gamma));
    print_schedule(opt.epsilons);
    std::cout << "gain=" << fmt(opt.gain) << "\n";
  } else if (o.task == "step3") {
    const auto opt = step3_schedule(o.rounds);
    print_schedule(opt.epsilons);
    std::cout << "gain=" << fmt(opt.gain) << "\n";
    std::cout << "uniform_gain=" << fmt(step3_uniform_schedule(o.rounds).gain) << "\n";
  } else if (o.task == "split") {
    const WState s = parse_state(o.state);
    const auto r = split_search(o.rounds, s);
    std::cout << "N2=" << r.n2 << "\nN3=" << r.n3 << "\nstep1_round=" << (r.step1_round ? 1 : 0) << "\n";
    std::cout << "objective=" << fmt(r.objective) << "\nzeta=" << fmt(zeta(s)) << "\n";
  } else {
    throw Error(Errc::MalformedInput, "unknown task \"" + o.task + "\"");
  }
}

// bounds --------------------------------------------------------------------

struct BoundsOptions {
  std::optional<std::string> p;
  std::optional<int> blocks;
};

void run_bounds(const BoundsOptions& o) {
  if (!o.p && !o.blocks) throw Error(Errc::MalformedInput, "bounds needs --p or --N");
  if (o.p) {
    const double p = parse_real(*o.p);
    std::cout << "rounds>=" << min_rounds_for_probability(p) << "\n";
    std::cout << "broadcasts>=" << min_broadcasts(p) << "\n";
  }
  if (o.blocks) {
    const Rational v = max_probability_for_blocks(*o.blocks);
    std::cout << "max_P_EPR=" << to_string(v) << " (" << fmt(to_double(v)) << ")\n";
  }
}

// figures -------------------------------------------------------------------

struct FiguresOptions {
  std::string out = "figures";
  std::string ppt_curve;
  std::uint64_t seed = 0;
};

void run_figures(const FiguresOptions& o) {
  for (const auto& path : write_all_figures(o.out)) std::cout << path.string() << "\n";
  if (!o.ppt_curve.empty()) {
    std::ifstream in(o.ppt_curve);
    if (!in) throw Error(Errc::MalformedInput, "cannot read " + o.ppt_curve);
    const auto table = aggregate_ppt_curve(in);
    const auto path = std::filesystem::path(o.out) / "ppt_comparison.csv";
    table.write(path);
    std::cout << path.string() << "\n";
  }
}

// propcheck -----------------------------------------------------------------

struct PropcheckOptions {
  std::uint64_t seed = 1;
  int samples = 10000;
};

int run_propcheck_cmd(const PropcheckOptions& o) {
  if (o.samples < 1) throw Error(Errc::ParameterOutOfRange, "samples must be at least 1");
  const auto report = run_propcheck(o.seed, o.samples);
  std::cout << "case,samples,max_d_eta,max_d_kappa,max_d_zeta,max_d_zeta_star,strict_samples,"
               "max_strict_d_zeta,max_conservation_error,max_contraction_excess,zeta_violations,strict_violations,"
               "conservation_violations,eta_violations,kappa_violations,zeta_star_violations\n";
  for (const auto& c : report.cases) {
    std::cout << monotone_case_name(c.which) << ',' << c.samples << ',' << fmt(c.max_delta_eta) << ','
              << fmt(c.max_delta_kappa) << ',' << fmt(c.max_delta_zeta) << ',' << fmt(c.max_delta_zeta_star) << ','
              << c.strict_samples << ',' << (c.strict_samples ? fmt(c.max_strict_delta_zeta) : "-") << ','
              << fmt(c.max_conservation_error) << ',' << fmt(c.max_contraction_excess) << ',' << c.zeta_violations
              << ',' << c.strict_violations << ',' << c.conservation_violations << ',' << c.eta_violations << ','
              << c.kappa_violations << ',' << c.zeta_star_violations << "\n";
  }
  std::cout << "seed=" << report.seed << "\n";
  std::cout << "zeta_and_conservation=" << (report.passed() ? "PASS" : "FAIL") << "\n";
  std::cout << "eta_kappa_zeta_star=" << (report.other_monotones_passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W-class LOCC protocol toolkit"};
  app.require_subcommand(1);

  MonotonesOptions mono;
  auto* mono_cmd = app.add_subcommand("monotones", "Print eta, kappa, zeta and zeta* for a state");
  mono_cmd->add_option("--state", mono.state, "Coordinates xA,xB,xC (fractions allowed)");
  mono_cmd->add_option("--tol", mono.tol, "Classification tolerance");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Execute a named or JSON protocol and print its leaves");
  auto* proto_opt = sim_cmd->add_option("--protocol", sim.protocol,
                                        "fl-total, fl-restricted, equal-or-vanish, charlie-equalize, lemma1, "
                                        "lemma2, theorem1");
  auto* json_opt = sim_cmd->add_option("--json", sim.json_path, "Protocol JSON file");
  proto_opt->excludes(json_opt);
  sim_cmd->add_option("--emit-json", sim.emit_json, "Write the protocol as JSON");
  sim_cmd->add_option("--state", sim.state, "Initial coordinates xA,xB,xC");
  sim_cmd->add_option("--eps", sim.eps, "Weak-measurement strength");
  sim_cmd->add_option("--n", sim.n, "Iterations");
  sim_cmd->add_option("--eps-prime", sim.eps_prime, "Three-party stage strength");
  sim_cmd->add_option("--n-prime", sim.n_prime, "Three-party stage iterations");
  sim_cmd->add_option("--star", sim.star, "Star party");
  sim_cmd->add_option("--parties", sim.parties, "Parties of a restricted F-L run, e.g. BC");
  sim_cmd->add_option("--tau", sim.tau, "Residual weight (1-eps)^n");
  sim_cmd->add_option("--N", sim.blocks, "Block count");
  sim_cmd->add_option("--max-leaves", sim.max_leaves, "Leaf rows to print (0 for none)");

  OptimizeOptions opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Finite-round schedules");
  opt_cmd->add_option("--task", opt.task, "star, step2, step3 or split");
  opt_cmd->add_option("--N", opt.rounds, "Round count");
  opt_cmd->add_option("--gamma", opt.gamma, "Step-2 product constraint");
  opt_cmd->add_option("--state", opt.state, "Coordinates xA,xB,xC");
  opt_cmd->add_option("--star", opt.star, "Star party");

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Round lower bounds");
  bounds_cmd->add_option("--p", bounds.p, "Target EPR probability");
  bounds_cmd->add_option("--N", bounds.blocks, "Block count");

  FiguresOptions figs;
  auto* figs_cmd = app.add_subcommand("figures", "Write figure CSVs");
  figs_cmd->add_option("--out", figs.out, "Output directory");
  figs_cmd->add_option("--ppt-curve", figs.ppt_curve, "PPT curve CSV to aggregate");
  figs_cmd->add_option("--seed", figs.seed, "Seed (figures are deterministic)");

  PropcheckOptions prop;
  auto* prop_cmd = app.add_subcommand("propcheck", "Randomized monotonicity sweep");
  prop_cmd->add_option("--seed", prop.seed, "RNG seed");
  prop_cmd->add_option("--samples", prop.samples, "Samples per case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*mono_cmd) run_monotones(mono);
    if (*sim_cmd) {
      if (sim.protocol.empty() && sim.json_path.empty()) {
        throw Error(Errc::MalformedInput, "simulate needs --protocol or --json");
      }
      run_simulate(sim);
    }
    if (*opt_cmd) run_optimize(opt);
    if (*bounds_cmd) run_bounds(bounds);
    if (*figs_cmd) run_figures(figs);
    if (*prop_cmd) return run_propcheck_cmd(prop);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
