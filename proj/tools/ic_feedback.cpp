// Command-line front end: region reports, sum-rate sweeps, scheme simulation
// and Gaussian gap sweeps, with CSV and gnuplot emission.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "icfb/csv.hpp"
#include "icfb/gaussian_ach.hpp"
#include "icfb/gaussian_bounds.hpp"
#include "icfb/ldic_capacity.hpp"
#include "icfb/ldic_sim.hpp"
#include "icfb/parallel.hpp"
#include "icfb/rate_region.hpp"

namespace {

using icfb::Rational;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Rational rational_from_json(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return Rational::parse(v.dump());
  throw std::invalid_argument("expected a number or a rational string");
}

// Values from --config fill in options the command line left unset.
struct ConfigKeys {
  std::map<std::string, std::function<void(const json&)>> setters;

  void number(const std::string& key, double& target) {
    setters[key] = [&target](const json& v) { target = v.get<double>(); };
  }
  void integer(const std::string& key, int& target) {
    setters[key] = [&target](const json& v) { target = v.get<int>(); };
  }
  void integer(const std::string& key, std::uint64_t& target) {
    setters[key] = [&target](const json& v) { target = v.get<std::uint64_t>(); };
  }
  void flag(const std::string& key, bool& target) {
    setters[key] = [&target](const json& v) { target = v.get<bool>(); };
  }
  void text(const std::string& key, std::string& target) {
    setters[key] = [&target](const json& v) {
      target = v.is_string() ? v.get<std::string>() : v.dump();
    };
  }

  void apply(CLI::App* cmd, const std::string& path) const {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    const json j = json::parse(in);
    for (const auto& [key, value] : j.items()) {
      const auto it = setters.find(key);
      if (it == setters.end()) throw std::runtime_error("unknown config key '" + key + "'");
      const auto* opt = cmd->get_option_no_throw("--" + key);
      if (opt != nullptr && opt->count() > 0) continue;  // flags override file values
      it->second(value);
    }
  }
};

struct OutputTarget {
  std::ofstream file;
  bool to_stdout = true;

  explicit OutputTarget(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file " + path);
      to_stdout = false;
    }
  }
  std::ostream& stream() { return to_stdout ? std::cout : file; }
};

std::string constraint_text(const icfb::RateConstraint<Rational>& c) {
  auto term = [](const Rational& coef, const char* name) -> std::string {
    if (coef == Rational(0)) return "";
    if (coef == Rational(1)) return name;
    return coef.str() + " " + name;
  };
  std::string lhs = term(c.c1, "R1");
  const std::string rhs = term(c.c2, "R2");
  if (!lhs.empty() && !rhs.empty()) lhs += " + ";
  return lhs + rhs + " <= " + c.bound.str();
}

// ---------------------------------------------------------------------------
// ldic region

struct RegionArgs {
  icfb::LdicParams params;
  std::string cfb1_text = "0", cfb2_text = "0";
  bool check_equivalence = false;
  std::string grid_file;
  std::string config;
};

int cmd_ldic_region(const RegionArgs& args) {
  if (!args.grid_file.empty()) {
    std::ifstream in(args.grid_file);
    if (!in) throw std::runtime_error("cannot open grid file " + args.grid_file);
    std::string line;
    int row = 0, failures = 0;
    while (std::getline(in, line)) {
      for (char& ch : line)
        if (ch == ',') ch = ' ';
      std::istringstream ls(line);
      std::string first;
      if (!(ls >> first) || first[0] == '#') continue;
      ++row;
      icfb::LdicParams g;
      std::string c1, c2;
      g.n11 = std::stoi(first);
      if (!(ls >> g.n22 >> g.n12 >> g.n21 >> c1 >> c2))
        throw std::runtime_error("grid row " + std::to_string(row) + ": expected 6 values");
      g.cfb1 = Rational::parse(c1);
      g.cfb2 = Rational::parse(c2);
      const bool ok = icfb::regions_equal(icfb::capacity_region(g), icfb::achievable_region(g));
      std::cout << "row " << row << ": " << (ok ? "PASS" : "FAIL") << "\n";
      failures += ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "PASS" : "FAIL") << " (" << row << " rows)\n";
    return failures == 0 ? kExitOk : kExitClaimFailed;
  }

  icfb::LdicParams g = args.params;
  g.cfb1 = Rational::parse(args.cfb1_text);
  g.cfb2 = Rational::parse(args.cfb2_text);
  g.validate();
  const auto cap = icfb::capacity_region(g);
  std::cout << "constraints:\n";
  for (const auto& c : cap.constraints()) std::cout << "  " << constraint_text(c) << "\n";
  std::cout << "vertices:";
  for (const auto& v : icfb::vertices(cap)) std::cout << " (" << v.r1.str() << ", " << v.r2.str() << ")";
  std::cout << "\nmax sum-rate: " << icfb::max_weighted(cap, Rational(1), Rational(1)).value().str()
            << "\n";
  if (args.check_equivalence) {
    const bool ok = icfb::regions_equal(cap, icfb::achievable_region(g));
    std::cout << "achievable-region equivalence: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) return kExitClaimFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ldic sumrate-sweep

struct SumrateSweepArgs {
  std::string alpha_start = "0", alpha_stop = "3", alpha_step = "0.01";
  std::string betas = "0,0.125,inf";
  std::string out;
  std::string plot;
  std::string config;
};

int cmd_ldic_sumrate_sweep(const SumrateSweepArgs& args) {
  const Rational start = Rational::parse(args.alpha_start);
  const Rational stop = Rational::parse(args.alpha_stop);
  const Rational step = Rational::parse(args.alpha_step);
  if (!(step > Rational(0)) || stop < start) throw std::runtime_error("bad alpha axis");

  std::vector<std::pair<Rational, std::string>> betas;
  std::stringstream bs(args.betas);
  std::string tok;
  while (std::getline(bs, tok, ',')) {
    if (tok == "inf" || tok == "infinity")
      betas.emplace_back(Rational(10), "inf (rendered as 10)");
    else
      betas.emplace_back(Rational::parse(tok), tok);
  }
  if (betas.empty()) throw std::runtime_error("no beta values given");

  std::vector<Rational> alphas;
  for (Rational a = start; a <= stop; a += step) alphas.push_back(a);

  std::vector<std::string> rows(betas.size() * alphas.size());
  icfb::parallel_for(rows.size(), [&](std::size_t i) {
    const auto& beta = betas[i / alphas.size()].first;
    const Rational& alpha = alphas[i % alphas.size()];
    const Rational v = icfb::symmetric_sumrate_normalized(alpha, beta);
    rows[i] = icfb::format_sig9(alpha) + "," + icfb::format_sig9(beta) + "," + icfb::format_sig9(v);
  });

  OutputTarget out(args.out);
  out.stream() << "alpha,beta,normalized_sumrate\n";
  for (const auto& row : rows) out.stream() << row << "\n";

  if (!args.plot.empty()) {
    if (args.out.empty() || args.out == "-")
      throw std::runtime_error("--plot needs --out pointing at a file");
    std::ofstream plot(args.plot);
    if (!plot) throw std::runtime_error("cannot open plot file " + args.plot);
    plot << "# gnuplot script; beta=10 stands in for unlimited feedback\n"
         << "set datafile separator ','\n"
         << "set xlabel 'alpha = m/n'\nset ylabel 'sum-rate capacity / n'\nset key bottom right\n";
    plot << "plot ";
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const double b = betas[i].first.to_double();
      if (i) plot << ", \\\n     ";
      plot << "'" << args.out << "' using 1:($2==" << icfb::format_sig9(b)
           << "?$3:1/0) with lines title 'beta=" << betas[i].second << "'";
    }
    plot << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ldic simulate

struct SimulateArgs {
  icfb::LdicParams params;
  std::string cfb1_text = "0", cfb2_text = "0";
  bool motivating = false;
  int blocks = 50;
  std::uint64_t seed = 1;
  bool trace = false;
  bool zero_messages = false;
  std::string config;
};

int cmd_ldic_simulate(const SimulateArgs& args) {
  icfb::SimResult res;
  if (args.motivating) {
    res = icfb::simulate(icfb::motivating_params(), icfb::motivating_scheme(), args.blocks,
                         args.seed, args.zero_messages);
  } else {
    icfb::LdicParams g = args.params;
    g.cfb1 = Rational::parse(args.cfb1_text);
    g.cfb2 = Rational::parse(args.cfb2_text);
    const auto scheme = icfb::build_scheme(g);
    res = icfb::simulate(g, scheme, args.blocks, args.seed, args.zero_messages);
  }
  if (args.trace) std::cout << res.trace_text();
  std::printf("(%.3f, %.3f) %s\n", res.achieved.r1.to_double(), res.achieved.r2.to_double(),
              res.decode_ok ? "OK" : "FAIL");
  return res.decode_ok ? kExitOk : kExitClaimFailed;
}

// ---------------------------------------------------------------------------
// gaussian bounds

struct BoundsArgs {
  double snr_db = 0, inr_db = 0, cfb1 = 0, cfb2 = 0;
  int rho_steps = 201;
  std::string config;
};

int cmd_gaussian_bounds(const BoundsArgs& args) {
  const double snr = db_to_linear(args.snr_db), inr = db_to_linear(args.inr_db);
  const double a = 2.0 * icfb::log2p1(snr) + args.cfb1 + args.cfb2;
  const double b = icfb::log2p1(snr / (1.0 + inr)) +
                   icfb::log2p1(snr + inr + 2.0 * std::sqrt(snr * inr));
  const double c = 2.0 * icfb::log2p1(inr + snr / (1.0 + inr)) + args.cfb1 + args.cfb2;
  std::cout << "symmetric sum-rate outer bounds (bits/use):\n"
            << "  direct links + feedback:    " << icfb::format_sig9(a) << "\n"
            << "  full receiver cooperation:  " << icfb::format_sig9(b) << "\n"
            << "  interference + feedback:    " << icfb::format_sig9(c) << "\n"
            << "  closed-form minimum:        "
            << icfb::format_sig9(icfb::symmetric_sumrate_outer(snr, inr, args.cfb1, args.cfb2))
            << "\n";
  const auto p = icfb::GaussianParams::symmetric(snr, inr, args.cfb1, args.cfb2);
  std::cout << "rho-family sum-rate bound:    "
            << icfb::format_sig9(icfb::sumrate_outer(p, args.rho_steps)) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gaussian gap-sweep

struct GapSweepArgs {
  double snr_db = 20;
  double inr_start_db = -10, inr_stop_db = 160, inr_step_db = 2;
  double cfb1 = 0, cfb2 = 0;
  bool optimize = false;
  int grid_steps = 32;
  std::string out;
  std::string plot;
  std::string config;
};

int cmd_gaussian_gap_sweep(const GapSweepArgs& args) {
  if (!(args.inr_step_db > 0) || args.inr_stop_db < args.inr_start_db)
    throw std::runtime_error("bad inr axis");
  const double snr = db_to_linear(args.snr_db);
  std::vector<double> inr_dbs;
  for (double d = args.inr_start_db; d <= args.inr_stop_db + 1e-9; d += args.inr_step_db)
    inr_dbs.push_back(d);

  struct Row {
    double inr_db = 0, outer = 0, ach = 0, gap = 0;
    const char* regime = "";
  };
  std::vector<Row> rows(inr_dbs.size());
  icfb::parallel_for(rows.size(), [&](std::size_t i) {
    const double inr = db_to_linear(inr_dbs[i]);
    Row r;
    r.inr_db = inr_dbs[i];
    r.outer = icfb::symmetric_sumrate_outer(snr, inr, args.cfb1, args.cfb2);
    r.ach = icfb::achievable_sumrate(snr, inr, args.cfb1, args.cfb2, args.optimize, args.grid_steps);
    r.gap = r.outer - r.ach;
    r.regime = icfb::regime_name(icfb::classify_regime(snr, inr));
    rows[i] = r;
  });

  {
    OutputTarget out(args.out);
    out.stream() << "inr_db,outer,achievable,gap,regime\n";
    for (const auto& r : rows)
      out.stream() << icfb::format_sig9(r.inr_db) << "," << icfb::format_sig9(r.outer) << ","
                   << icfb::format_sig9(r.ach) << "," << icfb::format_sig9(r.gap) << "," << r.regime
                   << "\n";
  }

  const Row* worst = &rows.front();
  bool negative = false;
  for (const auto& r : rows) {
    if (r.gap > worst->gap) worst = &r;
    negative |= r.gap < -1e-9;
  }
  std::cout << "# max gap " << icfb::format_sig9(worst->gap) << " at inr_db="
            << icfb::format_sig9(worst->inr_db) << " (regime " << worst->regime << ")\n";
  if (negative) {
    std::cerr << "error: negative gap encountered\n";
    return kExitClaimFailed;
  }

  if (!args.plot.empty()) {
    if (args.out.empty() || args.out == "-")
      throw std::runtime_error("--plot needs --out pointing at a file");
    std::ofstream plot(args.plot);
    if (!plot) throw std::runtime_error("cannot open plot file " + args.plot);
    plot << "set datafile separator ','\n"
         << "set xlabel 'INR (dB)'\nset ylabel 'bits/sec/Hz'\nset key top left\n"
         << "plot '" << args.out << "' using 1:2 with lines title 'outer bound', \\\n"
         << "     '" << args.out << "' using 1:3 with lines title 'achievable', \\\n"
         << "     '" << args.out << "' using 1:4 with lines title 'gap'\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity regions and constant-gap rates for the two-user interference channel "
               "with rate-limited feedback"};
  app.require_subcommand(1);

  auto* ldic = app.add_subcommand("ldic", "linear deterministic channel model");
  auto* gaussian = app.add_subcommand("gaussian", "Gaussian channel model");
  ldic->require_subcommand(1);
  gaussian->require_subcommand(1);

  RegionArgs region_args;
  ConfigKeys region_keys;
  auto* region = ldic->add_subcommand("region", "print the capacity region");
  region->add_option("--n11", region_args.params.n11, "direct gain, user 1");
  region->add_option("--n22", region_args.params.n22, "direct gain, user 2");
  region->add_option("--n12", region_args.params.n12, "cross gain, tx1 to rx2");
  region->add_option("--n21", region_args.params.n21, "cross gain, tx2 to rx1");
  region->add_option("--cfb1", region_args.cfb1_text, "feedback capacity of link 1 (rational)");
  region->add_option("--cfb2", region_args.cfb2_text, "feedback capacity of link 2 (rational)");
  region->add_flag("--check-appendix-b", region_args.check_equivalence,
                   "verify the closed-form achievable region equals the capacity region");
  region->add_option("--grid", region_args.grid_file,
                     "file of 'n11 n22 n12 n21 cfb1 cfb2' rows to equivalence-check");
  region->add_option("--config", region_args.config, "JSON file mirroring the flags");
  region_keys.integer("n11", region_args.params.n11);
  region_keys.integer("n22", region_args.params.n22);
  region_keys.integer("n12", region_args.params.n12);
  region_keys.integer("n21", region_args.params.n21);
  region_keys.text("cfb1", region_args.cfb1_text);
  region_keys.text("cfb2", region_args.cfb2_text);
  region_keys.flag("check-appendix-b", region_args.check_equivalence);
  region_keys.text("grid", region_args.grid_file);
  region->callback([&] { region_keys.apply(region, region_args.config); });

  SumrateSweepArgs sweep_args;
  ConfigKeys sweep_keys;
  auto* sweep = ldic->add_subcommand("sumrate-sweep", "normalized symmetric sum-rate vs alpha");
  sweep->add_option("--alpha-start", sweep_args.alpha_start, "first alpha (rational)");
  sweep->add_option("--alpha-stop", sweep_args.alpha_stop, "last alpha (rational)");
  sweep->add_option("--alpha-step", sweep_args.alpha_step, "alpha step (rational)");
  sweep->add_option("--beta", sweep_args.betas, "comma list of beta values; 'inf' allowed");
  sweep->add_option("--out", sweep_args.out, "CSV output path ('-' for stdout)");
  sweep->add_option("--plot", sweep_args.plot, "write a gnuplot script here");
  sweep->add_option("--config", sweep_args.config, "JSON file mirroring the flags");
  sweep_keys.text("alpha-start", sweep_args.alpha_start);
  sweep_keys.text("alpha-stop", sweep_args.alpha_stop);
  sweep_keys.text("alpha-step", sweep_args.alpha_step);
  sweep_keys.text("beta", sweep_args.betas);
  sweep_keys.text("out", sweep_args.out);
  sweep_keys.text("plot", sweep_args.plot);
  sweep->callback([&] { sweep_keys.apply(sweep, sweep_args.config); });

  SimulateArgs sim_args;
  ConfigKeys sim_keys;
  auto* sim = ldic->add_subcommand("simulate", "bit-exact block-Markov simulation");
  sim->add_option("--n11", sim_args.params.n11, "direct gain, user 1");
  sim->add_option("--n22", sim_args.params.n22, "direct gain, user 2");
  sim->add_option("--n12", sim_args.params.n12, "cross gain, tx1 to rx2");
  sim->add_option("--n21", sim_args.params.n21, "cross gain, tx2 to rx1");
  sim->add_option("--cfb1", sim_args.cfb1_text, "feedback capacity of link 1 (integer)");
  sim->add_option("--cfb2", sim_args.cfb2_text, "feedback capacity of link 2 (integer)");
  sim->add_flag("--motivating", sim_args.motivating,
                "run the built-in asymmetric corner-point schedule on the (4,4,2,2,1,1) channel");
  sim->add_option("--blocks", sim_args.blocks, "number of blocks (B >= 3)");
  sim->add_option("--seed", sim_args.seed, "message RNG seed");
  sim->add_flag("--trace", sim_args.trace, "print the per-block trace");
  sim->add_flag("--zero-messages", sim_args.zero_messages, "send the all-zero message");
  sim->add_option("--config", sim_args.config, "JSON file mirroring the flags");
  sim_keys.integer("n11", sim_args.params.n11);
  sim_keys.integer("n22", sim_args.params.n22);
  sim_keys.integer("n12", sim_args.params.n12);
  sim_keys.integer("n21", sim_args.params.n21);
  sim_keys.text("cfb1", sim_args.cfb1_text);
  sim_keys.text("cfb2", sim_args.cfb2_text);
  sim_keys.flag("motivating", sim_args.motivating);
  sim_keys.integer("blocks", sim_args.blocks);
  sim_keys.integer("seed", sim_args.seed);
  sim_keys.flag("trace", sim_args.trace);
  sim_keys.flag("zero-messages", sim_args.zero_messages);
  sim->callback([&] { sim_keys.apply(sim, sim_args.config); });

  BoundsArgs bounds_args;
  ConfigKeys bounds_keys;
  auto* bounds = gaussian->add_subcommand("bounds", "symmetric sum-rate outer bounds");
  bounds->add_option("--snr-db", bounds_args.snr_db, "SNR in dB")->required();
  bounds->add_option("--inr-db", bounds_args.inr_db, "INR in dB")->required();
  bounds->add_option("--cfb1", bounds_args.cfb1, "feedback capacity of link 1 (bits/use)");
  bounds->add_option("--cfb2", bounds_args.cfb2, "feedback capacity of link 2 (bits/use)");
  bounds->add_option("--rho-steps", bounds_args.rho_steps, "rho grid size");
  bounds->add_option("--config", bounds_args.config, "JSON file mirroring the flags");
  bounds_keys.number("snr-db", bounds_args.snr_db);
  bounds_keys.number("inr-db", bounds_args.inr_db);
  bounds_keys.number("cfb1", bounds_args.cfb1);
  bounds_keys.number("cfb2", bounds_args.cfb2);
  bounds_keys.integer("rho-steps", bounds_args.rho_steps);
  bounds->callback([&] { bounds_keys.apply(bounds, bounds_args.config); });

  GapSweepArgs gap_args;
  ConfigKeys gap_keys;
  auto* gap = gaussian->add_subcommand("gap-sweep", "achievable rate vs outer bound over INR");
  gap->add_option("--snr-db", gap_args.snr_db, "SNR in dB")->required();
  gap->add_option("--inr-start-db", gap_args.inr_start_db, "first INR in dB");
  gap->add_option("--inr-stop-db", gap_args.inr_stop_db, "last INR in dB");
  gap->add_option("--inr-step-db", gap_args.inr_step_db, "INR step in dB");
  gap->add_option("--cfb1", gap_args.cfb1, "feedback capacity of link 1 (bits/use)");
  gap->add_option("--cfb2", gap_args.cfb2, "feedback capacity of link 2 (bits/use)");
  gap->add_flag("--optimize", gap_args.optimize, "search power splits beyond the reference ones");
  gap->add_option("--grid-steps", gap_args.grid_steps, "optimizer grid points per dimension");
  gap->add_option("--out", gap_args.out, "CSV output path ('-' for stdout)");
  gap->add_option("--plot", gap_args.plot, "write a gnuplot script here");
  gap->add_option("--config", gap_args.config, "JSON file mirroring the flags");
  gap_keys.number("snr-db", gap_args.snr_db);
  gap_keys.number("inr-start-db", gap_args.inr_start_db);
  gap_keys.number("inr-stop-db", gap_args.inr_stop_db);
  gap_keys.number("inr-step-db", gap_args.inr_step_db);
  gap_keys.number("cfb1", gap_args.cfb1);
  gap_keys.number("cfb2", gap_args.cfb2);
  gap_keys.flag("optimize", gap_args.optimize);
  gap_keys.integer("grid-steps", gap_args.grid_steps);
  gap_keys.text("out", gap_args.out);
  gap_keys.text("plot", gap_args.plot);
  gap->callback([&] { gap_keys.apply(gap, gap_args.config); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {  // config loading problems
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (region->parsed()) return cmd_ldic_region(region_args);
    if (sweep->parsed()) return cmd_ldic_sumrate_sweep(sweep_args);
    if (sim->parsed()) return cmd_ldic_simulate(sim_args);
    if (bounds->parsed()) return cmd_gaussian_bounds(bounds_args);
    if (gap->parsed()) return cmd_gaussian_gap_sweep(gap_args);
  } catch (const icfb::UnsupportedRegimeError& e) {
    std::cerr << "unsupported regime: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
