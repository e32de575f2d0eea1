#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kpos/acceptance.hpp"
#include "kpos/bounds.hpp"
#include "kpos/cones.hpp"
#include "kpos/json_io.hpp"
#include "kpos/maps.hpp"
#include "kpos/norms.hpp"
#include "kpos/randgen.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Map specifiers: tomiyama | transpose | identity | covariant:s,t | file:<path>
kpos::SuperOp parse_map(const std::string& spec, int n, int k) {
  using namespace kpos;
  if (spec == "tomiyama") {
    if (n < 1 || k < 1) throw UsageError("tomiyama requires --n and --k");
    return to_superop(tomiyama(n, k));
  }
  if (spec == "transpose") {
    if (n < 1) throw UsageError("transpose requires --n");
    return transpose_map(n);
  }
  if (spec == "identity") {
    if (n < 1) throw UsageError("identity requires --n");
    return identity_map(n);
  }
  if (spec.rfind("covariant:", 0) == 0) {
    if (n < 1) throw UsageError("covariant requires --n");
    std::string args = spec.substr(10);
    auto comma = args.find(',');
    if (comma == std::string::npos) throw UsageError("expected covariant:s,t");
    double s, t;
    try {
      s = std::stod(args.substr(0, comma));
      t = std::stod(args.substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("covariant: could not parse s,t");
    }
    return to_superop(covariant(n, s, t));
  }
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw UsageError("cannot read " + spec.substr(5));
    nlohmann::json j;
    in >> j;
    return superop_from_json(j);
  }
  throw UsageError("unknown map spec '" + spec + "'");
}

void print_value(const std::string& which, double v) {
  std::cout << which << " = " << std::setprecision(9) << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"norms, cone memberships and bound tables for maps on matrix algebras"};
  app.require_subcommand(1);

  // bounds
  auto* cbounds = app.add_subcommand("bounds", "closed-form bound table");
  int b_nmax = 4, b_kmax = 4;
  double b_c = 0.01;
  std::string b_format = "csv";
  cbounds->add_option("--n-max", b_nmax)->check(CLI::PositiveNumber);
  cbounds->add_option("--k-max", b_kmax)->check(CLI::PositiveNumber);
  cbounds->add_option("--c", b_c);
  cbounds->add_option("--format", b_format)->check(CLI::IsMember({"csv", "json"}));

  // norm
  auto* cnorm = app.add_subcommand("norm", "cb / diamond / decomposition norm");
  std::string n_map, n_which = "cb";
  int n_n = 0, n_k = 0;
  cnorm->add_option("--map", n_map)->required();
  cnorm->add_option("--which", n_which)->check(CLI::IsMember({"cb", "diamond", "dec"}));
  cnorm->add_option("--n", n_n);
  cnorm->add_option("--k", n_k);

  // check
  auto* ccheck = app.add_subcommand("check", "cone membership verdict");
  std::string c_map;
  int c_n = 0, c_k = 0, c_map_k = 2;
  std::uint64_t c_seed = 1;
  bool c_peb = false;
  ccheck->add_option("--map", c_map)->required();
  ccheck->add_option("--k", c_k, "cone index")->required();
  ccheck->add_option("--n", c_n);
  ccheck->add_option("--map-k", c_map_k, "parameter k for parametrized map specs");
  ccheck->add_option("--seed", c_seed);
  ccheck->add_flag("--peb", c_peb, "test k-PEB membership instead of k-positivity");

  // sample
  auto* csample = app.add_subcommand("sample", "empirical d_k lower bounds");
  int s_n = 3, s_k = 1, s_samples = 10;
  std::uint64_t s_seed = 1;
  std::string s_format = "json";
  csample->add_option("--n", s_n)->check(CLI::PositiveNumber);
  csample->add_option("--k", s_k)->check(CLI::PositiveNumber);
  csample->add_option("--samples", s_samples)->check(CLI::PositiveNumber);
  csample->add_option("--seed", s_seed);
  csample->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));

  // gue-width
  auto* cgue = app.add_subcommand("gue-width", "Monte-Carlo mean width of the trace ball");
  int g_p = 64, g_samples = 200;
  std::uint64_t g_seed = 1;
  cgue->add_option("--p", g_p)->check(CLI::PositiveNumber);
  cgue->add_option("--samples", g_samples)->check(CLI::Range(2, 1 << 20));
  cgue->add_option("--seed", g_seed);

  // verify
  auto* cverify = app.add_subcommand("verify", "run the built-in verification suite");
  bool v_quick = false;
  cverify->add_flag("--quick", v_quick, "reduced sampling budgets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cbounds->parsed()) {
      auto rows = kpos::bounds_table(2, b_nmax, 1, b_kmax, b_c);
      if (b_format == "csv") std::cout << kpos::table_to_csv(rows);
      else std::cout << kpos::table_to_json(rows).dump(2) << "\n";
      return 0;
    }

    if (cnorm->parsed()) {
      if (n_which == "dec") {
        kpos::SuperOp op = parse_map(n_map, n_n, n_k);
        if (op.n_in != op.n_out || !kpos::is_covariant(op, 1e-9))
          throw UsageError("dec norm is available for covariant maps only");
        kpos::CovariantMap cm = kpos::project_covariant(op);
        int k = n_k > 0 ? n_k : cm.n;
        double v = kpos::dec_norm_covariant(cm.n, k, cm.s, cm.t);
        nlohmann::json j{{"schema", kpos::kSchemaTag}, {"which", "dec"}, {"n", cm.n},
                         {"k", k}, {"value", v}};
        std::cout << j.dump(2) << "\n";
        print_value("dec", v);
        return 0;
      }
      kpos::SuperOp op = parse_map(n_map, n_n, n_k);
      double v = (n_which == "cb") ? kpos::cb_norm(op) : kpos::diamond_norm(op);
      kpos::NormReport rep = kpos::norm_bound_checks(op);
      nlohmann::json j = kpos::report_to_json(rep);
      j["which"] = n_which;
      std::cout << j.dump(2) << "\n";
      print_value(n_which, v);
      return 0;
    }

    if (ccheck->parsed()) {
      kpos::SuperOp op = parse_map(c_map, c_n, c_map_k);
      kpos::SeeSawConfig cfg;
      cfg.seed = c_seed;
      kpos::ConeVerdict v =
          c_peb ? kpos::is_k_peb(op, c_k, cfg) : kpos::is_k_positive(op, c_k, cfg);
      std::cout << kpos::verdict_to_json(v).dump(2) << "\n";
      return v.verdict == kpos::Verdict::Inconclusive ? kExitInconclusive : 0;
    }

    if (csample->parsed()) {
      if (s_k > s_n) throw UsageError("--k must not exceed --n");
      kpos::SampleReport rep = kpos::empirical_d_lower(s_n, s_k, s_samples, s_seed);
      if (s_format == "csv") std::cout << kpos::sample_report_to_csv(rep);
      else std::cout << kpos::sample_report_to_json(rep).dump(2) << "\n";
      print_value("best", rep.best);
      return 0;
    }

    if (cgue->parsed()) {
      kpos::WidthEstimate w = kpos::mean_width_trace_ball(g_p, g_samples, g_seed);
      nlohmann::json j{{"schema", kpos::kSchemaTag}, {"p", g_p}, {"samples", w.samples},
                       {"estimate", w.estimate}, {"standard_error", w.standard_error}};
      std::cout << j.dump(2) << "\n";
      print_value("estimate", w.estimate);
      return 0;
    }

    if (cverify->parsed()) {
      auto results = kpos::run_acceptance(v_quick);
      bool all = kpos::print_acceptance(results, std::cout);
      return all ? 0 : kExitNumerical;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
