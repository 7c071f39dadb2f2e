#include "entlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entlab/criteria.hpp"
#include "entlab/numfmt.hpp"
#include "entlab/sampling.hpp"
#include "entlab/spectra.hpp"
#include "entlab/sweep.hpp"

namespace entlab {

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidParams(std::string("bad ") + what + " entry '" + tok + "'");
    }
  }
  if (out.empty()) throw InvalidParams(std::string("empty ") + what + " list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double v : parse_double_list(text, what)) {
    const int iv = static_cast<int>(std::llround(v));
    if (static_cast<double>(iv) != v) throw InvalidParams(std::string(what) + " must be integers");
    out.push_back(iv);
  }
  return out;
}

std::vector<double> read_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open spectrum file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
      if (used != line.size()) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw InvalidParams("malformed spectrum line '" + line + "'");
    }
  }
  if (values.empty()) throw InvalidParams("spectrum file '" + path + "' is empty");
  return values;
}

void write_text(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidParams("cannot open output file '" + out_path + "'");
  f << text;
}

nlohmann::json verdict_to_json(const CriterionVerdict& v) {
  nlohmann::json j;
  j["status"] = to_string(v.status);
  j["margin"] = v.margin;
  j["certificate"] = v.certificate;
  if (v.witness) j["witness"] = v.witness->entries();
  return j;
}

int cmd_sample(int n, int k, int s, std::uint64_t seed, const std::string& emit,
               const std::string& out_path, std::ostream& out) {
  if (emit != "spectrum" && emit != "matrix")
    throw InvalidParams("--emit must be 'spectrum' or 'matrix'");
  const HermitianMatrix rho = sample_induced_state(n, k, s, SeedSpec{seed, 0});
  std::ostringstream text;
  if (emit == "spectrum") {
    const SpectrumVector spec = spectrum_of_state(rho);
    for (double v : spec.entries()) text << format_sig17(v) << '\n';
  } else {
    const int d = rho.dim();
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        entries.push_back({rho(i, j).real(), rho(i, j).imag()});
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["d"] = d;
    j["entries"] = std::move(entries);
    text << j.dump() << '\n';
  }
  write_text(text.str(), out_path, out);
  return 0;
}

int cmd_check(const std::string& criterion, int n, int k, const std::string& input,
              bool sample, int s, std::uint64_t seed, std::ostream& out) {
  const CriterionId crit = CriterionId::parse(criterion);
  const Bipartition bp(n, k);
  if (input.empty() == !sample)
    throw InvalidParams("provide exactly one of --input or --sample");

  CriterionVerdict verdict;
  const bool matrix_criterion =
      crit.kind == CriterionId::Kind::Red || crit.kind == CriterionId::Kind::Ppt;
  if (matrix_criterion) {
    if (!sample)
      throw InvalidParams("criterion '" + criterion +
                          "' is basis-dependent and needs --sample, not a spectrum file");
    const HermitianMatrix rho = sample_induced_state(n, k, s, SeedSpec{seed, 0});
    verdict = crit.kind == CriterionId::Kind::Red ? check_red(rho, bp) : check_ppt(rho, bp);
  } else {
    std::optional<SpectrumVector> lambda;
    if (sample) {
      const HermitianMatrix rho = sample_induced_state(n, k, s, SeedSpec{seed, 0});
      lambda.emplace(spectrum_of_state(rho));
    } else {
      lambda.emplace(read_spectrum_file(input));
    }
    const bool needs_bipartition =
        crit.kind == CriterionId::Kind::Ared || crit.kind == CriterionId::Kind::Ger;
    if (needs_bipartition && lambda->dim() != bp.dim())
      throw ShapeError("spectrum length does not match n*k");
    switch (crit.kind) {
      case CriterionId::Kind::Ared: verdict = check_ared(*lambda, bp); break;
      case CriterionId::Kind::Ger: verdict = check_ger(*lambda, bp); break;
      case CriterionId::Kind::SepBall: verdict = check_sepball(*lambda); break;
      case CriterionId::Kind::Ls:
        if (crit.ls_rule != CriterionId::LsRule::FixedP)
          throw InvalidParams("check supports only concrete ls:<p>");
        verdict = check_ls_p(*lambda, crit.p);
        break;
      default:
        throw InvalidParams("criterion '" + criterion + "' has no membership predicate");
    }
  }
  out << verdict_to_json(verdict).dump() << '\n';
  return 0;
}

int cmd_hat(const std::string& x_text, int n, int k, std::ostream& out) {
  const SimplexVector x(parse_double_list(x_text, "--x"));
  const HatDecomposition hd = hat_vector(x, n, k);
  nlohmann::json j;
  j["etas"] = hd.etas;
  j["hat"] = hd.hat;
  out << j.dump() << '\n';
  return 0;
}

int cmd_mp(double c, bool edges, std::optional<double> quantile, std::optional<double> cdf_at,
           std::optional<double> density_at, std::ostream& out) {
  const int chosen = int(edges) + int(quantile.has_value()) + int(cdf_at.has_value()) +
                     int(density_at.has_value());
  if (chosen != 1)
    throw InvalidParams("choose exactly one of --edges, --quantile, --cdf, --density");
  if (edges) {
    const auto [a, b] = mp_edges(c);
    out << format_shortest(a) << ' ' << format_shortest(b) << '\n';
  } else if (quantile) {
    out << format_shortest(mp_quantile(c, *quantile)) << '\n';
  } else if (cdf_at) {
    out << format_shortest(mp_cdf(c, *cdf_at)) << '\n';
  } else {
    out << format_shortest(mp_density(c, *density_at)) << '\n';
  }
  return 0;
}

int cmd_threshold(const std::string& criterion, const std::string& regime_name,
                  std::optional<int> fixed, std::ostream& out) {
  const CriterionId crit = CriterionId::parse(criterion);
  Regime regime;
  if (regime_name.empty()) {
    if (crit.kind != CriterionId::Kind::Ls && crit.kind != CriterionId::Kind::SepBall)
      throw InvalidParams("--regime is required for this criterion");
    regime = Regime::TotalDim;
  } else {
    regime = parse_regime(regime_name);
  }
  const ThresholdRule rule = predicted_threshold(crit, regime, fixed);
  out << format_shortest(rule.value) << '\n';
  return 0;
}

int cmd_sweep(const std::string& criterion, const std::string& regime_name,
              std::optional<int> fixed, const std::string& sizes_text,
              const std::string& grid_text, std::int64_t trials, std::uint64_t seed,
              const std::string& out_path, const std::string& plot_path,
              std::ostream& out) {
  const CriterionId crit = CriterionId::parse(criterion);
  RegimeSpec regime;
  regime.kind = parse_regime(regime_name);
  regime.fixed_param = fixed;
  regime.size_schedule = parse_int_list(sizes_text, "--sizes");
  const std::vector<double> grid = parse_double_list(grid_text, "--c-grid");
  if (trials < 0) throw InvalidParams("--trials must be >= 0");

  const SweepResult result = run_sweep(crit, regime, grid, trials, seed);
  write_text(to_csv(result), out_path, out);
  if (!plot_path.empty()) {
    const ThresholdRule rule = predicted_threshold(crit, regime.kind, regime.fixed_param);
    write_text(plot_script(result, out_path.empty() ? "results.csv" : out_path, rule.value),
               plot_path, out);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"random induced bipartite states, spectral entanglement sets and "
               "threshold sweeps"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "sample a random induced state");
  int sm_n = 0, sm_k = 0, sm_s = 0;
  std::uint64_t sm_seed = 0;
  std::string sm_emit = "spectrum", sm_out;
  sample->add_option("--n", sm_n)->required();
  sample->add_option("--k", sm_k)->required();
  sample->add_option("--s", sm_s)->required();
  sample->add_option("--seed", sm_seed)->required();
  sample->add_option("--emit", sm_emit, "spectrum | matrix");
  sample->add_option("--out", sm_out, "write to file instead of stdout");

  // check
  auto* check = app.add_subcommand("check", "membership verdict for one state or spectrum");
  std::string ck_crit, ck_input;
  int ck_n = 0, ck_k = 0, ck_s = 0;
  bool ck_sample = false;
  std::uint64_t ck_seed = 0;
  check->add_option("--criterion", ck_crit, "red|ppt|ared|ls:<p>|ger|sepball")->required();
  check->add_option("--n", ck_n)->required();
  check->add_option("--k", ck_k)->required();
  check->add_option("--input", ck_input, "spectrum file, one value per line");
  check->add_flag("--sample", ck_sample, "sample an induced state instead of reading a file");
  check->add_option("--s", ck_s, "environment dimension for --sample");
  check->add_option("--seed", ck_seed, "seed for --sample");

  // hat
  auto* hat = app.add_subcommand("hat", "hat vector and secular roots of a simplex vector");
  std::string ht_x;
  int ht_n = 0, ht_k = 0;
  hat->add_option("--x", ht_x, "comma-separated simplex vector")->required();
  hat->add_option("--n", ht_n)->required();
  hat->add_option("--k", ht_k)->required();

  // mp
  auto* mp = app.add_subcommand("mp", "Marcenko-Pastur edges, density, cdf, quantile");
  double mp_c = 1.0;
  bool mp_edges_flag = false;
  std::optional<double> mp_q, mp_cdf_at, mp_density_at;
  double mp_q_v = 0, mp_cdf_v = 0, mp_density_v = 0;
  mp->add_option("--c", mp_c)->required();
  mp->add_flag("--edges", mp_edges_flag);
  auto* qopt = mp->add_option("--quantile", mp_q_v);
  auto* copt = mp->add_option("--cdf", mp_cdf_v);
  auto* dopt = mp->add_option("--density", mp_density_v);

  // threshold
  auto* thr = app.add_subcommand("threshold", "predicted threshold from the catalog");
  std::string th_crit, th_regime;
  int th_fixed = 0;
  thr->add_option("--criterion", th_crit)->required();
  thr->add_option("--regime", th_regime);
  auto* th_fixed_opt = thr->add_option("--fixed", th_fixed, "fixed factor of the regime");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo threshold sweep to CSV");
  std::string sw_crit, sw_regime, sw_sizes, sw_grid, sw_out, sw_plot;
  int sw_fixed = 0;
  std::int64_t sw_trials = 0;
  std::uint64_t sw_seed = 0;
  sweep->add_option("--criterion", sw_crit)->required();
  sweep->add_option("--regime", sw_regime)->required();
  auto* sw_fixed_opt = sweep->add_option("--fixed", sw_fixed);
  sweep->add_option("--sizes", sw_sizes, "comma-separated size schedule")->required();
  sweep->add_option("--c-grid", sw_grid, "comma-separated c values")->required();
  sweep->add_option("--trials", sw_trials)->required();
  sweep->add_option("--seed", sw_seed);
  sweep->add_option("--out", sw_out, "CSV output path");
  sweep->add_option("--plot-script", sw_plot, "write a gnuplot script");

  std::vector<const char*> argv;
  argv.push_back("entlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sample) return cmd_sample(sm_n, sm_k, sm_s, sm_seed, sm_emit, sm_out, out);
    if (*check)
      return cmd_check(ck_crit, ck_n, ck_k, ck_input, ck_sample, ck_s, ck_seed, out);
    if (*hat) return cmd_hat(ht_x, ht_n, ht_k, out);
    if (*mp) {
      if (*qopt) mp_q = mp_q_v;
      if (*copt) mp_cdf_at = mp_cdf_v;
      if (*dopt) mp_density_at = mp_density_v;
      return cmd_mp(mp_c, mp_edges_flag, mp_q, mp_cdf_at, mp_density_at, out);
    }
    if (*thr)
      return cmd_threshold(th_crit, th_regime,
                           *th_fixed_opt ? std::optional<int>(th_fixed) : std::nullopt, out);
    if (*sweep)
      return cmd_sweep(sw_crit, sw_regime,
                       *sw_fixed_opt ? std::optional<int>(sw_fixed) : std::nullopt, sw_sizes,
                       sw_grid, sw_trials, sw_seed, sw_out, sw_plot, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const NotInCatalog& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace entlab
