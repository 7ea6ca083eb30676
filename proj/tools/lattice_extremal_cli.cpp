// Command-line driver: extremal constants for the discrete Sobolev and
// Riesz-potential inequalities on Z^N, splitting diagnostics for function
// sequences, and the reaction-diffusion blow-up probe.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lattice_extremal/lattice_extremal.hpp"

using json = nlohmann::ordered_json;
using namespace lattice_extremal;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "lattice-extremal/1";

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << j.dump(2) << "\n";
}

// sibling file next to the output, keeping only the name in the JSON
std::string sibling_name(const fs::path& out, const std::string& suffix) {
  return out.stem().string() + suffix;
}

struct CommonFlags {
  int threads = 0;
  std::uint64_t seed = 0;
  std::string out;

  void attach(CLI::App* cmd, bool with_out = true) {
    cmd->add_option("--threads", threads,
                    "internal parallelism degree (0 = all cores); results do not depend on it")
        ->envname("LATTICE_EXTREMAL_THREADS");
    cmd->add_option("--seed", seed, "RNG seed recorded in the output");
    if (with_out) cmd->add_option("--out", out, "output JSON path")->required();
  }
};

int run_sobolev_min(const CommonFlags& common, int dim, double p, double q,
                    std::vector<int> radii, int radius, double tol, long max_iters) {
  const SobolevParams prm(dim, p, q);
  if (!prm.supercritical())
    throw std::invalid_argument(
        "sobolev-min: extremizers are computed in the supercritical range q > p* = " +
        std::to_string(prm.p_star()));
  if (radii.empty()) radii.push_back(radius);
  MinimizeOptions opts;
  opts.tol = tol;
  if (max_iters > 0) opts.max_iters = max_iters;
  const auto results = estimate_S(prm, radii, opts);

  const fs::path out(common.out);
  json j;
  j["schema"] = kSchema;
  j["command"] = "sobolev-min";
  j["seed"] = common.seed;
  j["params"] = {{"dim", dim},
                 {"p", p},
                 {"q", q},
                 {"p_star", prm.p_star()},
                 {"supercritical", prm.supercritical()}};
  j["tolerance"] = tol;
  j["results"] = json::array();
  bool all_converged = true;
  for (const auto& r : results) {
    const std::string grid = sibling_name(out, "_R" + std::to_string(r.box_radius) + ".grid");
    write_grid_file((out.parent_path() / grid).string(), r.extremizer);
    json item;
    item["radius"] = r.box_radius;
    item["constant_estimate"] = r.constant_estimate;
    if (std::isnan(r.residual_sup)) {
      item["residual_sup"] = nullptr;
      item["rescaled_residual_sup"] = nullptr;
    } else {
      item["residual_sup"] = r.residual_sup;
      item["rescaled_residual_sup"] = r.rescaled_residual_sup;
    }
    item["iterations"] = r.iterations;
    item["converged"] = r.converged;
    item["extremizer_grid"] = grid;
    j["results"].push_back(item);
    all_converged = all_converged && r.converged;
  }
  write_json_file(out, j);
  if (!all_converged) {
    std::cerr << "sobolev-min: solver did not converge at every radius; best iterates written\n";
    return 2;
  }
  return 0;
}

int run_hls_max(const CommonFlags& common, int dim, double r, double s, double lambda,
                std::vector<int> radii, int radius, double tol, ConvMethod conv) {
  const HLSParams prm = HLSParams::conjugate(dim, r, s, lambda);
  std::vector<std::string> warnings;
  if (!prm.supercritical())
    warnings.push_back("parameters are not supercritical (r >= r* = " +
                       std::to_string(prm.r_star()) +
                       "); K_R is still well defined at every finite radius");
  if (prm.lambda * prm.t <= dim)
    warnings.push_back("lambda * t <= dim: K_R may grow without bound as the radius grows");
  for (const auto& w : warnings) std::cerr << "hls-max: warning: " << w << "\n";

  if (radii.empty()) radii.push_back(radius);
  PowerIterateOptions opts;
  opts.tol = tol;
  opts.conv = conv;
  const auto results = estimate_K(prm, radii, opts);

  const fs::path out(common.out);
  json j;
  j["schema"] = kSchema;
  j["command"] = "hls-max";
  j["seed"] = common.seed;
  j["params"] = {{"dim", dim},          {"r", r},
                 {"s", s},              {"t", prm.t},
                 {"lambda", lambda},    {"r_star", prm.r_star()},
                 {"supercritical", prm.supercritical()}};
  j["conv"] = conv == ConvMethod::fft ? "fft" : "direct";
  j["tolerance"] = tol;
  j["warnings"] = warnings;
  j["results"] = json::array();
  bool all_converged = true;
  for (const auto& kr : results) {
    const int R = kr.result.box_radius;
    const std::string f_grid = sibling_name(out, "_R" + std::to_string(R) + "_f.grid");
    const std::string g_grid = sibling_name(out, "_R" + std::to_string(R) + "_g.grid");
    write_grid_file((out.parent_path() / f_grid).string(), kr.pair.f);
    write_grid_file((out.parent_path() / g_grid).string(), kr.pair.g);
    const HLSResidual res = el_residual_hls(kr.pair, prm, kr.result.constant_estimate, conv);
    json item;
    item["radius"] = R;
    item["k_estimate"] = kr.result.constant_estimate;
    item["el_residual_f"] = res.f_residual;
    item["el_residual_g"] = res.g_residual;
    item["sweeps"] = kr.result.iterations;
    item["converged"] = kr.result.converged;
    item["f_grid"] = f_grid;
    item["g_grid"] = g_grid;
    j["results"].push_back(item);
    all_converged = all_converged && kr.result.converged;
  }
  write_json_file(out, j);
  if (!all_converged) {
    std::cerr << "hls-max: sweep limit reached before convergence; best pairs written\n";
    return 2;
  }
  return 0;
}

int run_cc_check(const CommonFlags& common, const std::string& scenario, int dim, double p,
                 double q, long rmax) {
  const SobolevParams prm(dim, p, q);
  if (!prm.supercritical())
    throw std::invalid_argument("cc-check: the reference constant needs q > p*");

  // canonical ingredients: a centered bump and a second bubble
  const LatticeFunction u = gaussian_bump(LatticeBox(dim, 2), 1.0, 2.0);
  const LatticeFunction w = gaussian_bump(LatticeBox(dim, 2), 0.7, 1.5);
  const int clear_step = static_cast<int>(rmax) + 2 * dim + 4;

  FunctionSequence seq = [&]() -> FunctionSequence {
    if (scenario == "stationary") return stationary_sequence(u, 6);
    if (scenario == "escape") return escaping_sequence(w, 6, clear_step);
    if (scenario == "perturb") {
      MultiIndex off(static_cast<std::size_t>(dim), 0);
      off[0] = 2 + 2 + 3;  // no site is adjacent to both supports
      return perturbation_sequence(u, translate(w, off), 6);
    }
    throw std::invalid_argument("cc-check: unknown scenario '" + scenario + "'");
  }();

  const ExtremalResult sol = minimize_on_box(prm, LatticeBox(dim, 2));
  const CCReport rep = make_cc_report(seq, prm, sol.constant_estimate, rmax);

  json j;
  j["schema"] = kSchema;
  j["command"] = "cc-check";
  j["seed"] = common.seed;
  j["scenario"] = scenario;
  j["params"] = {{"dim", dim}, {"p", p}, {"q", q}};
  j["r_max"] = rep.r_max;
  j["prefix_len"] = rep.prefix_len;
  j["s_est"] = rep.s_est;
  j["s_est_radius"] = sol.box_radius;
  j["uniform_d1p_bound"] = seq.max_d1p(p);
  j["radii"] = rep.radii;
  j["mu_tail"] = rep.mu_tail;
  j["nu_tail"] = rep.nu_tail;
  j["defects_values"] = rep.defects_values;
  j["defects_gradients"] = rep.defects_gradients;
  j["gap1"] = rep.gap1;
  j["gap2"] = rep.gap2;
  j["cc_margin"] = rep.cc_margin;
  write_json_file(fs::path(common.out), j);
  return 0;
}

int run_blowup_cmd(const CommonFlags& common, int dim, double q, int radius, double amplitude,
                   double width, double dt, long max_steps, double cap) {
  const LatticeFunction u0 =
      gaussian_bump(LatticeBox(dim, radius), amplitude, width > 0.0 ? width : radius);
  const BlowupReport rep = run_blowup(dim, q, u0, dt, max_steps, cap);

  const fs::path csv_path(common.out);
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
  csv << "step,sup_norm,l2_norm\n";
  char line[96];
  for (const auto& pt : rep.trajectory) {
    std::snprintf(line, sizeof line, "%ld,%.17g,%.17g\n", pt.step, pt.sup_norm, pt.l2_norm);
    csv << line;
  }
  csv.close();

  const char* outcome = rep.outcome == BlowupOutcome::blow_up ? "blow_up"
                        : rep.outcome == BlowupOutcome::no_blow_up ? "no_blow_up"
                                                                   : "integrator_failure";
  json j;
  j["schema"] = kSchema;
  j["command"] = "blowup";
  j["seed"] = common.seed;
  j["params"] = {{"dim", dim},       {"q", q},
                 {"radius", radius}, {"amplitude", amplitude},
                 {"width", width > 0.0 ? width : radius}};
  if (dt > 0.0)
    j["dt"] = dt;
  else
    j["dt"] = "adaptive";
  j["max_steps"] = max_steps;
  j["blow_up_cap"] = cap;
  j["outcome"] = outcome;
  j["steps"] = rep.steps;
  j["in_fujita_window"] = rep.in_fujita_window;
  j["window_value"] = rep.window_value;
  j["final_sup"] = rep.final_sup;
  j["csv"] = csv_path.filename().string();
  fs::path json_path = csv_path;
  json_path.replace_extension(".json");
  write_json_file(json_path, j);
  return rep.outcome == BlowupOutcome::integrator_failure ? 2 : 0;
}

int run_verify(const CommonFlags& common, int dim, double p, double q, double s_est,
               int samples, int radius, double slack) {
  const SobolevParams prm(dim, p, q);
  Rng rng(common.seed);
  double min_margin = std::numeric_limits<double>::infinity();
  long violations = 0;
  for (int i = 0; i < samples; ++i) {
    const LatticeFunction u = random_function(rng, LatticeBox(dim, radius), -1.0, 1.0);
    const MarginCheck chk = verify_sobolev(u, prm, s_est, slack);
    min_margin = std::min(min_margin, chk.margin);
    if (!chk.holds) ++violations;
  }
  json j;
  j["schema"] = kSchema;
  j["command"] = "verify";
  j["seed"] = common.seed;
  j["params"] = {{"dim", dim}, {"p", p}, {"q", q}};
  j["s_est"] = s_est;
  j["samples"] = samples;
  j["radius"] = radius;
  j["slack"] = slack;
  j["min_margin"] = min_margin;
  j["violations"] = violations;
  j["holds"] = violations == 0;
  write_json_file(fs::path(common.out), j);
  if (violations > 0) {
    std::cerr << "verify: " << violations << " of " << samples
              << " samples violated the bound; min margin " << min_margin << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal functions for discrete Sobolev and Riesz-potential inequalities on Z^N"};
  app.require_subcommand(1);

  // sobolev-min
  CommonFlags sob_common;
  int sob_dim = 0, sob_radius = 4;
  long sob_max_iters = 0;
  double sob_p = 0, sob_q = 0, sob_tol = 1e-10;
  std::vector<int> sob_radii;
  auto* sob = app.add_subcommand("sobolev-min",
                                 "minimize the gradient p-energy on the q-sphere over a box");
  sob->add_option("--dim", sob_dim, "lattice dimension N")->required();
  sob->add_option("--p", sob_p, "gradient exponent p")->required();
  sob->add_option("--q", sob_q, "constraint exponent q")->required();
  sob->add_option("--radius", sob_radius, "box radius");
  sob->add_option("--radii", sob_radii, "increasing radii, warm-started")->delimiter(',');
  sob->add_option("--tol", sob_tol, "relative objective tolerance");
  sob->add_option("--max-iters", sob_max_iters, "iteration cap (0 = default)");
  sob_common.attach(sob);

  // hls-max
  CommonFlags hls_common;
  int hls_dim = 0, hls_radius = 4;
  double hls_r = 0, hls_s = 0, hls_lambda = 0, hls_tol = 1e-12;
  std::vector<int> hls_radii;
  std::string hls_conv = "fft";
  auto* hls = app.add_subcommand("hls-max",
                                 "maximize the Riesz-kernel bilinear form over norm spheres");
  hls->add_option("--dim", hls_dim, "lattice dimension N")->required();
  hls->add_option("--r", hls_r, "exponent r for f")->required();
  hls->add_option("--s", hls_s, "exponent s for g")->required();
  hls->add_option("--lambda", hls_lambda, "kernel exponent in (0, N)")->required();
  hls->add_option("--radius", hls_radius, "box radius");
  hls->add_option("--radii", hls_radii, "increasing radii, warm-started")->delimiter(',');
  hls->add_option("--tol", hls_tol, "relative J tolerance");
  hls->add_option("--conv", hls_conv, "convolution method")
      ->check(CLI::IsMember({"direct", "fft"}));
  hls_common.attach(hls);

  // cc-check
  CommonFlags cc_common;
  int cc_dim = 0;
  double cc_p = 0, cc_q = 0;
  long cc_rmax = 8;
  std::string cc_scenario;
  auto* cc = app.add_subcommand("cc-check",
                                "splitting diagnostics on canonical function sequences");
  cc->add_option("--scenario", cc_scenario, "stationary | escape | perturb")
      ->required()
      ->check(CLI::IsMember({"stationary", "escape", "perturb"}));
  cc->add_option("--dim", cc_dim, "lattice dimension N")->required();
  cc->add_option("--p", cc_p, "gradient exponent p")->required();
  cc->add_option("--q", cc_q, "mass exponent q")->required();
  cc->add_option("--rmax", cc_rmax, "tail radius");
  cc_common.attach(cc);

  // blowup
  CommonFlags blow_common;
  int blow_dim = 0, blow_radius = 6;
  double blow_q = 0, blow_amp = 3.0, blow_width = 0.0, blow_dt = 0.0, blow_cap = 1e6;
  long blow_max_steps = 1000000;
  auto* blow = app.add_subcommand("blowup",
                                  "explicit Euler reaction-diffusion run from a bump");
  blow->add_option("--dim", blow_dim, "lattice dimension N")->required();
  blow->add_option("--q", blow_q, "reaction exponent (q > 2)")->required();
  blow->add_option("--radius", blow_radius, "box radius");
  blow->add_option("--amplitude", blow_amp, "bump amplitude");
  blow->add_option("--width", blow_width, "bump width (0 = radius)");
  blow->add_option("--dt", blow_dt, "time step (0 = adaptive)");
  blow->add_option("--max-steps", blow_max_steps, "step cap");
  blow->add_option("--cap", blow_cap, "sup-norm threshold declared as blow-up");
  blow_common.attach(blow);

  // verify
  CommonFlags ver_common;
  int ver_dim = 0, ver_samples = 100, ver_radius = 4;
  double ver_p = 0, ver_q = 0, ver_s_est = 0, ver_slack = 1e-9;
  auto* ver = app.add_subcommand("verify",
                                 "check the lower bound on random box functions");
  ver->add_option("--dim", ver_dim, "lattice dimension N")->required();
  ver->add_option("--p", ver_p, "gradient exponent p")->required();
  ver->add_option("--q", ver_q, "mass exponent q")->required();
  ver->add_option("--s-est", ver_s_est, "constant to verify")->required();
  ver->add_option("--samples", ver_samples, "number of random functions");
  ver->add_option("--radius", ver_radius, "box radius for the samples");
  ver->add_option("--slack", ver_slack, "allowed negative margin");
  ver_common.attach(ver, /*with_out=*/false);
  ver->add_option("--out", ver_common.out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sob->parsed()) {
      set_thread_count(sob_common.threads);
      return run_sobolev_min(sob_common, sob_dim, sob_p, sob_q, sob_radii, sob_radius, sob_tol,
                             sob_max_iters);
    }
    if (hls->parsed()) {
      set_thread_count(hls_common.threads);
      return run_hls_max(hls_common, hls_dim, hls_r, hls_s, hls_lambda, hls_radii, hls_radius,
                         hls_tol, hls_conv == "fft" ? ConvMethod::fft : ConvMethod::direct);
    }
    if (cc->parsed()) {
      set_thread_count(cc_common.threads);
      return run_cc_check(cc_common, cc_scenario, cc_dim, cc_p, cc_q, cc_rmax);
    }
    if (blow->parsed()) {
      set_thread_count(blow_common.threads);
      return run_blowup_cmd(blow_common, blow_dim, blow_q, blow_radius, blow_amp, blow_width,
                            blow_dt, blow_max_steps, blow_cap);
    }
    if (ver->parsed()) {
      set_thread_count(ver_common.threads);
      if (ver_common.out.empty()) ver_common.out = "verify.json";
      return run_verify(ver_common, ver_dim, ver_p, ver_q, ver_s_est, ver_samples, ver_radius,
                        ver_slack);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
