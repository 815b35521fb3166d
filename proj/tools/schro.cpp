// Command-line surface for the coupled Schroedinger toolkit. Subcommands
// write the CSV/JSON artifacts described in the README; every run appends
// one JSON line to runs.log with its parameters, wall time and a digest of
// the bytes written.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "schro/continuation.hpp"
#include "schro/errors.hpp"
#include "schro/io.hpp"
#include "schro/nehari.hpp"
#include "schro/verify.hpp"

using json = nlohmann::ordered_json;
using namespace schro;

namespace {

struct Emitted {
  std::string bytes;  // everything written, in order, for the digest

  void file(const std::string& path, const std::string& content) {
    write_text_file(path, content);
    bytes += content;
  }
};

double resolve_radius(double radius, int dim) {
  if (radius > 0.0) return radius;
  return dim == 1 ? 15.0 : 20.0;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& raw) {
  std::map<std::string, double> tols{
      {"ground", 1e-11}, {"newton", 1e-9}, {"minimize", 1e-6}};
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--tol expects name=value: " + s);
    const std::string name = s.substr(0, eq);
    const double value = std::stod(s.substr(eq + 1));
    if (!(value > 0.0))
      throw std::invalid_argument("--tol " + name + " must be positive");
    tols[name] = value;
  }
  return tols;
}

std::string json_dump(const json& j) { return j.dump() + "\n"; }

// full-precision doubles inside JSON documents
json num(double x) { return json::parse(format_full(x)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the double coupled cubic Schroedinger system"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value configuration file");

  int dim = 0;
  double radius = 0.0;
  Eigen::Index nodes = 2001;
  double kappa = 0.0, beta = 0.0, mu1 = 1.0, mu2 = 1.0;
  int jay = 1, jmax = 3, count = 4, max_points = 60;
  double step = 0.02, kappa_hi = 1.5, eps = 0.025;
  bool cutoff = false, fast = false;
  unsigned seed = 0;
  std::string out, grid_spec = "50x50";
  double kappa_min = -2.0, kappa_max = 2.0, beta_min = -2.0, beta_max = 2.0;
  std::vector<std::string> tol_args;

  app.add_option("--seed", seed, "seed for randomized draws")->capture_default_str();
  app.add_option("--tol", tol_args, "named tolerance overrides, name=value");

  auto add_grid_opts = [&](CLI::App* cmd, bool need_dim) {
    auto* d = cmd->add_option("--dim", dim, "space dimension, 1..3");
    if (need_dim) d->required();
    cmd->add_option("--radius", radius, "truncation radius (default 15 for N=1, 20 otherwise)");
    cmd->add_option("--nodes", nodes, "grid nodes")->capture_default_str();
  };

  auto* cmd_gs = app.add_subcommand("ground-state", "scalar ground state omega");
  add_grid_opts(cmd_gs, true);
  cmd_gs->add_option("--out", out, "profile CSV path")->required();

  auto* cmd_spec = app.add_subcommand("spectrum", "weighted eigenvalues lambda_j(kappa)");
  add_grid_opts(cmd_spec, true);
  cmd_spec->add_option("--kappa", kappa, "linear coupling")->required();
  cmd_spec->add_option("--count", count, "number of eigenpairs")->capture_default_str();
  cmd_spec->add_option("--out", out, "JSON path")->required();

  auto* cmd_bif = app.add_subcommand("bifurcations", "roots of lambda_j(kappa) = f(beta)");
  add_grid_opts(cmd_bif, true);
  cmd_bif->add_option("--beta", beta, "nonlinear coupling")->required();
  cmd_bif->add_option("--jmax", jmax, "largest index j")->capture_default_str();
  cmd_bif->add_option("--kappa-hi", kappa_hi, "right end of the root search")->capture_default_str();
  cmd_bif->add_option("--out", out, "JSON path")->required();

  auto* cmd_region = app.add_subcommand("region-map", "existence/nonexistence verdict grid");
  cmd_region->add_option("--mu1", mu1)->required();
  cmd_region->add_option("--mu2", mu2)->required();
  cmd_region->add_option("--grid", grid_spec, "AxB sample counts")->capture_default_str();
  cmd_region->add_option("--kappa-min", kappa_min)->capture_default_str();
  cmd_region->add_option("--kappa-max", kappa_max)->capture_default_str();
  cmd_region->add_option("--beta-min", beta_min)->capture_default_str();
  cmd_region->add_option("--beta-max", beta_max)->capture_default_str();
  cmd_region->add_option("--out", out, "CSV path")->required();

  auto* cmd_ground = app.add_subcommand("ground", "Nehari ground state of the system");
  add_grid_opts(cmd_ground, true);
  cmd_ground->add_option("--kappa", kappa)->required();
  cmd_ground->add_option("--beta", beta)->required();
  cmd_ground->add_option("--mu1", mu1)->capture_default_str();
  cmd_ground->add_option("--mu2", mu2)->capture_default_str();
  cmd_ground->add_option("--out", out, "JSON path; profiles go to <out>_u.csv/_v.csv")->required();

  auto* cmd_branch = app.add_subcommand("branch", "pseudo-arclength branch trace in kappa");
  add_grid_opts(cmd_branch, true);
  cmd_branch->add_option("--beta", beta)->required();
  cmd_branch->add_option("--j", jay, "bifurcation index")->capture_default_str();
  cmd_branch->add_option("--step", step, "arclength step")->capture_default_str();
  cmd_branch->add_option("--max-points", max_points)->capture_default_str();
  cmd_branch->add_option("--eps", eps, "kernel switch amplitude")->capture_default_str();
  cmd_branch->add_flag("--cutoff", cutoff, "use the positive-part cutoff system");
  cmd_branch->add_option("--out", out, "CSV path")->required();

  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
  cmd_verify->add_option("--dim", dim, "restrict to one dimension");
  cmd_verify->add_flag("--fast", fast, "quick N=1 analytic subset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Emitted emitted;
  json params;
  std::string command;

  try {
    const auto tols = parse_tols(tol_args);

    if (*cmd_gs) {
      command = "ground-state";
      const double R = resolve_radius(radius, dim);
      RadialGrid g(dim, R, nodes);
      GroundState gs = solve_ground_state(g, tols.at("ground"));
      emitted.file(out, profile_csv(gs.omega));
      json side{{"dim", dim},
                {"center_value", num(gs.center_value)},
                {"residual_norm", num(gs.residual_norm)},
                {"h", num(g.spacing())},
                {"R", num(R)}};
      emitted.file(out + ".json", json_dump(side));
      params = {{"dim", dim}, {"radius", num(R)}, {"nodes", nodes}, {"out", out}};
    } else if (*cmd_spec) {
      command = "spectrum";
      const double R = resolve_radius(radius, dim);
      RadialGrid g(dim, R, nodes);
      GroundState gs = solve_ground_state(g, tols.at("ground"));
      json arr = json::array();
      for (const EigenPair& ep : eigen_lambda(gs, kappa, count))
        arr.push_back({{"j", ep.index},
                       {"kappa", num(ep.kappa)},
                       {"lambda", num(ep.lambda)},
                       {"residual", num(ep.residual)}});
      emitted.file(out, json_dump(arr));
      params = {{"dim", dim}, {"kappa", num(kappa)}, {"count", count},
                {"radius", num(R)}, {"nodes", nodes}, {"out", out}};
    } else if (*cmd_bif) {
      command = "bifurcations";
      const double R = resolve_radius(radius, dim);
      RadialGrid g(dim, R, nodes);
      GroundState gs = solve_ground_state(g, tols.at("ground"));
      json arr = json::array();
      for (const BifurcationPoint& bp :
           find_bifurcation_kappas(gs, beta, jmax, kappa_hi))
        arr.push_back({{"j", bp.j},
                       {"kappa", num(bp.kappa_j)},
                       {"l2_norm_u", num(l2_norm(bp.pair.first))},
                       {"lambda", num(bp.lambda)},
                       {"in_unit_interval", bp.in_unit_interval}});
      emitted.file(out, json_dump(arr));
      params = {{"dim", dim}, {"beta", num(beta)}, {"jmax", jmax},
                {"kappa_hi", num(kappa_hi)}, {"radius", num(R)},
                {"nodes", nodes}, {"out", out}};
    } else if (*cmd_region) {
      command = "region-map";
      int na = 0, nb = 0;
      if (std::sscanf(grid_spec.c_str(), "%dx%d", &na, &nb) != 2 || na < 2 ||
          nb < 2)
        throw std::invalid_argument("--grid expects AxB with A,B >= 2");
      std::string csv = "kappa,beta,verdict\n";
      for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
          Params p;
          p.kappa = kappa_min + (kappa_max - kappa_min) * i / (na - 1);
          p.beta = beta_min + (beta_max - beta_min) * j / (nb - 1);
          p.mu1 = mu1;
          p.mu2 = mu2;
          p.dim = 3;
          csv += format_full(p.kappa);
          csv += ',';
          csv += format_full(p.beta);
          csv += ',';
          csv += to_string(classify_region(p));
          csv += '\n';
        }
      }
      emitted.file(out, csv);
      params = {{"mu1", num(mu1)}, {"mu2", num(mu2)}, {"grid", grid_spec},
                {"out", out}};
    } else if (*cmd_ground) {
      command = "ground";
      const double R = resolve_radius(radius, dim);
      RadialGrid g(dim, R, nodes);
      GroundState gs = solve_ground_state(g, tols.at("ground"));
      Params p;
      p.kappa = kappa;
      p.beta = beta;
      p.mu1 = mu1;
      p.mu2 = mu2;
      p.dim = dim;
      NehariState st =
          minimize_ground_state(p, {gs.omega, gs.omega}, tols.at("minimize"), 4000);
      if (!st.converged)
        throw NumericalError("ground: minimizer did not converge; best residual " +
                             format_full(st.residual));
      json doc{{"energy", num(st.energy)},
               {"residual", num(st.residual)},
               {"l2_u", num(l2_norm(st.pair.first))},
               {"l2_v", num(l2_norm(st.pair.second))},
               {"positive", st.positive}};
      emitted.file(out, json_dump(doc));
      emitted.file(out + "_u.csv", profile_csv(st.pair.first));
      emitted.file(out + "_v.csv", profile_csv(st.pair.second));
      params = {{"dim", dim}, {"kappa", num(kappa)}, {"beta", num(beta)},
                {"mu1", num(mu1)}, {"mu2", num(mu2)}, {"out", out}};
    } else if (*cmd_branch) {
      command = "branch";
      const double R = resolve_radius(radius, dim);
      RadialGrid g(dim, R, nodes);
      GroundState gs = solve_ground_state(g, tols.at("ground"));
      auto bps = find_bifurcation_kappas(gs, beta, jay, kappa_hi);
      const BifurcationPoint* origin = nullptr;
      for (const auto& bp : bps)
        if (bp.j == jay) origin = &bp;
      if (!origin)
        throw NumericalError("branch: no bifurcation point for j = " +
                             std::to_string(jay));

      auto guess = branch_switch(*origin, eps);
      BranchPoint start;
      bool have = false;
      for (double offset : {5e-4, -5e-4, 1e-3, -1e-3, 3e-3, -3e-3}) {
        Params p;
        p.kappa = origin->kappa_j + offset;
        p.beta = beta;
        p.dim = dim;
        try {
          BranchPoint pt = newton_solve(p, guess, cutoff, tols.at("newton"));
          if (pt.asymmetry > eps * l2_norm(origin->kernel_phi)) {
            start = pt;
            have = true;
            break;
          }
        } catch (const NumericalError&) {
        }
      }
      if (!have)
        throw NumericalError("branch: switching produced no bifurcating solution");

      Params p;
      p.beta = beta;
      p.dim = dim;
      BranchSegment seg = continue_branch(start, *origin, p, step, max_points, cutoff);
      std::string csv =
          "arclength,kappa,l2_u,l2_v,asymmetry,energy,positive,residual\n";
      for (const auto& pt : seg.points) {
        Params q = p;
        q.kappa = pt.kappa;
        csv += format_full(pt.arclength);
        csv += ',';
        csv += format_full(pt.kappa);
        csv += ',';
        csv += format_full(l2_norm(pt.pair.first));
        csv += ',';
        csv += format_full(l2_norm(pt.pair.second));
        csv += ',';
        csv += format_full(pt.asymmetry);
        csv += ',';
        csv += format_full(energy_I(q, pt.pair.first, pt.pair.second));
        csv += ',';
        csv += pt.positive ? "1" : "0";
        csv += ',';
        csv += format_full(pt.residual);
        csv += '\n';
      }
      emitted.file(out, csv);
      std::fprintf(stderr, "branch: %zu points, termination %s\n",
                   seg.points.size(), to_string(seg.termination));
      params = {{"dim", dim}, {"beta", num(beta)}, {"j", jay},
                {"step", num(step)}, {"max_points", max_points},
                {"cutoff", cutoff}, {"out", out}};
    } else if (*cmd_verify) {
      command = "verify";
      VerifyOptions vo;
      vo.fast = fast;
      vo.dim_filter = dim;
      vo.seed = seed;
      auto results = run_acceptance(vo);
      const int code = report_acceptance(results);
      params = {{"dim", dim}, {"fast", fast}, {"seed", seed}};
      const double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      append_run_log(command, params.dump(), secs, fnv1a(emitted.bytes));
      return code;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  append_run_log(command, params.dump(), secs, fnv1a(emitted.bytes));
  return 0;
}
