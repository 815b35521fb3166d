#include "schro/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "schro/continuation.hpp"
#include "schro/errors.hpp"
#include "schro/io.hpp"
#include "schro/nehari.hpp"

namespace schro {
namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double pt_lambda(int j, double C) {
  const double s = std::sqrt(C);
  return 0.5 * (2 * j - 2 + s) * (2 * j - 1 + s);
}

Params symmetric(double kappa, double beta, int dim) {
  Params p;
  p.kappa = kappa;
  p.beta = beta;
  p.mu1 = p.mu2 = 1.0;
  p.dim = dim;
  return p;
}

RadialGrid default_grid(int dim) {
  return RadialGrid(dim, dim == 1 ? 15.0 : 20.0, 2001);
}

// --- criterion bodies ------------------------------------------------------

void c1_scalar_ground_state(Check& c) {
  RadialGrid g(1, 15.0, 150001);
  GroundState gs = solve_ground_state(g, 1e-6);
  const double e_center = std::abs(gs.center_value - std::sqrt(2.0));
  c.require(e_center <= 1e-8, "omega(0) error " + fmt(e_center));

  const double h1 = inner_h1(gs.omega, gs.omega);
  Profile om4{&g, gs.omega.values.array().pow(4).matrix()};
  const double i4 = integrate(om4);
  c.require(std::abs(h1 - 16.0 / 3.0) <= 1e-4, "H1 norm error " + fmt(h1 - 16.0 / 3.0));
  c.require(std::abs(i4 - 16.0 / 3.0) <= 1e-4, "int omega^4 error " + fmt(i4 - 16.0 / 3.0));
  c.note("omega(0) err " + fmt(e_center));
}

void c2_principal_anchor(Check& c, int dim_filter, bool fast) {
  for (int N : {1, 2, 3}) {
    if (dim_filter && N != dim_filter) continue;
    if (fast && N != 1) continue;
    RadialGrid g = default_grid(N);
    GroundState gs = solve_ground_state(g);
    auto pairs = eigen_lambda(gs, 0.0, 1);
    const EigenPair& ep = pairs[0];
    c.require(std::abs(ep.lambda - 1.0) <= 1e-6,
              "N=" + std::to_string(N) + " lambda1 err " + fmt(ep.lambda - 1.0));
    const double cos =
        inner_l2(ep.phi, gs.omega) /
        std::sqrt(inner_l2(ep.phi, ep.phi) * inner_l2(gs.omega, gs.omega));
    c.require(cos >= 1.0 - 1e-8,
              "N=" + std::to_string(N) + " cosine " + fmt(cos));
  }
}

void c3_poeschl_teller(Check& c) {
  RadialGrid g(1, 20.0, 200001);
  GroundState gs = solve_ground_state(g, 1e-6);
  double worst = 0.0;
  for (double kappa : {-0.9, -0.5, 0.0, 0.5}) {
    const double C = coupling_C(kappa);
    for (int j = 1; j <= 4; ++j) {
      const double err = std::abs(lambda_j(gs, kappa, j) - pt_lambda(j, C));
      worst = std::max(worst, err);
    }
  }
  c.require(worst <= 1e-5, "worst eigenvalue error " + fmt(worst));
  c.note("worst err " + fmt(worst));
}

void c4_bifurcation_roots(Check& c) {
  RadialGrid g(1, 740.0, 148001);
  GroundState gs = solve_ground_state(g, 1e-6);
  auto bps = find_bifurcation_kappas(gs, 0.0, 2, 1.5);
  c.require(bps.size() == 2, "expected 2 roots, got " + std::to_string(bps.size()));
  if (bps.size() == 2) {
    const double e1 = std::abs(bps[0].kappa_j + 0.6);
    const double e2 = std::abs(bps[1].kappa_j - 1.0);
    c.require(e1 <= 1e-6, "kappa_1 error " + fmt(e1));
    c.require(e2 <= 1e-5, "kappa_2 error " + fmt(e2));
    c.note("k1 err " + fmt(e1) + ", k2 err " + fmt(e2));
  }
}

void c5_eigenvalue_curves(Check& c, int dim_filter) {
  for (int N : {2, 3}) {
    if (dim_filter && N != dim_filter) continue;
    RadialGrid g = default_grid(N);
    GroundState gs = solve_ground_state(g);
    const double w2 = gs.center_value * gs.center_value;

    const int pts = 30;
    auto kappa_at = [&](int k) { return -0.95 + k * (2.0 + 0.95) / pts; };
    std::vector<std::array<double, 5>> lam(pts + 1);
    for (int k = 1; k <= pts; ++k)
      for (int j = 1; j <= 4; ++j) lam[k][j] = lambda_j(gs, kappa_at(k), j);

    for (int k = 2; k <= pts; ++k) {
      const double dC = coupling_C(kappa_at(k - 1)) - coupling_C(kappa_at(k));
      for (int j = 1; j <= 4; ++j) {
        const double drop = lam[k - 1][j] - lam[k][j];
        c.require(drop > 1e-8, "monotonicity N=" + std::to_string(N));
        c.require(drop >= dC / w2 - 1e-6, "Lipschitz floor N=" + std::to_string(N));
        // continuity: a midpoint value lands between its neighbours
        const double mid = lambda_j(gs, 0.5 * (kappa_at(k - 1) + kappa_at(k)), j);
        c.require(mid <= lam[k - 1][j] + 1e-9 && mid >= lam[k][j] - 1e-9,
                  "continuity N=" + std::to_string(N));
      }
      // the lower bounds hold on the domains of their derivations:
      // C/|w|^2 needs C >= 0, the combined max needs C >= 1
      const double kap = kappa_at(k);
      if (kap <= 1.0)
        c.require(lam[k][1] >= coupling_C(kap) / w2 - 1e-9,
                  "C-lower bound N=" + std::to_string(N));
      if (kap <= 0.0)
        c.require(lam[k][1] >= lambda1_lower_bound(gs, kap) - 1e-9,
                  "max-lower bound N=" + std::to_string(N));
    }
  }
}

void c6_synchronized_residuals(Check& c, int dim_filter, bool fast,
                               unsigned seed) {
  std::mt19937 rng(2024u + seed);
  std::uniform_real_distribution<double> kp(-0.9, 2.0), km(-0.9, 0.999),
      bt(-0.9, 3.0);
  for (int N : {1, 3}) {
    if (dim_filter && N != dim_filter) continue;
    if (fast && N != 1) continue;
    RadialGrid g = default_grid(N);
    GroundState gs = solve_ground_state(g);
    double worst = 0.0, worst_sigma = 0.0;
    for (int t = 0; t < 20; ++t) {
      const double beta = bt(rng);
      {
        const double kappa = kp(rng);
        auto [u, v] = synchronized_plus(kappa, beta, gs);
        Params p = symmetric(kappa, beta, N);
        const double rel =
            system_residual_norm(p, u, v, false) / pair_norm(u, v);
        worst = std::max(worst, rel);
        SigmaImage img = sigma_action(p, u, v);
        worst_sigma = std::max(
            worst_sigma,
            std::abs(system_residual_norm(img.params, img.u, img.v, false) -
                     system_residual_norm(p, u, v, false)));
      }
      {
        const double kappa = km(rng);
        auto [u, v] = synchronized_minus(kappa, beta, gs);
        Params p = symmetric(kappa, beta, N);
        const double rel =
            system_residual_norm(p, u, v, false) / pair_norm(u, v);
        worst = std::max(worst, rel);
      }
    }
    c.require(worst <= 1e-6,
              "N=" + std::to_string(N) + " worst rel residual " + fmt(worst));
    c.require(worst_sigma <= 1e-12,
              "N=" + std::to_string(N) + " sigma identity " + fmt(worst_sigma));
  }
}

RegionVerdict region_oracle(double k, double b, double m1, double m2) {
  const double bbar = -std::cbrt(m1 * m1 * m2);
  if (k < -1.0 && b >= bbar) return RegionVerdict::NoPositiveSolution;
  if (k == -1.0 && b > 0.0) return RegionVerdict::NoPositiveSolution;
  if (k > -1.0 && k < 0.0 && b > 0.0) return RegionVerdict::PositiveGroundState;
  if (m1 == m2) {
    if (k > -1.0 && k <= 0.0) return RegionVerdict::ExistsSymmetric;
    if (k > -1.0 && b > -1.0) return RegionVerdict::ExistsSymmetric;
  }
  return RegionVerdict::Unknown;
}

void c7_region_classifier(Check& c) {
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double k = -2.0 + 4.0 * i / 49.0;
      const double b = -2.0 + 4.0 * j / 49.0;
      Params p = symmetric(k, b, 3);
      if (classify_region(p) != region_oracle(k, b, 1.0, 1.0)) ++mismatches;
    }
  }
  c.require(mismatches == 0, std::to_string(mismatches) + " grid mismatches");

  auto probe = [&](double k, double b, double m1, double m2, RegionVerdict v,
                   const char* name) {
    Params p;
    p.kappa = k;
    p.beta = b;
    p.mu1 = m1;
    p.mu2 = m2;
    p.dim = 3;
    c.require(classify_region(p) == v, std::string("probe ") + name);
  };
  probe(-2.0, 0.0, 1, 1, RegionVerdict::NoPositiveSolution, "(-2,0)");
  probe(-0.5, 1.0, 1, 2, RegionVerdict::PositiveGroundState, "(-0.5,1)");
  probe(0.5, 0.5, 1, 1, RegionVerdict::ExistsSymmetric, "(0.5,0.5)");
  probe(-1.0, 0.5, 1, 1, RegionVerdict::NoPositiveSolution, "(-1,0.5)");
}

void c8_nehari_minimizer(Check& c, unsigned seed) {
  RadialGrid g = default_grid(3);
  GroundState gs = solve_ground_state(g);
  Params p = symmetric(-0.5, 1.0, 3);

  NehariState st = minimize_ground_state(p, {gs.omega, gs.omega}, 1e-6, 4000);
  c.require(st.converged && st.residual <= 1e-6,
            "free gradient " + fmt(st.residual));
  c.require(st.positive, "positivity");
  c.require(st.energy > 0.0, "energy sign");

  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  const double e_plus = energy_I(p, tp.first, tp.second);
  c.require(st.energy <= e_plus + 1e-8,
            "energy " + fmt(st.energy) + " vs T+ " + fmt(e_plus));

  // gradient against central finite differences on random directions
  std::mt19937 rng(77u + seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Profile u = st.pair.first, v = st.pair.second;
  auto [du, dv] = gradient_I(p, u, v);
  const double h = 1e-4;
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    Profile phi = Profile::zero(g);
    for (Eigen::Index i = 0; i + 1 < g.size(); ++i) phi.values[i] = gauss(rng);
    Profile up = u, um = u;
    up.values += h * phi.values;
    um.values -= h * phi.values;
    const double fd = (energy_I(p, up, v) - energy_I(p, um, v)) / (2.0 * h);
    const double pairing = inner_l2(du, phi);
    worst = std::max(worst,
                     std::abs(fd - pairing) / std::max(1.0, std::abs(pairing)));
  }
  c.require(worst <= 1e-5, "gradient FD mismatch " + fmt(worst));
  c.note("energy " + fmt(st.energy) + ", grad FD " + fmt(worst));
}

void c9_morse_jumps(Check& c, int dim_filter) {
  for (int N : {1, 3}) {
    if (dim_filter && N != dim_filter) continue;
    RadialGrid g = default_grid(N);
    GroundState gs = solve_ground_state(g);
    for (double beta : {0.0, -0.5}) {
      auto bps = find_bifurcation_kappas(gs, beta, 2, 1.5);
      int tested = 0;
      for (const auto& bp : bps) {
        // the jump argument needs a finite Morse index on both sides;
        // beyond kappa = 1 the difference operator has negative essential
        // spectrum, so roots at the kappa = 1 threshold are excluded
        if (bp.kappa_j + 1e-2 >= 1.0) continue;
        const int below =
            morse_index_on_branch(gs, bp.kappa_j - 1e-2, beta).index;
        const int above =
            morse_index_on_branch(gs, bp.kappa_j + 1e-2, beta).index;
        c.require(above == below + 1,
                  "N=" + std::to_string(N) + " beta=" + fmt(beta) + " j=" +
                      std::to_string(bp.j) + " jump " +
                      std::to_string(above - below));
        ++tested;
      }
      c.require(tested >= 1, "no testable root at beta=" + fmt(beta));
    }
  }
}

void c10_branch_positivity(Check& c, unsigned seed) {
  (void)seed;
  RadialGrid g = default_grid(1);
  GroundState gs = solve_ground_state(g);
  const double beta = -0.5;
  auto bps = find_bifurcation_kappas(gs, beta, 1, 0.5);
  c.require(bps.size() == 1, "kappa_1 root missing");
  if (bps.empty()) return;
  const BifurcationPoint& bp = bps.front();

  const double eps = 0.025;
  auto guess = branch_switch(bp, eps);
  BranchPoint start;
  bool have = false;
  for (double offset : {5e-4, -5e-4, 1e-3, -1e-3}) {
    Params p = symmetric(bp.kappa_j + offset, beta, 1);
    try {
      BranchPoint pt = newton_solve(p, guess, true, 1e-9);
      if (pt.asymmetry > eps * l2_norm(bp.kernel_phi)) {
        start = pt;
        have = true;
        break;
      }
    } catch (const NumericalError&) {
    }
  }
  c.require(have, "branch switch failed");
  if (!have) return;

  Params p = symmetric(0.0, beta, 1);
  BranchSegment seg = continue_branch(start, bp, p, 0.02, 60, true);
  c.require(seg.points.size() >= 30,
            "only " + std::to_string(seg.points.size()) + " points");

  double min_asym = 1e300;
  double worst_sigma = 0.0;
  bool positive_ok = true, sigma_ok = true;
  for (const auto& pt : seg.points) {
    min_asym = std::min(min_asym, pt.asymmetry);
    if (pt.kappa > -1.0 && pt.kappa <= 0.0 && !pt.positive)
      positive_ok = false;
    Params q = symmetric(pt.kappa, beta, 1);
    SigmaImage img = sigma_action(q, pt.pair.first, pt.pair.second);
    // exact sigma identity of the uncut residual at every point
    worst_sigma = std::max(
        worst_sigma,
        std::abs(system_residual_norm(img.params, img.u, img.v, false) -
                 system_residual_norm(q, pt.pair.first, pt.pair.second, false)));
    // positive points solve the uncut system, hence so do their images
    if (pt.positive &&
        system_residual_norm(img.params, img.u, img.v, false) >
            1e-7 * (1.0 + pair_norm(img.u, img.v)))
      sigma_ok = false;
  }
  c.require(min_asym > 1e-4, "min asymmetry " + fmt(min_asym));
  c.require(positive_ok, "positivity violated in (-1, 0]");
  c.require(worst_sigma <= 1e-12, "sigma residual identity " + fmt(worst_sigma));
  c.require(sigma_ok, "sigma image invalid at a positive point");
  c.note(std::to_string(seg.points.size()) + " points, termination " +
         to_string(seg.termination));
}

void c11_asymptotics(Check& c) {
  RadialGrid g(1, 15.0, 3001);
  GroundState gs = solve_ground_state(g);
  const double w2 = gs.center_value * gs.center_value;

  double prev_kappa = 1.0, prev_norm = 0.0;
  int prev_count = 0;
  std::vector<std::vector<double>> roots_by_j(4);
  for (double beta : {-0.3, -0.6, -0.8, -0.9}) {
    auto bps = find_bifurcation_kappas(gs, beta, 3, 0.0);
    c.require(!bps.empty(), "no root at beta=" + fmt(beta));
    if (bps.empty()) continue;
    const auto& bp = bps.front();

    c.require(bp.kappa_j < prev_kappa, "kappa_1 not decreasing");
    prev_kappa = bp.kappa_j;

    const double l2u = l2_norm(bp.pair.first);
    if (prev_norm > 0.0)
      c.require(l2u >= 1.05 * prev_norm, "L2 growth below 5%");
    prev_norm = l2u;

    const int count = count_bifurcations_in_unit_interval(gs, beta);
    c.require(count >= prev_count, "count not monotone");
    prev_count = count;

    c.require((1.0 + bp.kappa_j) / (1.0 + beta) >=
                  -2.0 * bp.kappa_j / (w2 * (3.0 - beta)) - 1e-9,
              "inequality (3.7) fails at beta=" + fmt(beta));

    for (const auto& b : bps) roots_by_j[b.j].push_back(b.kappa_j);
  }
  for (int j = 1; j <= 3; ++j)
    for (size_t i = 1; i < roots_by_j[j].size(); ++i)
      c.require(roots_by_j[j][i] < roots_by_j[j][i - 1],
                "kappa_" + std::to_string(j) + " not decreasing");
  c.note("kappa_1 reached " + fmt(prev_kappa));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
  struct Entry {
    int id;
    const char* name;
    bool in_fast;
    std::function<void(Check&)> body;
  };

  const std::vector<Entry> entries = {
      {1, "scalar ground state, N=1 (sech oracle)", true,
       [&](Check& c) { c1_scalar_ground_state(c); }},
      {2, "principal eigenvalue anchor lambda_1(0) = 1", true,
       [&](Check& c) { c2_principal_anchor(c, opt.dim_filter, opt.fast); }},
      {3, "Poeschl-Teller spectrum, N=1", true,
       [&](Check& c) { c3_poeschl_teller(c); }},
      {4, "bifurcation roots kappa_1 = -3/5, kappa_2 = 1", true,
       [&](Check& c) { c4_bifurcation_roots(c); }},
      {5, "eigenvalue monotonicity/continuity/bounds, N=2,3", false,
       [&](Check& c) { c5_eigenvalue_curves(c, opt.dim_filter); }},
      {6, "synchronized branch residuals and sigma identity", true,
       [&](Check& c) {
         c6_synchronized_residuals(c, opt.dim_filter, opt.fast, opt.seed);
       }},
      {7, "region classifier", true, [&](Check& c) { c7_region_classifier(c); }},
      {8, "Nehari minimizer, N=3", false,
       [&](Check& c) { c8_nehari_minimizer(c, opt.seed); }},
      {9, "Morse index jumps across bifurcation points", false,
       [&](Check& c) { c9_morse_jumps(c, opt.dim_filter); }},
      {10, "branch switching, positivity, sigma equivariance", false,
       [&](Check& c) { c10_branch_positivity(c, opt.seed); }},
      {11, "asymptotics toward beta = -1", true,
       [&](Check& c) { c11_asymptotics(c); }},
  };

  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;

    const bool dim_possible =
        !opt.dim_filter || (!(e.id == 5 && opt.dim_filter == 1) &&
                            !(e.id == 8 && opt.dim_filter != 3));
    if ((opt.fast && !e.in_fast) || !dim_possible) {
      out.push_back(std::move(r));
      continue;
    }

    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.note(std::string("exception: ") + ex.what());
    }
    r.ran = true;
    r.passed = c.ok;
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    r.detail = c.detail.str();
    out.push_back(std::move(r));
  }
  return out;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
  bool all_ok = true;
  for (const auto& r : results) {
    if (!r.ran) {
      std::printf("SKIP criterion %2d: %s\n", r.id, r.name.c_str());
      continue;
    }
    if (!r.passed) all_ok = false;
    std::printf("%s criterion %2d: %s (%.2f s)%s%s\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  std::fflush(stdout);
  return all_ok ? 0 : 1;
}

}  // namespace schro
