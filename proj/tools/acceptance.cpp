// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "korteweg/full_resolvent.hpp"
#include "korteweg/half_space.hpp"
#include "korteweg/symbols.hpp"
#include "korteweg/verification.hpp"
#include "korteweg/whole_space.hpp"

using namespace korteweg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<MaterialParams>& parameter_sets() {
  // eta_w < 0 for the first three, eta_w > 0 for the last two.
  static const std::vector<MaterialParams> sets{
      {1, 1, 2, 0, 1}, {1, 1, 1.5, 0, 1}, {2, 2, 5, 0, 1}, {1, 2, 1, 0, 1}, {0.5, 3, 1, 0, 1}};
  return sets;
}

std::string label(const MaterialParams& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%g,%g,%g)", p.mu, p.nu, p.kappa);
  return buf;
}

double rel(cplx a, cplx b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// Random admissible (|xi'|, lambda) with log-uniform moduli.
struct PointSampler {
  std::mt19937_64 rng;
  double sigma;
  std::pair<double, cplx> operator()() {
    std::uniform_real_distribution<double> lx(std::log(1e-3), std::log(1e3));
    std::uniform_real_distribution<double> ll(std::log(1e-3), std::log(1e3));
    double edge = (kPi - sigma) * (1.0 - 1e-6);
    std::uniform_real_distribution<double> ar(-edge, edge);
    return {std::exp(lx(rng)), std::polar(std::exp(ll(rng)), ar(rng))};
  }
};

void criterion1() {
  auto t0 = Clock::now();
  Model m(MaterialParams{1, 1, 2, 0, 1});
  BoxGrid box = BoxGrid::uniform(2, 256, 2.0 * kPi);
  std::vector<double> w(box.size(), box.cell_volume());
  double worst_err = 0.0, worst_res = 0.0;
  for (int s = 0; s < 20; ++s) {
    cplx lam = std::polar(1.0 + 5.0 * s, -2.0 + 0.2 * s);
    auto pair = random_whole_pair(box, lam, m, 1000 + s);
    WholeField sol = solve_whole(box, pair.data.d, pair.data.f, lam, m);
    ScalarField diff(sol.rho.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sol.rho[i] - pair.star.rho[i];
    double num = weighted_norm_sq(diff, w), den = weighted_norm_sq(pair.star.rho, w);
    for (std::size_t a = 0; a < sol.u.size(); ++a) {
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sol.u[a][i] - pair.star.u[a][i];
      num += weighted_norm_sq(diff, w);
      den += weighted_norm_sq(pair.star.u[a], w);
    }
    worst_err = std::max(worst_err, std::sqrt(num / den));
    worst_res = std::max(worst_res, residual_whole(sol, pair.data.d, pair.data.f, lam, m).worst_relative());
  }
  double t = seconds_since(t0);
  report(1, worst_err <= 1e-10 && worst_res <= 1e-10 && t <= 2.0,
         fmt("whole space, 20 pairs on 256^2: recovery %.2e residual %.2e time %.2fs", worst_err, worst_res, t));
}

void criterion2() {
  auto t0 = Clock::now();
  Model m(MaterialParams{1, 1, 2, 0, 1});
  TangentialGrid tg{1, 256, 2.0 * kPi};
  auto xn = chebyshev_normal_samples(10.0);
  double worst_res = 0.0;
  for (int s = 0; s < 20; ++s) {
    cplx lam = std::polar(0.5 + 10.0 * s, -2.0 + 0.2 * s);
    auto bd = random_boundary_data(tg, 500 + s, 64);
    auto sol = solve_reduced(bd.g, bd.h, lam, tg, xn, m);
    worst_res = std::max(worst_res, residual_reduced(sol, bd.g, bd.h, m).worst_relative());
  }

  double worst_cross = 0.0;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> nd;
  for (std::size_t pi = 0; pi < parameter_sets().size(); ++pi) {
    Model mp(parameter_sets()[pi]);
    PointSampler ps{std::mt19937_64(900 + pi), mp.dc.sigma_w};
    for (int i = 0; i < 2000; ++i) {
      auto [xi, lam] = ps();
      std::vector<cplx> g0{{nd(rng), nd(rng)}, {nd(rng), nd(rng)}};
      cplx h0{nd(rng), nd(rng)};
      auto a = coefficients_direct({xi}, lam, g0, h0, mp);
      auto b = coefficients_closed_form({xi}, lam, g0, h0, mp);
      std::vector<std::pair<cplx, cplx>> c{{a.rho_a1, b.rho_a1}, {a.rho_a2, b.rho_a2}};
      for (std::size_t J = 0; J < a.alpha.size(); ++J) {
        c.push_back({a.alpha[J], b.alpha[J]});
        c.push_back({a.beta[J], b.beta[J]});
        c.push_back({a.gamma[J], b.gamma[J]});
      }
      double scale = 0.0, diff = 0.0;
      for (auto& [x, y] : c) {
        scale = std::max(scale, std::abs(x));
        diff = std::max(diff, std::abs(x - y));
      }
      worst_cross = std::max(worst_cross, diff / scale);
    }
  }
  double t = seconds_since(t0);
  report(2, worst_res <= 1e-10 && worst_cross <= 1e-12 && t <= 5.0,
         fmt("half space, 20 data sets M=256: residual %.2e, direct vs closed form on 1e4 modes %.2e, time %.2fs",
             worst_res, worst_cross, t));
}

void criterion3() {
  double worst = 0.0;
  for (std::size_t pi = 0; pi < parameter_sets().size(); ++pi) {
    Model m(parameter_sets()[pi]);
    PointSampler ps{std::mt19937_64(31 + pi), m.dc.sigma_w};
    for (int i = 0; i < 10000; ++i) {
      auto [xi, lam] = ps();
      double x2 = xi * xi;
      auto L = lopatinskii(x2, lam, m);
      auto fs = frak_symbols(x2, lam, L.roots, m);
      for (int j = 1; j <= 2; ++j) {
        cplx tj = L.roots.t(j);
        cplx lhs = L.det_direct * tj * (tj + L.roots.omega);
        cplx rhs = lam * root_gap(L.roots, lam, m.dc) * fs.l[j - 1];
        worst = std::max(worst, rel(lhs, rhs));
      }
    }
  }
  report(3, worst <= 1e-12, fmt("det factorisation, j=1,2, 1e4 points x 5 sets: max relative gap %.2e", worst));
}

struct ScanCheck {
  double C = 0, Cr = 0;
  bool ok() const { return C > 0 && std::abs(Cr - C) <= 0.1 * C; }
};

ScanCheck scan_pair(ScanTarget t, const Sector& s, const Model& m) {
  ScanGrid g;
  return {scan_lower_bound(t, s, g, m).C, scan_lower_bound(t, s, g.refined(), m).C};
}

void criterion4() {
  bool pass = true;
  std::string detail;
  for (const auto& p : parameter_sets()) {
    Model m(p);
    Sector s{m.dc.sigma_w + 0.2, 0.0};
    for (auto t : {ScanTarget::L1, ScanTarget::L2}) {
      auto r = scan_pair(t, s, m);
      pass = pass && r.ok();
      detail += fmt(" %s%s=%.3g(%+.1e)", label(p).c_str(), to_string(t), r.C, (r.Cr - r.C) / r.C);
    }
  }
  report(4, pass, "non-degeneracy scan:" + detail);
}

void criterion5() {
  bool pass = true;
  std::string detail;
  for (const auto& p : parameter_sets()) {
    Model m(p);
    for (double sig : {m.dc.sigma_w + 0.1, kPi / 3}) {
      auto r = scan_pair(ScanTarget::P, Sector{sig, 0.0}, m);
      pass = pass && r.ok();
      detail += fmt(" %s@%.2f=%.3g(%+.1e)", label(p).c_str(), sig, r.C, (r.Cr - r.C) / r.C);
    }
  }
  report(5, pass, "|P| lower bound:" + detail);
}

void criterion6() {
  // Dual-path agreement across the switching band |b - a| ~ eps (|a| + |b|).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_band = 0.0;
  Model m(MaterialParams{1, 1, 2, 0, 1});
  for (int i = 0; i < 3000; ++i) {
    const int j = i % 3;
    cplx a = std::polar(0.1 + 10.0 * u01(rng), (u01(rng) - 0.5) * 2.5);
    double q = std::pow(10.0, -5.0 + 2.0 * u01(rng));  // straddles kSwitchEps
    cplx b = a * (1.0 + std::polar(q, 2 * kPi * u01(rng)));
    cplx other = std::polar(0.1 + 10.0 * u01(rng), (u01(rng) - 0.5) * 2.5);
    // Put the nearly coincident pair where kernel j sees it.
    RootSet rs = j == 0 ? RootSet{other, a, b} : j == 1 ? RootSet{b, a, other} : RootSet{b, other, a};
    double x = 5.0 * u01(rng) / std::abs(a);
    cplx direct = kernel_M(j, x, rs, m, 0.0);
    cplx quad = kernel_M(j, x, rs, m, 1.0);
    worst_band = std::max(worst_band, rel(direct, quad));
  }
  double worst_limit = 0.0;
  for (int i = 0; i < 200; ++i) {
    cplx t1 = std::polar(0.2 + 5.0 * u01(rng), (u01(rng) - 0.5) * 2.5);
    cplx t2 = t1 + std::polar(1e-6, 2 * kPi * u01(rng));
    double x = 4.0 * u01(rng) / std::abs(t1);
    cplx tm = 0.5 * (t1 + t2);
    cplx limit = -x * std::exp(-tm * x);
    cplx v = divided_exp(t1, t2, x);
    worst_limit = std::max(worst_limit, std::abs(v - limit) / std::max(std::abs(limit), 1e-300));
  }
  report(6, worst_band <= 1e-10 && worst_limit <= 1e-9,
         fmt("kernels: dual-path gap %.2e, coincidence limit gap %.2e at |t2-t1|=1e-6", worst_band, worst_limit));
}

double solution_norm(const FullSolution& S) {
  auto w = S.grid.half().quadrature_weights();
  double n = 0.0;
  for (int c = 0; c <= S.grid.dim(); ++c) n += weighted_norm_sq(S.sample(c), w);
  return std::sqrt(n);
}

void criterion7() {
  Model m(MaterialParams{1, 1, 2, 0, 1});
  FullGrid g{TangentialGrid{1, 32, 2.0 * kPi}, 10.0, 256};
  cplx lam = std::polar(50.0, 0.4);
  double worst = 0.0;
  for (int s = 0; s < 3; ++s) {
    auto star = random_manufactured_pair(g, lam, m, 100 + s);
    auto F = manufactured_data(star, g, lam, m);
    worst = std::max(worst, relative_error(solve_gamma_zero(F, lam, m), star));
  }
  // Homogeneous data: the direct solve and the Neumann iteration (gamma > 0,
  // random start) must both return the zero solution.
  FullData Z = FullData::zero(g);
  double zero_direct = solution_norm(solve_gamma_zero(Z, lam, m));
  Model mg(MaterialParams{1, 1, 2, 0.1, 1});
  auto start = random_full_data(g, 41);
  auto it = solve_general(Z, lam, mg, 64, 1e-12, start);
  double zero_iter = solution_norm(it.solution) / data_norm(start, lam);
  report(7, worst <= 1e-8 && zero_direct <= 1e-10 && zero_iter <= 1e-10,
         fmt("full pipeline: manufactured recovery %.2e, homogeneous solution norm %.2e (direct) %.2e (iterated)",
             worst, zero_direct, zero_iter));
}

void criterion8() {
  FullGrid g{TangentialGrid{1, 32, 2.0 * kPi}, 5.0, 64};
  bool pass = true;
  std::string detail;
  for (double gam : {0.05, 0.1, 0.5}) {
    Model m(MaterialParams{1, 1, 2, gam, 1});
    auto sel = select_lambda0(m, g, 0.0, 7);
    auto F = random_full_data(g, 11);
    auto res = solve_general(F, sel.lambda, m);
    double worst_ratio = 0.0;
    for (double r : res.state.ratios) worst_ratio = std::max(worst_ratio, r);
    double resid = residual_full(res.solution, F, m).worst_relative();
    auto probe = contraction_probe(m, Sector{m.dc.sigma_w + 0.1, 0.0}, {1.0, 10.0, 100.0, 1000.0, 10000.0}, g, 5);
    std::vector<double> mod, rat;
    for (auto& row : probe) {
      mod.push_back(std::abs(row.lambda));
      rat.push_back(row.ratio);
    }
    double rho = spearman(mod, rat);
    bool ok = res.state.converged && sel.ratio <= 0.5 && worst_ratio <= 0.5 && resid <= 1e-8 && rho <= -0.9;
    pass = pass && ok;
    detail += fmt(" gamma=%g: |lambda0|=%g ratio<=%.3f residual %.1e spearman %.2f;", gam, std::abs(sel.lambda),
                  std::max(sel.ratio, worst_ratio), resid, rho);
  }
  report(8, pass, "perturbation:" + detail);
}

void criterion9() {
  auto t0 = Clock::now();
  // Orthogonality closed form and Monte Carlo agreement.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  auto random_vecs = [&](int m, int len) {
    std::vector<std::vector<cplx>> v(m, std::vector<cplx>(len));
    for (auto& x : v)
      for (auto& y : x) y = {nd(rng), nd(rng)};
    return v;
  };
  std::vector<std::vector<cplx>> ortho(5, std::vector<cplx>(5));
  double closed = 0.0;
  for (int j = 0; j < 5; ++j) {
    ortho[j][j] = {1.0 + j, 0.5 * j};
    closed += std::norm(ortho[j][j]);
  }
  double exact_o = rademacher_mean_square(ortho, RademacherMode::Exact);
  double ortho_gap = std::abs(exact_o - closed) / closed;
  auto v6 = random_vecs(6, 40);
  double ex = rademacher_mean_square(v6, RademacherMode::Exact);
  double mc = rademacher_mean_square(v6, RademacherMode::MonteCarlo, 20000, 3);
  double mc_gap = std::abs(mc - ex) / ex;

  Model m(MaterialParams{1, 1, 2, 0, 1});
  RBoundOptions opt;
  opt.trials = 400;
  auto est = estimate_rbounds({{RFamily::SA, 0}, {RFamily::TB, 0}, {RFamily::SA, 1}, {RFamily::TB, 1}}, opt, m);
  bool pass = ortho_gap <= 1e-12 && mc_gap <= 0.02;
  std::string detail;
  for (auto& e : est) {
    double a = e.bound_after(200), b = e.bound_after(400);
    bool ok = std::isfinite(a) && std::isfinite(b) && std::abs(b - a) <= 0.25 * a;
    pass = pass && ok;
    detail += fmt(" %s %.3g->%.3g;", e.family_id.c_str(), a, b);
  }
  double t = seconds_since(t0);
  pass = pass && t <= 60.0;
  report(9, pass,
         fmt("R-bounds: orthogonality %.1e, MC gap %.2f%%,", ortho_gap, 100 * mc_gap) + detail +
             fmt(" time %.1fs", t));
}

void criterion10() {
  bool pass = true;
  std::string detail;
  ScanGrid g;
  g.n_lambda = 16;
  g.n_xi = 16;
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& p : parameter_sets()) {
    Model m(p);
    auto ss = empirical_sigma_star(m, ScanGrid{});
    Sector sec{std::min(ss.sigma_star + 0.1, 0.5 * kPi - 1e-3), 0.0};
    for (auto& e : multiplier_catalog(m)) {
      auto c = certify_multiplier(e.id, e.symbol, e.order, e.type, sec, g);
      ++count;
      if (!c.finite()) {
        pass = false;
        detail += " " + label(p) + ":" + e.id + " not finite;";
      } else {
        worst = std::max(worst, c.estimated_constant);
      }
    }
  }
  report(10, pass, fmt("multiplier certificates: %zu symbol/parameter pairs, largest constant %.3g", count, worst) +
                       detail);
}

}  // namespace

int main() {
  std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                         criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, all.size());
  return failures == 0 ? 0 : 1;
}
