#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "korteweg/symbols.hpp"

using namespace korteweg;
using testing_util::kind_of;
using testing_util::rel;

namespace {

std::pair<double, cplx> random_point(std::mt19937_64& rng, double sigma) {
  std::uniform_real_distribution<double> lx(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> ar(-(kPi - sigma) * 0.999, (kPi - sigma) * 0.999);
  return {std::exp(lx(rng)), std::polar(std::exp(lx(rng)), ar(rng))};
}

}  // namespace

TEST_CASE("omega_lambda principal roots") {
  CHECK(std::abs(omega_lambda(0.0, 4.0, 1.0) - 2.0) < 1e-15);
  CHECK(std::abs(omega_lambda(0.0, cplx(0, 1), 1.0) - std::polar(1.0, kPi / 4)) < 1e-15);
  CHECK(std::abs(omega_lambda(1.0, 3.0, 1.0) - 2.0) < 1e-15);
  CHECK(kind_of([] { omega_lambda(0.0, -1.0, 1.0); }) == ErrorKind::BranchCutHit);
}

TEST_CASE("roots t_j") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const auto [t1, t2] = roots_t(0.0, 1.0, m.dc);
  CHECK(std::abs(t1 - cplx(0.77688698, 0.32179713)) < 1e-8);
  CHECK(std::abs(t2 - std::conj(t1)) < 1e-15);

  const auto [a, b] = roots_t(1.0, 1e-12, m.dc);
  CHECK(std::abs(a - 1.0) < 1e-11);
  CHECK(std::abs(b - 1.0) < 1e-11);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    auto [xi, lam] = random_point(rng, m.dc.sigma_w);
    const RootSet rs = roots(xi * xi, lam, m);
    for (int j = 1; j <= 2; ++j) {
      const cplx lhs = rs.t(j) * rs.t(j);
      const cplx rhs = xi * xi + m.s(j) * lam;
      CHECK(rel(lhs, rhs) < 1e-13);
    }
  }
}

TEST_CASE("whole space symbol") {
  const MaterialParams p{1, 1, 2, 0, 1};
  const cplx lam(0.3, 0.7);
  CHECK(std::abs(whole_space_symbol_P(0.0, lam, p) - lam * lam) < 1e-15);
  CHECK(std::abs(whole_space_symbol_P(1.0, 1.0, p) - 5.0) < 1e-15);
  CHECK(std::abs(whole_space_symbol_P(1.0, 0.0, p) - p.kappa) < 1e-15);
  const Model m(p);
  const auto [lp, lm] = whole_space_lambda_roots(2.0, m);
  CHECK(std::abs(whole_space_symbol_P(2.0, lp, p)) < 1e-12);
  CHECK(std::abs(whole_space_symbol_P(2.0, lm, p)) < 1e-12);
}

TEST_CASE("Lopatinskii determinant: direct, factored and eliminated forms") {
  for (auto p : {MaterialParams{1, 1, 2}, MaterialParams{1, 2, 1}, MaterialParams{0.5, 3, 1}}) {
    const Model m(p);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
      auto [xi, lam] = random_point(rng, m.dc.sigma_w);
      const double x2 = xi * xi;
      const Lopatinskii L = lopatinskii(x2, lam, m);
      CHECK(rel(L.det_direct, L.det_factored) < 1e-12);
      CHECK(std::abs(L.det_direct) > 0.0);
      const FrakSymbols fs = frak_symbols(x2, lam, L.roots, m);
      for (int j = 1; j <= 2; ++j) {
        const cplx tj = L.roots.t(j);
        CHECK(rel(L.det_direct * tj * (tj + L.roots.omega), lam * root_gap(L.roots, lam, m.dc) * fs.l[j - 1]) <
              1e-12);
        CHECK(rel(fs.p[j - 1] - fs.q[j - 1], 2.0 * (m.s(j) - 1.0 / p.mu) * L.roots.omega) < 1e-12);
      }
    }
  }
}

TEST_CASE("root gap matches the plain difference when it is well conditioned") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const cplx lam(3.0, 1.0);
  const RootSet rs = roots(0.5, lam, m);
  CHECK(rel(root_gap(rs, lam, m.dc), rs.t2 - rs.t1) < 1e-14);
}

TEST_CASE("Lopatinskii entries at zero tangential frequency") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const cplx lam(2.0, 0.5);
  const Lopatinskii L = lopatinskii(0.0, lam, m);
  CHECK(std::abs(L.L11 - L.roots.t2 * L.roots.t2) < 1e-13);
  CHECK(std::abs(L.L21 + L.roots.t1 * L.roots.t1) < 1e-13);
}

TEST_CASE("quotient and eliminated forms agree away from coincidence") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto [xi, lam] = random_point(rng, m.dc.sigma_w);
    const FrakSymbols fs = frak_symbols(xi * xi, lam, m);
    const QuotientForms q = quotient_forms(xi * xi, lam, m);
    const RootSet rs = roots(xi * xi, lam, m);
    if (std::abs(rs.t2 - rs.t1) < 1e-3 * std::abs(rs.t1)) continue;
    for (int j = 0; j < 2; ++j) {
      CHECK(rel(fs.m[j], q.m[j]) < 1e-10);
      CHECK(rel(fs.p[j], q.p[j]) < 1e-10);
      CHECK(rel(fs.q[j], q.q[j]) < 1e-10);
      CHECK(rel(fs.l[j], q.l[j]) < 1e-10);
    }
  }
}

TEST_CASE("kernel values") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const RootSet rs{cplx(1.5), cplx(1.0), cplx(2.0)};
  for (int j = 0; j <= 2; ++j) CHECK(std::abs(kernel_M(j, 0.0, rs, m)) < 1e-16);
  CHECK(kernel_M(0, 1.0, rs, m).real() == doctest::Approx(-0.23254416).epsilon(1e-8));
  CHECK(std::abs(kernel_M_derivative(0, 0.0, rs, m) + 1.0) < 1e-15);
  CHECK(std::abs(kernel_M_derivative(1, 0.0, rs, m) + frak_r(1, rs, m)) < 1e-15);
}

TEST_CASE("kernel derivative matches central differences") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.2, 3.0), a(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const RootSet rs{std::polar(u(rng), a(rng)), std::polar(u(rng), a(rng)), std::polar(u(rng), a(rng))};
    const double x = u(rng), h = 1e-3;
    for (int j = 0; j <= 2; ++j) {
      auto f = [&](double y) { return kernel_M(j, y, rs, m); };
      const cplx fd = (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12 * h);
      CHECK(std::abs(fd - kernel_M_derivative(j, x, rs, m)) < 1e-8 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("coincidence limit of the divided exponential") {
  const cplx t1(1.3, 0.4);
  for (double gap : {1e-3, 1e-6}) {
    const cplx t2 = t1 + gap;
    for (double x : {0.1, 1.0, 3.0}) {
      const cplx quad = divided_exp_quadrature(t1, t2, x);
      const cplx direct = divided_exp_direct(t1, t2, x);
      if (gap == 1e-3) CHECK(rel(quad, direct) < 1e-10);
      const cplx limit = -x * std::exp(-0.5 * (t1 + t2) * x);
      CHECK(rel(divided_exp(t1, t2, x), limit) < (gap < 1e-5 ? 1e-9 : 1e-5));
    }
  }
}

TEST_CASE("expm1c is accurate near zero") {
  const cplx z(1e-10, 2e-10);
  CHECK(rel(expm1c(z), z + 0.5 * z * z) < 1e-15);
}

TEST_CASE("scan for |P| over a sector is positive") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  ScanGrid g;
  g.n_lambda = 12;
  g.n_xi = 12;
  const ScanResult r = scan_lower_bound(ScanTarget::P, Sector{kPi / 3, 0.0}, g, m);
  CHECK(r.C > 0.0);
  CHECK(r.C <= r.grid_C);
  const ScanResult f = scan_lower_bound(ScanTarget::P, Sector{kPi / 3, 0.0}, g.refined(), m);
  CHECK(std::abs(f.C - r.C) <= 0.1 * r.C);
}

TEST_CASE("scan target parsing") {
  CHECK(scan_target_from_string("l1") == ScanTarget::L1);
  CHECK(homogeneity_power(ScanTarget::P) == 4);
  CHECK(homogeneity_power(ScanTarget::L2) == 6);
  CHECK(kind_of([] { scan_target_from_string("nope"); }) == ErrorKind::ConfigError);
}

TEST_CASE("Re omega scan is positive for any sector") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  ScanGrid g;
  g.n_lambda = 10;
  g.n_xi = 10;
  CHECK(scan_lower_bound(ScanTarget::ReOmega, Sector{0.3, 0.0}, g, m).C > 0.0);
}

TEST_CASE("multiplier certificates") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const Sector s{kPi / 4 + 0.2, 0.0};
  ScanGrid g;
  g.n_lambda = 8;
  g.n_angle = 5;
  g.n_xi = 8;
  const Certificate one =
      certify_multiplier("one", [](const std::vector<double>&, cplx) { return cplx(1.0); }, 0.0, 1, s, g);
  CHECK(one.estimated_constant == doctest::Approx(1.0).epsilon(1e-12));

  const Certificate xi = certify_multiplier(
      "xi", [](const std::vector<double>& x, cplx) { return cplx(x[0]); }, 1.0, 1, s, g);
  CHECK(xi.finite());
  CHECK(xi.estimated_constant >= 1.0 - 1e-9);

  for (const auto& e : multiplier_catalog(m)) {
    if (e.id.rfind("omega^", 0) != 0) continue;
    CHECK(certify_multiplier(e.id, e.symbol, e.order, e.type, s, g).finite());
  }
}
