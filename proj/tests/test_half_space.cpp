#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "korteweg/half_space.hpp"
#include "korteweg/verification.hpp"

using namespace korteweg;
using testing_util::rel;

namespace {

double coef_gap(const ModeSolution& a, const ModeSolution& b) {
  double scale = std::max(std::abs(a.rho_a1), std::abs(a.rho_a2)), diff = std::max(std::abs(a.rho_a1 - b.rho_a1),
                                                                                    std::abs(a.rho_a2 - b.rho_a2));
  for (std::size_t J = 0; J < a.alpha.size(); ++J) {
    for (auto [x, y] : {std::pair{a.alpha[J], b.alpha[J]}, {a.beta[J], b.beta[J]}, {a.gamma[J], b.gamma[J]}}) {
      scale = std::max(scale, std::abs(x));
      diff = std::max(diff, std::abs(x - y));
    }
  }
  return diff / scale;
}

}  // namespace

TEST_CASE("zero boundary data gives zero amplitudes") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const ModeSolution s = coefficients_direct({1.0}, cplx(2, 1), {0.0, 0.0}, 0.0, m);
  CHECK(s.rho_a1 == 0.0);
  CHECK(s.rho_a2 == 0.0);
  CHECK(std::abs(s.u(0, 0.5)) == 0.0);
}

TEST_CASE("direct and closed-form coefficients agree") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> lx(std::log(1e-2), std::log(1e2));
  for (auto p : {MaterialParams{1, 1, 2}, MaterialParams{1, 2, 1}, MaterialParams{0.5, 3, 1}}) {
    const Model m(p);
    std::uniform_real_distribution<double> ar(-(kPi - m.dc.sigma_w) * 0.999, (kPi - m.dc.sigma_w) * 0.999);
    for (int i = 0; i < 1000; ++i) {
      const double xi = std::exp(lx(rng));
      const cplx lam = std::polar(std::exp(lx(rng)), ar(rng));
      const std::vector<cplx> g0{{n(rng), n(rng)}, {n(rng), n(rng)}};
      const cplx h0{n(rng), n(rng)};
      const ModeSolution a = coefficients_direct({xi}, lam, g0, h0, m);
      CHECK(coef_gap(a, coefficients_closed_form({xi}, lam, g0, h0, m)) < 1e-12);

      // Kernel form evaluates to the same fields.
      const KernelModeForm k = kernel_form({xi}, lam, g0, h0, m);
      for (double x : {0.0, 0.3 / std::abs(a.t1), 2.0 / std::abs(a.t1)}) {
        const auto b = basis_values(x, k.basis);
        // The direct amplitudes carry (t2 - t1)^{-1}; their size sets the error scale.
        double s = std::abs(a.rho_a1) + std::abs(a.rho_a2);
        for (std::size_t J = 0; J < 2; ++J) s += std::abs(a.alpha[J]) + std::abs(a.beta[J]) + std::abs(a.gamma[J]);
        CHECK(std::abs(evaluate(k.rho, b) - a.rho(x)) < 1e-11 * s);
        CHECK(std::abs(evaluate(k.u[1], b) - a.u(1, x)) < 1e-11 * s);
      }
    }
  }
}

TEST_CASE("reduced solve satisfies every row") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const TangentialGrid tg{1, 64, 2 * kPi};
  const auto xn = chebyshev_normal_samples(10.0, 65);
  for (int seed = 0; seed < 3; ++seed) {
    const auto bd = random_boundary_data(tg, seed, 16);
    const cplx lam = std::polar(0.5 + 30.0 * seed, 2.0 - seed);
    const ReducedSolution s = solve_reduced(bd.g, bd.h, lam, tg, xn, m);
    CHECK(residual_reduced(s, bd.g, bd.h, m).worst_relative() < 1e-10);
  }
}

TEST_CASE("zero fields against nonzero data give the stress norm") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const TangentialGrid tg{1, 32, 2 * kPi};
  const auto xn = chebyshev_normal_samples(5.0, 17);
  const ScalarField z(tg.size(), 0.0);
  const ReducedSolution zero = solve_reduced({z, z}, z, 1.0, tg, xn, m);
  const auto bd = random_boundary_data(tg, 3, 8);
  const ResidualReport r = residual_reduced(zero, bd.g, z, m);
  const std::vector<double> w(tg.size(), tg.cell_volume());
  CHECK(r.rows[2].name == "stress");
  CHECK(r.rows[2].l2 == doctest::Approx(std::hypot(weighted_norm(bd.g[0], w), weighted_norm(bd.g[1], w))));
  CHECK(r.rows[0].l2 == 0.0);
}

TEST_CASE("fields do not depend on the normal sample set") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const TangentialGrid tg{1, 32, 2 * kPi};
  const auto bd = random_boundary_data(tg, 5, 8);
  const std::vector<double> xa{0.0, 0.5, 1.0, 2.0}, xb{0.0, 0.25, 1.0, 3.0};
  const ReducedSolution a = solve_reduced(bd.g, bd.h, cplx(4, 1), tg, xa, m);
  const ReducedSolution b = a.resampled(xb);
  for (int c = 0; c < 3; ++c) {
    const ScalarField va = a.sample(c, {}), vb = b.sample(c, {});
    for (std::size_t t = 0; t < tg.size(); ++t) {
      CHECK(std::abs(va[t * 4 + 0] - vb[t * 4 + 0]) <= 1e-12 * (1 + std::abs(va[t * 4])));
      CHECK(std::abs(va[t * 4 + 2] - vb[t * 4 + 2]) <= 1e-12 * (1 + std::abs(va[t * 4 + 2])));
    }
  }
}

TEST_CASE("analytic normal derivative matches finite differences") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const std::vector<cplx> g0{{0.3, -1.0}, {1.2, 0.4}};
  const KernelModeForm k = kernel_form({2.0}, cplx(3.0, 2.0), g0, cplx(-0.5, 0.2), m);
  const double h = 1e-3;
  for (double x : {0.2, 0.7, 1.5}) {
    for (const Coef5* c : {&k.rho, &k.u[0], &k.u[1]}) {
      const Coef5 d = normal_derivative(*c, k.basis);
      auto f = [&](double y) { return evaluate(*c, basis_values(y, k.basis)); };
      const cplx fd = (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12 * h);
      CHECK(std::abs(fd - evaluate(d, basis_values(x, k.basis))) < 1e-7 * (1 + std::abs(fd)));
    }
  }
}

TEST_CASE("singular boundary symbol is not hit for admissible lambda") {
  const Model m(MaterialParams{1, 2, 1, 0, 1});
  CHECK_NOTHROW(coefficients_direct({0.0}, cplx(1, 0), {1.0, 1.0}, 1.0, m));
}
