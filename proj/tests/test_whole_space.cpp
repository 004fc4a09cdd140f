#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "korteweg/verification.hpp"
#include "korteweg/whole_space.hpp"

using namespace korteweg;
using testing_util::rel;

namespace {

ScalarField plane_wave(const BoxGrid& g, int k0, int k1) {
  ScalarField v(g.size());
  for (int i = 0; i < g.counts[0]; ++i)
    for (int j = 0; j < g.counts[1]; ++j)
      v[i * g.counts[1] + j] = std::exp(cplx(0, k0 * g.coordinate(0, i) + k1 * g.coordinate(1, j)));
  return v;
}

double field_error(const WholeField& a, const WholeField& b) {
  std::vector<double> w(a.grid.size(), a.grid.cell_volume());
  double num = 0.0, den = 0.0;
  auto acc = [&](const ScalarField& x, const ScalarField& y) {
    ScalarField d(x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = x[i] - y[i];
    num += weighted_norm_sq(d, w);
    den += weighted_norm_sq(y, w);
  };
  acc(a.rho, b.rho);
  for (std::size_t c = 0; c < a.u.size(); ++c) acc(a.u[c], b.u[c]);
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const ScalarField z(g.size(), 0.0);
  const WholeField s = solve_whole(g, z, {z, z}, cplx(2, 1), m);
  CHECK(max_abs(s.rho) == 0.0);
  CHECK(max_abs(s.u[0]) == 0.0);
}

TEST_CASE("single mode density response") {
  const MaterialParams p{1, 1, 2, 0, 1};
  const Model m(p);
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const cplx lam(3.0, -2.0);
  const ScalarField d = plane_wave(g, 1, 2);
  const ScalarField z(g.size(), 0.0);
  const WholeField s = solve_whole(g, d, {z, z}, lam, m);
  const double xi2 = 5.0;
  const cplx factor = (lam + (p.mu + p.nu) * xi2) / whole_space_symbol_P(xi2, lam, p);
  for (std::size_t i = 0; i < d.size(); i += 37) CHECK(std::abs(s.rho[i] - factor * d[i]) < 1e-13);
}

TEST_CASE("manufactured pairs are recovered") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 32, 2 * kPi);
  for (int seed = 0; seed < 3; ++seed) {
    const cplx lam = std::polar(1.0 + 20.0 * seed, 1.5 - seed);
    const auto pair = random_whole_pair(g, lam, m, seed);
    const WholeField s = solve_whole(g, pair.data.d, pair.data.f, lam, m);
    CHECK(field_error(s, pair.star) < 1e-10);
    CHECK(residual_whole(s, pair.data.d, pair.data.f, lam, m).worst_relative() < 1e-10);
  }
}

TEST_CASE("residual of the zero solution equals the data norms") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const auto pair = random_whole_pair(g, 2.0, m, 4, 4);
  const ScalarField z(g.size(), 0.0);
  const WholeField zero{g, z, {z, z}};
  const ResidualReport r = residual_whole(zero, pair.data.d, pair.data.f, 2.0, m);
  std::vector<double> w(g.size(), g.cell_volume());
  CHECK(r.rows[0].l2 == doctest::Approx(weighted_norm(pair.data.d, w)).epsilon(1e-14));
  CHECK(r.rows[1].l2 ==
        doctest::Approx(std::hypot(weighted_norm(pair.data.f[0], w), weighted_norm(pair.data.f[1], w))).epsilon(1e-14));
}

TEST_CASE("perturbing the density changes the mass row by |lambda| eps") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const cplx lam(3.0, 4.0);
  const auto pair = random_whole_pair(g, lam, m, 9, 4);
  WholeField s = solve_whole(g, pair.data.d, pair.data.f, lam, m);
  const double eps = 1e-3;
  const ScalarField wave = plane_wave(g, 2, -1);
  for (std::size_t i = 0; i < wave.size(); ++i) s.rho[i] += eps * wave[i];
  const ResidualReport r = residual_whole(s, pair.data.d, pair.data.f, lam, m);
  const double area = g.lengths[0] * g.lengths[1];
  CHECK(r.rows[0].l2 == doctest::Approx(std::abs(lam) * eps * std::sqrt(area)).epsilon(1e-10));
  CHECK(r.rows[0].max_abs == doctest::Approx(std::abs(lam) * eps).epsilon(1e-10));
}

TEST_CASE("spectral derivatives") {
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  ScalarField c(g.size(), 2.5);
  fft_forward(c, g.counts);
  CHECK(max_abs(spectral_derivative(c, g, {2, 1})) < 1e-13);
  CHECK(max_abs(spectral_derivative(c, g, {0, 0})) == doctest::Approx(2.5));

  const ScalarField wave = plane_wave(g, 1, 3);
  ScalarField hat = wave;
  fft_forward(hat, g.counts);
  const ScalarField d2 = spectral_derivative(hat, g, {1, 1});
  for (std::size_t i = 0; i < wave.size(); i += 11) CHECK(std::abs(d2[i] + 3.0 * wave[i]) < 1e-12);
}

TEST_CASE("derivative families scale with lambda") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const ScalarField z(g.size(), 0.0);
  const WholeField s{g, plane_wave(g, 1, 1), {z, z}};
  const DerivativeFamilies a = derivative_families(s, 1.0);
  const DerivativeFamilies b = derivative_families(s, 4.0);
  CHECK(max_abs(b.lam_rho) == doctest::Approx(4.0 * max_abs(a.lam_rho)));
  CHECK(max_abs(b.lam_half_grad2_rho[0]) == doctest::Approx(2.0 * max_abs(a.lam_half_grad2_rho[0])));
  CHECK(max_abs(b.grad3_rho[0]) == doctest::Approx(max_abs(a.grad3_rho[0])));
}

TEST_CASE("grid mismatch is reported") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const BoxGrid g = BoxGrid::uniform(2, 16, 2 * kPi);
  const ScalarField z(g.size(), 0.0), bad(7, 0.0);
  CHECK(testing_util::kind_of([&] { solve_whole(g, bad, {z, z}, 1.0, m); }) == ErrorKind::GridMismatch);
}
