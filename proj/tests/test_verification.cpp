#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "korteweg/verification.hpp"

using namespace korteweg;
using testing_util::kind_of;
using testing_util::rel;

namespace {

std::vector<std::vector<cplx>> random_vectors(int m, int len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<std::vector<cplx>> v(m, std::vector<cplx>(len));
  for (auto& x : v)
    for (auto& y : x) y = {n(rng), n(rng)};
  return v;
}

}  // namespace

TEST_CASE("zero pair gives zero data") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const FullGrid g{TangentialGrid{1, 8, 2 * kPi}, 4.0, 32};
  ManufacturedPair star;
  star.u.resize(2);
  const FullData F = manufactured_data(star, g, 2.0, m);
  CHECK(max_abs(F.d.v) == 0.0);
  CHECK(max_abs(F.f[1].v) == 0.0);
  CHECK(max_abs(F.g[0].v) == 0.0);
  CHECK(max_abs(F.h.v) == 0.0);
}

TEST_CASE("homogeneous mode has three exponential channels and no interior data") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const cplx lam(3.0, 1.0);
  const ManufacturedPair p = homogeneous_mode({2.0}, lam, {cplx(1.0), cplx(0.5, 0.5)}, cplx(-1.0), m);
  std::set<std::pair<double, double>> rates;
  auto collect = [&](const AtomField& f) {
    for (const Atom& a : f.atoms) rates.insert({a.profile.z.real(), a.profile.z.imag()});
  };
  collect(p.rho);
  for (const auto& u : p.u) collect(u);
  CHECK(rates.size() == 3);

  const FullGrid g{TangentialGrid{1, 8, 2 * kPi}, 10.0, 128};
  const FullData F = manufactured_data(p, g, lam, m);
  CHECK(max_abs(F.d.v) < 1e-12 * max_abs(F.g[1].v));
  CHECK(max_abs(F.f[0].v) < 1e-12 * max_abs(F.g[1].v));
}

TEST_CASE("manufactured data are recovered by the general solver") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const FullGrid g{TangentialGrid{1, 32, 2 * kPi}, 20.0, 256};
  const cplx lam = std::polar(30.0, -0.6);
  const ManufacturedPair star = random_manufactured_pair(g, lam, m, 21);
  const FullData F = manufactured_data(star, g, lam, m);
  CHECK(relative_error(solve_general(F, lam, m).solution, star) < 1e-8);
}

TEST_CASE("manufactured data with pressure are recovered") {
  const Model m(MaterialParams{1, 1, 2, 0.1, 1});
  const FullGrid g{TangentialGrid{1, 32, 2 * kPi}, 20.0, 256};
  const cplx lam = std::polar(30.0, 0.2);
  const ManufacturedPair star = random_manufactured_pair(g, lam, m, 22);
  const FullData F = manufactured_data(star, g, lam, m);
  CHECK(relative_error(solve_general(F, lam, m).solution, star) < 1e-8);
}

TEST_CASE("Rademacher averages") {
  SUBCASE("orthogonal vectors give the sum of squares") {
    std::vector<std::vector<cplx>> v(4, std::vector<cplx>(4));
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      v[j][j] = cplx(j + 1.0, -0.5);
      sum += std::norm(v[j][j]);
    }
    CHECK(std::abs(rademacher_mean_square(v, RademacherMode::Exact) - sum) <= 1e-12 * sum);
  }
  SUBCASE("single operator sample") {
    const auto f = random_vectors(1, 10, 1), Tf = random_vectors(1, 10, 2);
    double nf = 0.0, nt = 0.0;
    for (int i = 0; i < 10; ++i) {
      nf += std::norm(f[0][i]);
      nt += std::norm(Tf[0][i]);
    }
    CHECK(rademacher_ratio(Tf, f, RademacherMode::Exact) == doctest::Approx(std::sqrt(nt / nf)).epsilon(1e-14));
  }
  SUBCASE("Monte Carlo agrees with enumeration") {
    const auto v = random_vectors(6, 30, 3);
    const double ex = rademacher_mean_square(v, RademacherMode::Exact);
    const double mc = rademacher_mean_square(v, RademacherMode::MonteCarlo, 10000, 4);
    CHECK(std::abs(mc - ex) <= 0.02 * ex);
  }
  SUBCASE("ratio is scale invariant") {
    auto f = random_vectors(3, 8, 5);
    const auto Tf = random_vectors(3, 8, 6);
    const double r = rademacher_ratio(Tf, f, RademacherMode::Exact);
    auto Tf10 = Tf;
    for (auto& x : f)
      for (auto& y : x) y *= 10.0;
    for (auto& x : Tf10)
      for (auto& y : x) y *= 10.0;
    CHECK(rademacher_ratio(Tf10, f, RademacherMode::Exact) == doctest::Approx(r).epsilon(1e-13));
  }
  SUBCASE("vanishing inputs") {
    const std::vector<std::vector<cplx>> z(2, std::vector<cplx>(3, 0.0));
    CHECK(kind_of([&] { rademacher_ratio(z, z, RademacherMode::Exact); }) == ErrorKind::ZeroDenominator);
  }
}

TEST_CASE("lambda derivative family") {
  const Sector s{1.2, 0.5};
  const cplx lam = std::polar(3.0, 0.7);
  const std::vector<cplx> field{cplx(1.0, 2.0), cplx(-0.5, 0.1)};
  const LambdaOperator linear = [&](cplx l) {
    std::vector<cplx> out = field;
    for (auto& v : out) v *= l;
    return out;
  };
  const auto d1 = lambda_derivative_family(linear, lam, s);
  for (std::size_t i = 0; i < field.size(); ++i) CHECK(rel(d1[i], lam * field[i]) < 1e-10);

  const LambdaOperator square = [](cplx l) { return std::vector<cplx>{l * l}; };
  CHECK(rel(lambda_derivative_family(square, lam, s)[0], 2.0 * lam * lam) < 1e-9);

  const LambdaOperator smooth = [](cplx l) { return std::vector<cplx>{1.0 / (l + 2.0), std::sqrt(l)}; };
  const auto a = lambda_derivative_family(smooth, lam, s, 1e-5), b = lambda_derivative_family(smooth, lam, s, 1e-6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(rel(a[i], b[i]) < 1e-7);

  CHECK(kind_of([&] { lambda_derivative_family(square, cplx(0.5 + 1e-9, 0.0), s); }) ==
        ErrorKind::StepOutsideSector);
}

TEST_CASE("R-bound estimates") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  RBoundOptions o;
  o.grid = FullGrid{TangentialGrid{1, 8, 2 * kPi}, 4.0, 32};
  o.trials = 6;
  o.m_max = 4;
  const RBoundEstimate full = estimate_rbound(RFamily::TB, 0, o, m);
  CHECK(std::isfinite(full.estimated_bound));
  CHECK(full.bound_after(full.trials) == full.estimated_bound);
  CHECK(full.family_id == family_id(RFamily::TB, 0));

  RBoundOptions single = o;
  single.m_max = 1;
  CHECK(estimate_rbound(RFamily::TB, 0, single, m).estimated_bound <= full.estimated_bound * (1 + 1e-12));

  // Same draws give the same estimate.
  CHECK(estimate_rbound(RFamily::TB, 0, o, m).trial_ratios == full.trial_ratios);
}

TEST_CASE("pressure-perturbed R-bound stays within the expected factor") {
  const Model m0(MaterialParams{1, 1, 2, 0, 1});
  const Model mg(MaterialParams{1, 1, 2, 0.05, 1});
  RBoundOptions o;
  o.grid = FullGrid{TangentialGrid{1, 8, 2 * kPi}, 4.0, 32};
  o.sector = Sector{1.2, 10.0};
  o.trials = 4;
  o.m_max = 3;
  const double base = estimate_rbound(RFamily::SA, 0, o, m0).estimated_bound;
  o.general = true;
  const double pert = estimate_rbound(RFamily::SA, 0, o, mg).estimated_bound;
  CHECK(pert <= 4.0 * base * 1.5);
}

TEST_CASE("spearman ranks") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
}
