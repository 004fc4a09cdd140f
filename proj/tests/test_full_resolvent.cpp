#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "korteweg/full_resolvent.hpp"
#include "korteweg/verification.hpp"

using namespace korteweg;
using testing_util::kind_of;

namespace {

const FullGrid kGrid{TangentialGrid{1, 16, 2 * kPi}, 5.0, 64};

ScalarField ramp(const FullGrid& g) {
  ScalarField v(g.half_size());
  const auto xn = g.xn();
  for (std::size_t t = 0; t < g.tg.size(); ++t)
    for (std::size_t k = 0; k < xn.size(); ++k) v[t * xn.size() + k] = cplx(1.0 + xn[k], 0.1 * t);
  return v;
}

}  // namespace

TEST_CASE("extensions") {
  const ScalarField c(kGrid.half_size(), cplx(2.0, -1.0));
  const ScalarField e = extend_even(c, kGrid);
  CHECK(e.size() == kGrid.tg.size() * kGrid.MN);
  for (const cplx& v : e) CHECK(v == cplx(2.0, -1.0));

  const ScalarField r = ramp(kGrid);
  CHECK(restrict_to_half(extend_zero(r, kGrid), kGrid) == r);
  CHECK(restrict_to_half(extend_even(r, kGrid), kGrid) == r);

  // Even reflection mirrors values across x_N = 0.
  const ScalarField ev = extend_even(r, kGrid);
  const int K = kGrid.K();
  for (int j = 1; j < K; ++j) CHECK(ev[K + j] == ev[K - j]);
  CHECK(std::abs(ev[K] - ev[K - 1]) <= std::abs(ev[K + 1] - ev[K]) + 1e-14);

  CHECK(kind_of([&] { extend_even(ScalarField(3), kGrid); }) == ErrorKind::GridMismatch);
}

TEST_CASE("trace picks the boundary slice") {
  const ScalarField r = ramp(kGrid);
  const ScalarField t = trace(r, kGrid);
  CHECK(t.size() == kGrid.tg.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == cplx(1.0, 0.1 * i));
}

TEST_CASE("boundary correction with no interior data is the identity") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  FullData F = random_full_data(kGrid, 3);
  F.d = FullData::zero(kGrid).d;
  F.f = FullData::zero(kGrid).f;
  const BoxGrid box = kGrid.box();
  const ScalarField z(box.size(), 0.0);
  const WholeField whole = solve_whole(box, z, {z, z}, 2.0, m);
  const CorrectedBoundaryData c = correct_boundary_data(F, whole, m);
  for (int J = 0; J < 2; ++J) CHECK(c.g[J] == trace(F.g[J].v, kGrid));
  CHECK(c.h == trace(F.h.v, kGrid));
}

TEST_CASE("boundary correction is additive in the interior data") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const cplx lam(5.0, 2.0);
  const FullData A = random_full_data(kGrid, 1), B = random_full_data(kGrid, 2);
  FullData S = A;
  S.axpy(1.0, B);
  const BoxGrid box = kGrid.box();
  auto whole = [&](const FullData& F) {
    std::vector<ScalarField> f;
    for (const auto& c : F.f) f.push_back(extend_zero(c.v, kGrid));
    return solve_whole(box, extend_even(F.d.v, kGrid), f, lam, m);
  };
  const auto ca = correct_boundary_data(A, whole(A), m), cb = correct_boundary_data(B, whole(B), m),
             cs = correct_boundary_data(S, whole(S), m);
  for (std::size_t i = 0; i < cs.h.size(); ++i) CHECK(std::abs(cs.h[i] - ca.h[i] - cb.h[i]) < 1e-10);
}

TEST_CASE("zero data gives a zero solution") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const FullSolution s = solve_gamma_zero(FullData::zero(kGrid), 3.0, m);
  for (int c = 0; c < 3; ++c) CHECK(max_abs(s.sample(c)) == 0.0);
}

TEST_CASE("boundary-only data reduces exactly to the reduced solve") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  FullData F = random_full_data(kGrid, 8);
  F.d = FullData::zero(kGrid).d;
  F.f = FullData::zero(kGrid).f;
  const cplx lam(7.0, -3.0);
  const FullSolution s = solve_gamma_zero(F, lam, m);
  CHECK(s.whole_hat.empty());
  const ReducedSolution r = solve_reduced({trace(F.g[0].v, kGrid), trace(F.g[1].v, kGrid)}, trace(F.h.v, kGrid),
                                          lam, kGrid.tg, kGrid.xn(), m);
  for (int c = 0; c < 3; ++c) CHECK(s.sample(c) == r.sample(c, {}));
}

TEST_CASE("full pipeline residual") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  const FullData F = random_full_data(kGrid, 4);
  const cplx lam = std::polar(20.0, 0.5);
  CHECK(residual_full(solve_gamma_zero(F, lam, m), F, m).worst_relative() < 1e-8);
}

TEST_CASE("Neumann iteration") {
  const FullData F = random_full_data(kGrid, 5);
  SUBCASE("gamma zero is a single trivial step") {
    const Model m(MaterialParams{1, 1, 2, 0, 1});
    const GeneralSolution g = solve_general(F, 10.0, m);
    CHECK(g.state.k == 1);
    CHECK(g.state.converged);
    CHECK(g.solution.sample(0) == solve_gamma_zero(F, 10.0, m).sample(0));
  }
  SUBCASE("small gamma converges") {
    const Model m(MaterialParams{1, 1, 2, 0.1, 1});
    const GeneralSolution g = solve_general(F, 100.0, m);
    CHECK(g.state.converged);
    CHECK(residual_full(g.solution, F, m).worst_relative() < 1e-8);
  }
  SUBCASE("large gamma at small lambda diverges") {
    const Model m(MaterialParams{1, 1, 2, 1e3, 1});
    CHECK(kind_of([&] { solve_general(F, 1.0, m); }) == ErrorKind::NeumannDiverged);
  }
}

TEST_CASE("contraction probe") {
  const std::vector<cplx> lams{1.0, 10.0, 100.0, 1000.0, 10000.0};
  const Sector s{kPi / 4 + 0.1, 0.0};
  const auto a = contraction_probe(Model(MaterialParams{1, 1, 2, 0.1, 1}), s, lams, kGrid, 2);
  const auto b = contraction_probe(Model(MaterialParams{1, 1, 2, 0.2, 1}), s, lams, kGrid, 2);
  const auto z = contraction_probe(Model(MaterialParams{1, 1, 2, 0.0, 1}), s, lams, kGrid, 2);
  std::vector<double> mod, rat;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    CHECK(b[i].ratio == doctest::Approx(2.0 * a[i].ratio).epsilon(1e-12));
    CHECK(z[i].ratio == 0.0);
    mod.push_back(std::abs(lams[i]));
    rat.push_back(a[i].ratio);
  }
  CHECK(spearman(mod, rat) < -0.9);
  CHECK(kind_of([&] {
          contraction_probe(Model(MaterialParams{1, 1, 2, 0.1, 1}), s, {cplx(-1.0, 0.0)}, kGrid, 2);
        }) == ErrorKind::LambdaOutsideSector);
}

TEST_CASE("lambda0 selection meets its target") {
  const Model m(MaterialParams{1, 1, 2, 0.5, 1});
  const Lambda0Selection sel = select_lambda0(m, kGrid, 0.0, 3);
  CHECK(sel.ratio <= 0.45);
}

TEST_CASE("data norm is linear in scale") {
  const FullData F = random_full_data(kGrid, 6);
  FullData G = FullData::zero(kGrid);
  G.axpy(3.0, F);
  CHECK(data_norm(G, 4.0) == doctest::Approx(3.0 * data_norm(F, 4.0)));
}
