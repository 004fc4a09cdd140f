#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "korteweg/core_model.hpp"

using namespace korteweg;
using testing_util::kind_of;

TEST_CASE("validate accepts an admissible parameter set") {
  const Verdict v = validate(MaterialParams{1, 1, 2, 0, 1});
  CHECK(v.ok());
  CHECK(v.failures().empty());
}

TEST_CASE("validate reports every degeneracy") {
  const Verdict v = validate(MaterialParams{1, 1, 1, 0, 1});
  CHECK_FALSE(v.ok());
  CHECK(v.eta_vanishes);
  CHECK(v.kappa_equals_mu_nu);
  const auto f = v.failures();
  CHECK(std::find(f.begin(), f.end(), ErrorKind::EtaVanishes) != f.end());
  CHECK(std::find(f.begin(), f.end(), ErrorKind::KappaEqualsMuNu) != f.end());
  CHECK(v.message().find("EtaVanishes") != std::string::npos);
}

TEST_CASE("negative viscosity is rejected") {
  CHECK(validate(MaterialParams{-1, 1, 1, 0, 1}).non_positive);
  CHECK(kind_of([] { derive_constants(MaterialParams{-1, 1, 1, 0, 1}); }) == ErrorKind::NonPositiveCoefficient);
}

TEST_CASE("derived constants for (1,1,2)") {
  const DerivedConstants dc = derive_constants(MaterialParams{1, 1, 2, 0, 1});
  CHECK(dc.eta_w == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(dc.sigma_w == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(std::abs(dc.s1 - cplx(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(dc.s2 - cplx(0.5, -0.5)) < 1e-15);
}

TEST_CASE("derived constants for (1,2,1)") {
  const DerivedConstants dc = derive_constants(MaterialParams{1, 2, 1, 0, 1});
  CHECK(dc.eta_w == doctest::Approx(1.25));
  CHECK(dc.sigma_w == 0.0);
  CHECK(dc.s1.real() == doctest::Approx(2.6180340).epsilon(1e-7));
  CHECK(dc.s2.real() == doctest::Approx(0.3819660).epsilon(1e-6));
  CHECK(std::abs(dc.s1 * dc.s2 - 1.0) < 1e-14);
}

TEST_CASE("Vieta identities hold across parameter sets") {
  for (auto p : {MaterialParams{1, 1, 2}, MaterialParams{0.5, 3, 1}, MaterialParams{2, 2, 5}, MaterialParams{3, 0.2, 7}}) {
    const DerivedConstants dc = derive_constants(p);
    CHECK(std::abs(dc.s1 + dc.s2 - (p.mu + p.nu) / p.kappa) < 1e-13);
    CHECK(std::abs(dc.s1 * dc.s2 - 1.0 / p.kappa) < 1e-13);
  }
}

TEST_CASE("sector membership") {
  const Sector s{kPi / 4, 0.5};
  CHECK(s.contains(1.0));
  CHECK_FALSE(s.contains(-1.0));
  CHECK_FALSE(s.contains(cplx(0.0, 0.4)));
  CHECK(sector_contains(s, cplx(0.0, 2.0)));
}

TEST_CASE("rescaling by the reference density") {
  const MaterialParams r = rescale(MaterialParams{2, 4, 3, 0, 2});
  CHECK(r.mu == doctest::Approx(1.0));
  CHECK(r.nu == doctest::Approx(2.0));
  CHECK(r.kappa == doctest::Approx(6.0));
  CHECK(r.rho_ref == 1.0);
}

TEST_CASE("admissible lambda excludes the cut") {
  const Model m(MaterialParams{1, 1, 2, 0, 1});
  CHECK(m.admissible_lambda(cplx(1.0, 0.0)));
  CHECK_FALSE(m.admissible_lambda(0.0));
  CHECK_FALSE(m.admissible_lambda(std::polar(1.0, 0.8 * kPi)));
}
