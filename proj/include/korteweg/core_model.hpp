#pragma once

#include <string>
#include <vector>

#include "korteweg/types.hpp"

namespace korteweg {

struct MaterialParams {
  double mu = 1.0;
  double nu = 1.0;
  double kappa = 2.0;
  double gamma = 0.0;
  double rho_ref = 1.0;
};

struct DerivedConstants {
  double eta_w = 0.0;
  double sigma_w = 0.0;
  cplx s1;  // plus branch
  cplx s2;  // minus branch
};

struct Verdict {
  bool non_positive = false;
  bool eta_vanishes = false;
  bool kappa_equals_mu_nu = false;

  bool ok() const { return !non_positive && !eta_vanishes && !kappa_equals_mu_nu; }
  std::vector<ErrorKind> failures() const;
  std::string message() const;
};

Verdict validate(const MaterialParams& params);

// Throws Error with the first failing kind when params are not admissible.
DerivedConstants derive_constants(const MaterialParams& params);

struct Sector {
  double sigma = kPi / 4;
  double delta = 0.0;
  bool contains(cplx lambda) const;
};

bool sector_contains(const Sector& sector, cplx lambda);

// Physical coefficients to those of the rescaled system:
// mu -> mu/rho, nu -> nu/rho, kappa -> kappa*rho, rho_ref -> 1.
MaterialParams rescale(const MaterialParams& physical);

// Validated parameters bundled with their derived constants.
struct Model {
  MaterialParams params;
  DerivedConstants dc;

  explicit Model(const MaterialParams& p) : params(p), dc(derive_constants(p)) {}

  double mu() const { return params.mu; }
  double nu() const { return params.nu; }
  double kappa() const { return params.kappa; }
  double gamma() const { return params.gamma; }
  cplx s(int j) const { return j == 1 ? dc.s1 : dc.s2; }

  // lambda != 0 and |arg lambda| < pi - sigma_w: the largest region on which
  // the whole-space and half-space symbols are evaluated.
  bool admissible_lambda(cplx lambda) const;
  void require_admissible(cplx lambda) const;
};

}  // namespace korteweg
