#include "korteweg/core_model.hpp"

#include <cmath>
#include <sstream>

namespace korteweg {

namespace {
constexpr double kZeroTol = 1e-13;
}

std::vector<ErrorKind> Verdict::failures() const {
  std::vector<ErrorKind> out;
  if (non_positive) out.push_back(ErrorKind::NonPositiveCoefficient);
  if (eta_vanishes) out.push_back(ErrorKind::EtaVanishes);
  if (kappa_equals_mu_nu) out.push_back(ErrorKind::KappaEqualsMuNu);
  return out;
}

std::string Verdict::message() const {
  if (ok()) return "OK";
  std::ostringstream os;
  bool first = true;
  for (ErrorKind k : failures()) {
    if (!first) os << ", ";
    os << to_string(k);
    first = false;
  }
  if (non_positive) os << " (mu, nu, kappa and rho_ref must be positive)";
  if (eta_vanishes) os << " (eta_w = ((mu+nu)/(2 kappa))^2 - 1/kappa must be nonzero)";
  if (kappa_equals_mu_nu) os << " (kappa must differ from mu*nu)";
  return os.str();
}

Verdict validate(const MaterialParams& p) {
  Verdict v;
  auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!finite_pos(p.mu) || !finite_pos(p.nu) || !finite_pos(p.kappa) || !finite_pos(p.rho_ref) ||
      !std::isfinite(p.gamma)) {
    v.non_positive = true;
    return v;
  }
  const double a = (p.mu + p.nu) / (2.0 * p.kappa);
  const double eta = a * a - 1.0 / p.kappa;
  const double eta_scale = (p.mu + p.nu) * (p.mu + p.nu) / (p.kappa * p.kappa);
  v.eta_vanishes = std::abs(eta) <= kZeroTol * eta_scale;
  v.kappa_equals_mu_nu = std::abs(p.kappa - p.mu * p.nu) <= kZeroTol * p.mu * p.nu;
  return v;
}

DerivedConstants derive_constants(const MaterialParams& p) {
  const Verdict v = validate(p);
  if (!v.ok()) throw Error(v.failures().front(), v.message());
  DerivedConstants dc;
  const double a = (p.mu + p.nu) / (2.0 * p.kappa);
  dc.eta_w = a * a - 1.0 / p.kappa;
  if (dc.eta_w > 0.0) {
    const double r = std::sqrt(dc.eta_w);
    dc.s1 = a + r;
    // a - r suffers cancellation when r ~ a; use the product s1*s2 = 1/kappa.
    dc.s2 = 1.0 / (p.kappa * (a + r));
    dc.sigma_w = 0.0;
  } else {
    const double r = std::sqrt(-dc.eta_w);
    dc.s1 = cplx(a, r);
    dc.s2 = cplx(a, -r);
    dc.sigma_w = std::atan2(r, a);
  }
  return dc;
}

bool Sector::contains(cplx lambda) const {
  return std::abs(lambda) > delta && std::abs(std::arg(lambda)) < kPi - sigma;
}

bool sector_contains(const Sector& sector, cplx lambda) { return sector.contains(lambda); }

MaterialParams rescale(const MaterialParams& phys) {
  if (!(phys.rho_ref > 0.0)) throw Error(ErrorKind::NonPositiveCoefficient, "rho_ref must be positive");
  MaterialParams r = phys;
  r.mu = phys.mu / phys.rho_ref;
  r.nu = phys.nu / phys.rho_ref;
  r.kappa = phys.kappa * phys.rho_ref;
  r.rho_ref = 1.0;
  return r;
}

bool Model::admissible_lambda(cplx lambda) const {
  return std::abs(lambda) > 0.0 && std::abs(std::arg(lambda)) < kPi - dc.sigma_w;
}

void Model::require_admissible(cplx lambda) const {
  if (!admissible_lambda(lambda)) {
    std::ostringstream os;
    os << "lambda = " << lambda << " must satisfy lambda != 0 and |arg lambda| < pi - sigma_w = "
       << kPi - dc.sigma_w;
    throw Error(ErrorKind::LambdaOutsideSector, os.str());
  }
}

}  // namespace korteweg
