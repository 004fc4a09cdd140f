#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "korteweg/core_model.hpp"

namespace korteweg {

struct RootSet {
  cplx omega;
  cplx t1;
  cplx t2;
  cplx t(int j) const { return j == 1 ? t1 : t2; }
};

// Principal square root of xi2 + lambda/mu. Throws BranchCutHit when the
// radicand lies on (-inf, 0].
cplx omega_lambda(double xi_prime_sq, cplx lambda, double mu);
std::pair<cplx, cplx> roots_t(double xi_prime_sq, cplx lambda, const DerivedConstants& dc);
RootSet roots(double xi_prime_sq, cplx lambda, const Model& model);
// t2 - t1 as (s2 - s1) lambda / (t1 + t2), free of cancellation when
// |lambda| << |xi'|^2.
cplx root_gap(const RootSet& rs, cplx lambda, const DerivedConstants& dc);

cplx whole_space_symbol_P(double xi_sq, cplx lambda, const MaterialParams& params);
// lambda_+ and lambda_- with P(xi, lambda) = (lambda - lambda_+)(lambda - lambda_-).
std::pair<cplx, cplx> whole_space_lambda_roots(double xi_sq, const Model& model);
// P_lambda(t) = lambda^2 - lambda (mu+nu)(t^2-|xi'|^2) + kappa (t^2-|xi'|^2)^2.
cplx normal_polynomial(cplx t, double xi_prime_sq, cplx lambda, const MaterialParams& params);

struct Lopatinskii {
  std::array<std::array<cplx, 2>, 2> L;
  cplx L11, L12, L21, L22;  // cofactors: inverse = [[L11, L12], [L21, L22]] / det
  cplx det_direct;    // L00 L11 - L01 L10
  cplx det_factored;  // lambda (t2 - t1) l1 / (t1 (t1 + omega))
  RootSet roots;
};

Lopatinskii lopatinskii(double xi_prime_sq, cplx lambda, const Model& model);

// Eliminated (lambda- and (t2-t1)-free) symbol forms; index 0 <-> j = 1.
struct FrakSymbols {
  std::array<cplx, 2> m, p, q, l, r;
  cplx a, b;
};

FrakSymbols frak_symbols(double xi_prime_sq, cplx lambda, const Model& model);
FrakSymbols frak_symbols(double xi_prime_sq, cplx lambda, const RootSet& rs, const Model& model);

// Raw quotient definitions, only for cross-checking the eliminated forms.
struct QuotientForms {
  std::array<cplx, 2> m, p, q, l;
};
QuotientForms quotient_forms(double xi_prime_sq, cplx lambda, const Model& model);

// min_j |l_j| / (|lambda|^{1/2} + |xi'|)^6.
double lopatinskii_scaled(const FrakSymbols& fs, double xi_prime_sq, cplx lambda);

// Kernels M0, M1, M2 ---------------------------------------------------------

inline constexpr double kSwitchEps = 1e-4;

cplx expm1c(cplx z);
// (e^{-b x} - e^{-a x}) / (b - a), direct and integral-form evaluations.
cplx divided_exp_direct(cplx a, cplx b, double x);
cplx divided_exp_quadrature(cplx a, cplx b, double x);
// Switches to quadrature when |b - a| <= eps (|a| + |b|).
cplx divided_exp(cplx a, cplx b, double x, double eps = kSwitchEps);

cplx frak_r(int j, const RootSet& rs, const Model& model);
cplx kernel_M(int j, double xN, const RootSet& rs, const Model& model, double eps = kSwitchEps);
cplx kernel_M_derivative(int j, double xN, const RootSet& rs, const Model& model);

const std::array<double, 16>& gauss_legendre_nodes();
const std::array<double, 16>& gauss_legendre_weights();

// Lower-bound scans ------------------------------------------------------------

enum class ScanTarget { P, L1, L2, ReOmega, ReT1, ReT2, DetL };
const char* to_string(ScanTarget t);
ScanTarget scan_target_from_string(const std::string& s);
int homogeneity_power(ScanTarget t);

struct ScanGrid {
  int n_lambda = 40;
  int n_angle = 9;
  int n_xi = 40;
  double lambda_max = 1e6;
  double lambda_floor = 1e-6;  // used as the lower |lambda| end when delta is 0
  double xi_min = 1e-3;
  double xi_max = 1e3;
  // Lowest grid nodes used as starts for the local polish (0 disables it).
  int polish_seeds = 8;

  // Nested refinement: halves every spacing, keeping the original nodes.
  ScanGrid refined() const;
  std::vector<double> lambda_moduli(double delta) const;
  std::vector<double> angles(double sigma) const;
  std::vector<double> xi_moduli() const;
};

struct ScanResult {
  ScanTarget target = ScanTarget::P;
  Sector sector;
  ScanGrid grid;
  double C = 0.0;       // polished infimum
  double grid_C = 0.0;  // minimum over the grid nodes alone
  double argmin_xi = 0.0;
  cplx argmin_lambda;
  std::size_t points = 0;
};

// Scaled ratio of the target at one point (no infimum).
double scan_ratio(ScanTarget target, double xi, cplx lambda, const Model& model);
ScanResult scan_lower_bound(ScanTarget target, const Sector& sector, const ScanGrid& grid,
                            const Model& model);

struct SigmaStar {
  double sigma_star = 0.0;
  double reference_C = 0.0;  // infimum at sigma close to pi/2
  double threshold = 0.0;
  int bisection_steps = 0;
};

// Smallest sigma in (sigma_w, pi/2) at which min(C_l1, C_l2) reaches
// zero_tol * reference_C, located by bisection.
SigmaStar empirical_sigma_star(const Model& model, const ScanGrid& grid, double zero_tol = 1e-3,
                               double sigma_tol = 1e-4);

// Multiplier certification ------------------------------------------------------

using Symbol = std::function<cplx(const std::vector<double>& xi_prime, cplx lambda)>;

struct Certificate {
  std::string symbol_id;
  double claimed_order = 0.0;
  int claimed_type = 1;
  Sector sector;
  ScanGrid grid;
  int dim_tangential = 1;
  double estimated_constant = 0.0;
  int max_alpha = 2;
  bool finite() const;
};

Certificate certify_multiplier(const std::string& symbol_id, const Symbol& symbol, double order,
                               int type, const Sector& sector, const ScanGrid& grid,
                               int dim_tangential = 1, int max_alpha = 2, double step_scale = 1e-4);

struct MultiplierEntry {
  std::string id;
  Symbol symbol;
  double order;
  int type;
};

// Symbols whose multiplier class membership is certified by the harness.
std::vector<MultiplierEntry> multiplier_catalog(const Model& model);

}  // namespace korteweg
