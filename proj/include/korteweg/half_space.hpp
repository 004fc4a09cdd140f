#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "korteweg/core_model.hpp"
#include "korteweg/grids.hpp"
#include "korteweg/report.hpp"
#include "korteweg/symbols.hpp"

namespace korteweg {

// Exponential representation of one tangential mode:
//   rho = a1 e^{-t1 x} + a2 e^{-t2 x}
//   u_J = alpha_J e^{-w x} + beta_J (e^{-t1 x} - e^{-w x}) + gamma_J (e^{-t2 x} - e^{-w x})
struct ModeSolution {
  std::vector<double> xi;
  cplx omega, t1, t2;
  std::vector<cplx> alpha, beta, gamma;
  cplx rho_a1, rho_a2;

  cplx rho(double x) const;
  cplx u(int J, double x) const;
};

// Oracle path: 2x2 elimination of the Lopatinskii system.
ModeSolution coefficients_direct(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0,
                                 cplx h0, const Model& model);
// Explicit cofactor / determinant quotients.
ModeSolution coefficients_closed_form(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0,
                                      cplx h0, const Model& model);

// Kernel basis B = (e^{-t1 x}, e^{-w x}, M0, M1, M2). It is closed under d/dx_N,
// so every normal derivative stays a 5-vector of coefficients.
struct ModeBasis {
  cplx t1, t2, omega, r1, r2;
};
using Coef5 = std::array<cplx, 5>;

ModeBasis mode_basis(const RootSet& rs, const Model& model);
std::array<cplx, 5> basis_values(double x, const ModeBasis& b);
Coef5 normal_derivative(const Coef5& c, const ModeBasis& b);
cplx evaluate(const Coef5& c, const std::array<cplx, 5>& basis);

struct KernelModeForm {
  std::vector<double> xi;
  ModeBasis basis;
  Coef5 rho{};
  std::vector<Coef5> u;
};

// Production path: eliminated forms without explicit lambda^{-1} or (t2-t1)^{-1}.
KernelModeForm kernel_form(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0, cplx h0,
                           const Model& model);
KernelModeForm to_kernel_form(const ModeSolution& ms, const Model& model);

struct DerivOrder {
  std::array<int, 2> t{0, 0};  // tangential orders (x_1, x_2)
  int n = 0;                   // normal order
  int total() const { return t[0] + t[1] + n; }
};

// Multi-index over the N axes (x_1 .. x_N) as a DerivOrder.
DerivOrder deriv_from_axes(int N, std::initializer_list<int> axes);

// Half-space fields held per tangential mode in the kernel basis. Component
// 0 is rho, component J + 1 is u_J.
class ReducedSolution {
 public:
  ReducedSolution() = default;
  ReducedSolution(const TangentialGrid& tg, std::vector<double> xn, cplx lambda, int N);

  const TangentialGrid& tangential() const { return tg_; }
  const std::vector<double>& xn() const { return xn_; }
  HalfGrid grid() const { return HalfGrid{tg_, xn_}; }
  cplx lambda() const { return lambda_; }
  int dim() const { return N_; }
  std::size_t modes() const { return basis_.size(); }

  void set_mode(std::size_t mode, const KernelModeForm& form);
  const ModeBasis& basis(std::size_t mode) const { return basis_[mode]; }
  const Coef5& coef(int component, std::size_t mode) const { return coef_[component][mode]; }

  // Coefficients of D^order(component) for one mode.
  Coef5 derivative_coef(int component, std::size_t mode, const DerivOrder& order) const;
  // Samples on the half grid of a per-mode coefficient family.
  ScalarField synthesize(const std::vector<Coef5>& per_mode) const;
  // Tangential-grid samples at x_N = 0.
  ScalarField synthesize_trace(const std::vector<Coef5>& per_mode) const;
  ScalarField sample(int component, const DerivOrder& order) const;

  ReducedSolution resampled(std::vector<double> xn) const;
  // this += a * other (same grid and lambda required)
  void axpy(cplx a, const ReducedSolution& other);

 private:
  void rebuild_cache();

  TangentialGrid tg_;
  std::vector<double> xn_;
  cplx lambda_;
  int N_ = 2;
  std::vector<ModeBasis> basis_;
  std::vector<std::vector<Coef5>> coef_;
  std::vector<std::array<cplx, 5>> cache_;  // basis values, [mode * K + k]
};

// g: N tangential-grid fields, h: one tangential-grid field.
ReducedSolution solve_reduced(const std::vector<ScalarField>& g, const ScalarField& h, cplx lambda,
                              const TangentialGrid& tg, const std::vector<double>& xn, const Model& model);

ResidualReport residual_reduced(const ReducedSolution& sol, const std::vector<ScalarField>& g,
                                const ScalarField& h, const Model& model);

}  // namespace korteweg
