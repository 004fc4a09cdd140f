#pragma once

#include <vector>

#include "korteweg/core_model.hpp"
#include "korteweg/grids.hpp"
#include "korteweg/report.hpp"

namespace korteweg {

struct WholeField {
  BoxGrid grid;
  ScalarField rho;
  std::vector<ScalarField> u;  // N components
};

// Per-mode multipliers: (rho_hat, u_hat) from (d_hat, f_hat) at wavevector xi.
void whole_space_multipliers(const double* xi, int dim, cplx lambda, const MaterialParams& p, cplx d_hat,
                             const cplx* f_hat, cplx& rho_hat, cplx* u_hat);

WholeField solve_whole(const BoxGrid& grid, const ScalarField& d, const std::vector<ScalarField>& f,
                       cplx lambda, const Model& model);

struct WholeData {
  ScalarField d;
  std::vector<ScalarField> f;
};

// Left-hand side (lambda rho + div u, lambda u - mu Lap u - nu grad div u
// - kappa grad Lap rho) applied spectrally.
WholeData apply_whole_operator(const WholeField& sol, cplx lambda, const Model& model);

ResidualReport residual_whole(const WholeField& sol, const ScalarField& d, const std::vector<ScalarField>& f,
                              cplx lambda, const Model& model);

// Physical-space samples of the alpha-derivative of a field given by its
// forward transform.
ScalarField spectral_derivative(const ScalarField& hat, const BoxGrid& grid, const std::vector<int>& alpha);

struct DerivativeFamilies {
  // S_lambda rho = (grad^3 rho, lambda^{1/2} grad^2 rho, lambda rho); the last
  // block lives in W^1, so its gradient is carried too.
  std::vector<ScalarField> grad3_rho;
  std::vector<ScalarField> lam_half_grad2_rho;
  ScalarField lam_rho;
  std::vector<ScalarField> grad_lam_rho;
  // T_lambda u = (grad^2 u, lambda^{1/2} grad u, lambda u)
  std::vector<ScalarField> grad2_u;
  std::vector<ScalarField> lam_half_grad_u;
  std::vector<ScalarField> lam_u;
};

DerivativeFamilies derivative_families(const WholeField& sol, cplx lambda);

}  // namespace korteweg
