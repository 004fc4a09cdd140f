#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "korteweg/fields.hpp"
#include "korteweg/whole_space.hpp"

namespace korteweg {

// Data (d, f, g, h) on the half grid of a FullGrid. d and g carry first
// derivatives, h first and second; the boundary conditions use the x_N = 0
// traces of g and h.
struct FullData {
  FullGrid grid;
  SampledField d;
  std::vector<SampledField> f, g;
  SampledField h;

  static FullData zero(const FullGrid& grid);
  FullData& axpy(cplx a, const FullData& o);
  bool interior_zero() const;
  void check() const;
};

// Derivatives of raw samples are taken with derivative_samples.
FullData make_full_data(const FullGrid& grid, ScalarField d, std::vector<ScalarField> f, std::vector<ScalarField> g,
                        ScalarField h);

// Blocks of F_lambda F = (d, grad d, f, grad g, lambda^{1/2} g, grad^2 h,
// lambda^{1/2} grad h, lambda h).
std::vector<ScalarField> data_blocks(const FullData& F, cplx lambda);
double data_norm(const FullData& F, cplx lambda);

ScalarField extend_even(const ScalarField& half, const FullGrid& g);
ScalarField extend_zero(const ScalarField& half, const FullGrid& g);
ScalarField restrict_to_half(const ScalarField& box, const FullGrid& g);
// Tangential slice at x_N = 0 of a half-grid field.
ScalarField trace(const ScalarField& half, const FullGrid& g);

struct CorrectedBoundaryData {
  std::vector<ScalarField> g;
  ScalarField h;
};

// Subtracts the stress and Neumann traces of the whole-space solution from
// the traces of (g, h).
CorrectedBoundaryData correct_boundary_data(const FullData& F, const WholeField& whole, const Model& model);

// Whole-space part (transforms on the box, empty when zero) plus the
// half-space corrector. Component 0 is rho, J + 1 is u_J.
struct FullSolution {
  FullGrid grid;
  cplx lambda;
  std::vector<ScalarField> whole_hat;
  ReducedSolution reduced;

  ScalarField sample(int component, const DerivOrder& order = {}) const;
};

// gamma is ignored here; the pressure term is handled by solve_general.
FullSolution solve_gamma_zero(const FullData& F, cplx lambda, const Model& model);

// (0, -gamma grad rho, -gamma rho e_N, 0) evaluated on a solution.
FullData neumann_map(const FullSolution& S, double gamma);

struct NeumannState {
  int k = 0;
  FullData current;
  double increment_norm = 0.0;
  std::vector<double> increments;
  std::vector<double> ratios;
  bool converged = false;
};

struct GeneralSolution {
  FullSolution solution;
  NeumannState state;
};

// F^{(k+1)} = F + G(lambda) F^{(k)}, G = neumann_map o solve_gamma_zero.
GeneralSolution solve_general(const FullData& F, cplx lambda, const Model& model, int max_iter = 64,
                              double tol = 1e-10, const std::optional<FullData>& initial = std::nullopt);

// Rows mass, momentum (half grid) and stress, neumann (x_N = 0) of the
// full system including the gamma terms.
ResidualReport residual_full(const FullSolution& S, const FullData& F, const Model& model);

// Random band-limited data; the grid must have H large enough for the
// interior bumps to be negligible at x_N = H.
FullData random_full_data(const FullGrid& grid, std::uint64_t seed, int modes = 3);

// ||G(lambda) F|| / ||F|| in the lambda-weighted data norm.
double contraction_ratio(const FullData& F, cplx lambda, const Model& model);

struct ProbeRow {
  cplx lambda;
  double ratio;
};
std::vector<ProbeRow> contraction_probe(const Model& model, const Sector& sector, const std::vector<cplx>& lambdas,
                                        const FullGrid& grid, std::uint64_t seed);

struct Lambda0Selection {
  cplx lambda;
  int doublings = 0;
  double ratio = 0.0;
};
// |lambda| starts at `start` and doubles until the one-step ratio is <= target.
Lambda0Selection select_lambda0(const Model& model, const FullGrid& grid, double angle, std::uint64_t seed,
                                double target = 0.45, double start = 0.5, int max_doublings = 40);

}  // namespace korteweg
