#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "korteweg/full_resolvent.hpp"

namespace korteweg {

// Closed-form candidate solution (rho*, u*).
struct ManufacturedPair {
  AtomField rho;
  std::vector<AtomField> u;
};

// Left-hand sides of the full system (including gamma) applied to a pair.
struct ManufacturedAtoms {
  AtomField d;
  std::vector<AtomField> f, g;
  AtomField h;
};

ManufacturedAtoms manufactured_atoms(const ManufacturedPair& star, cplx lambda, const Model& model);
FullData manufactured_data(const ManufacturedPair& star, const FullGrid& grid, cplx lambda, const Model& model);

// Exact solution of the homogeneous (gamma = 0) system for one tangential mode.
ManufacturedPair homogeneous_mode(const std::vector<double>& k, cplx lambda, const std::vector<cplx>& g0, cplx h0,
                                  const Model& model);
// Interior Gaussian bumps centred at H/2 plus a few homogeneous modes.
ManufacturedPair random_manufactured_pair(const FullGrid& grid, cplx lambda, const Model& model, std::uint64_t seed);

// || S - star || / || star || over rho and u on the half grid.
double relative_error(const FullSolution& S, const ManufacturedPair& star);

// Random pair with Fourier support |k_a| <= kmax (lattice units) and its data.
struct WholeManufactured {
  WholeField star;
  WholeData data;
};
WholeManufactured random_whole_pair(const BoxGrid& grid, cplx lambda, const Model& model, std::uint64_t seed,
                                    int kmax = 8);

struct BoundaryData {
  std::vector<ScalarField> g;
  ScalarField h;
};
// Band-limited random traces on the tangential grid.
BoundaryData random_boundary_data(const TangentialGrid& tg, std::uint64_t seed, int kmax = 16);

// Rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Rademacher averages with p = 2. Vectors must already carry the quadrature
// weights, so the Euclidean norm is the discrete field norm.
enum class RademacherMode { Exact, MonteCarlo };

double rademacher_mean_square(const std::vector<std::vector<cplx>>& v, RademacherMode mode,
                              std::size_t draws = 10000, std::uint64_t seed = 1);
// sqrt(E||sum r_j T_j f_j||^2 / E||sum r_j f_j||^2)
double rademacher_ratio(const std::vector<std::vector<cplx>>& Tf, const std::vector<std::vector<cplx>>& f,
                        RademacherMode mode, std::size_t draws = 10000, std::uint64_t seed = 1);

using LambdaOperator = std::function<std::vector<cplx>(cplx)>;
// lambda d/dlambda op, central differences along lambda/|lambda| with one
// Richardson step.
std::vector<cplx> lambda_derivative_family(const LambdaOperator& op, cplx lambda, const Sector& sector,
                                           double rel_step = 1e-5);

enum class RFamily { SA, TB };
std::string family_id(RFamily f, int n);

// Weighted, flattened output blocks: S_lambda rho = (grad^3 rho,
// lambda^{1/2} grad^2 rho, lambda rho, grad lambda rho) or T_lambda u =
// (grad^2 u, lambda^{1/2} grad u, lambda u).
std::vector<cplx> family_blocks(const FullSolution& S, RFamily f);
std::vector<cplx> data_vector(const FullData& F, cplx lambda);

struct RBoundOptions {
  FullGrid grid{TangentialGrid{1, 16, 2.0 * kPi}, 4.0, 32};
  Sector sector{1.2, 0.5};
  double lambda_max = 100.0;
  int m_max = 8;
  int trials = 200;
  std::uint64_t seed = 20240601;
  double rel_step = 1e-5;
  // Use the Neumann-series solver (gamma from the model) instead of the
  // gamma = 0 solution operator.
  bool general = false;
};

struct RBoundEstimate {
  std::string family_id;
  RFamily family = RFamily::TB;
  int n = 0;
  int p = 2;
  int m_max = 0;
  int trials = 0;
  double estimated_bound = 0.0;
  std::vector<double> trial_ratios;  // per trial: max over nonempty subsets of the m_max draws
  std::string sector;

  // Estimate from the first `t` trials.
  double bound_after(int t) const;
};

// All requested (family, n) estimates from one set of draws.
std::vector<RBoundEstimate> estimate_rbounds(const std::vector<std::pair<RFamily, int>>& families,
                                             const RBoundOptions& opt, const Model& model);
RBoundEstimate estimate_rbound(RFamily family, int n, const RBoundOptions& opt, const Model& model);

}  // namespace korteweg
