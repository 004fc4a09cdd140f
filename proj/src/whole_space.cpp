#include "korteweg/whole_space.hpp"

#include <cmath>

namespace korteweg {

namespace {

void check_data(const BoxGrid& grid, const ScalarField& d, const std::vector<ScalarField>& f) {
  grid.check();
  if (d.size() != grid.size() || static_cast<int>(f.size()) != grid.dim)
    throw Error(ErrorKind::GridMismatch, "whole-space data does not match the box grid");
  for (const auto& c : f)
    if (c.size() != grid.size()) throw Error(ErrorKind::GridMismatch, "whole-space data does not match the box grid");
}

// Calls fn(flat, xi) for every box mode.
template <class Fn>
void for_each_mode(const BoxGrid& grid, Fn&& fn) {
  std::vector<std::vector<double>> k(grid.dim);
  for (int a = 0; a < grid.dim; ++a) k[a] = lattice(grid.counts[a], grid.lengths[a]);
  std::vector<int> idx(grid.dim, 0);
  std::vector<double> xi(grid.dim);
  const std::size_t n = grid.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    for (int a = 0; a < grid.dim; ++a) xi[a] = k[a][idx[a]];
    fn(flat, xi.data());
    for (int a = grid.dim - 1; a >= 0; --a) {
      if (++idx[a] < grid.counts[a]) break;
      idx[a] = 0;
    }
  }
}

ScalarField transformed(ScalarField v, const BoxGrid& g) {
  fft_forward(v, g.counts);
  return v;
}

}  // namespace

void whole_space_multipliers(const double* xi, int dim, cplx lambda, const MaterialParams& p, cplx d_hat,
                             const cplx* f_hat, cplx& rho_hat, cplx* u_hat) {
  double xi2 = 0.0;
  cplx xi_dot_f = 0.0;
  for (int a = 0; a < dim; ++a) {
    xi2 += xi[a] * xi[a];
    xi_dot_f += xi[a] * f_hat[a];
  }
  const cplx I(0.0, 1.0);
  const cplx P = lambda * lambda + (p.mu + p.nu) * lambda * xi2 + p.kappa * xi2 * xi2;
  const cplx lame = lambda + p.mu * xi2;
  rho_hat = (lambda + (p.mu + p.nu) * xi2) / P * d_hat - I * xi_dot_f / P;
  const cplx c = (p.nu * lambda + p.kappa * xi2) / P;
  for (int a = 0; a < dim; ++a) {
    u_hat[a] = -p.kappa * I * xi[a] * xi2 * d_hat / P + (f_hat[a] - xi[a] * xi_dot_f * c) / lame;
  }
}

WholeField solve_whole(const BoxGrid& grid, const ScalarField& d, const std::vector<ScalarField>& f,
                       cplx lambda, const Model& model) {
  check_data(grid, d, f);
  model.require_admissible(lambda);
  const int N = grid.dim;
  WholeField sol;
  sol.grid = grid;
  sol.rho = transformed(d, grid);
  sol.u.resize(N);
  for (int a = 0; a < N; ++a) sol.u[a] = transformed(f[a], grid);
  std::vector<cplx> fh(N), uh(N);
  for_each_mode(grid, [&](std::size_t i, const double* xi) {
    for (int a = 0; a < N; ++a) fh[a] = sol.u[a][i];
    cplx rh;
    whole_space_multipliers(xi, N, lambda, model.params, sol.rho[i], fh.data(), rh, uh.data());
    sol.rho[i] = rh;
    for (int a = 0; a < N; ++a) sol.u[a][i] = uh[a];
  });
  fft_inverse(sol.rho, grid.counts);
  for (auto& c : sol.u) fft_inverse(c, grid.counts);
  return sol;
}

WholeData apply_whole_operator(const WholeField& sol, cplx lambda, const Model& model) {
  const BoxGrid& g = sol.grid;
  check_data(g, sol.rho, sol.u);
  const int N = g.dim;
  const MaterialParams& p = model.params;
  const cplx I(0.0, 1.0);
  const ScalarField rh = transformed(sol.rho, g);
  std::vector<ScalarField> uh(N);
  for (int a = 0; a < N; ++a) uh[a] = transformed(sol.u[a], g);
  WholeData out{ScalarField(g.size()), std::vector<ScalarField>(N, ScalarField(g.size()))};
  for_each_mode(g, [&](std::size_t i, const double* xi) {
    double xi2 = 0.0;
    cplx xi_dot_u = 0.0;
    for (int a = 0; a < N; ++a) {
      xi2 += xi[a] * xi[a];
      xi_dot_u += xi[a] * uh[a][i];
    }
    out.d[i] = lambda * rh[i] + I * xi_dot_u;
    for (int a = 0; a < N; ++a)
      out.f[a][i] = (lambda + p.mu * xi2) * uh[a][i] + p.nu * xi[a] * xi_dot_u + p.kappa * xi2 * I * xi[a] * rh[i];
  });
  fft_inverse(out.d, g.counts);
  for (auto& c : out.f) fft_inverse(c, g.counts);
  return out;
}

ResidualReport residual_whole(const WholeField& sol, const ScalarField& d, const std::vector<ScalarField>& f,
                              cplx lambda, const Model& model) {
  const BoxGrid& g = sol.grid;
  check_data(g, d, f);
  const int N = g.dim;
  const WholeData lhs = apply_whole_operator(sol, lambda, model);
  const std::vector<double> w(g.size(), g.cell_volume());
  ResidualReport rep;
  ScalarField r1 = lhs.d;
  for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= d[i];
  rep.rows.push_back({"mass", max_abs(r1), weighted_norm(r1, w)});
  double m2 = 0.0, l2 = 0.0;
  for (int a = 0; a < N; ++a) {
    ScalarField r = lhs.f[a];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= f[a][i];
    m2 = std::max(m2, max_abs(r));
    l2 += weighted_norm_sq(r, w);
  }
  rep.rows.push_back({"momentum", m2, std::sqrt(l2)});
  double dn = weighted_norm_sq(d, w);
  for (const auto& c : f) dn += weighted_norm_sq(c, w);
  rep.data_norm = std::sqrt(dn);
  return rep;
}

ScalarField spectral_derivative(const ScalarField& hat, const BoxGrid& grid, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != grid.dim || hat.size() != grid.size())
    throw Error(ErrorKind::GridMismatch, "spectral_derivative: shape mismatch");
  ScalarField out(hat.size());
  const cplx I(0.0, 1.0);
  for_each_mode(grid, [&](std::size_t i, const double* xi) {
    cplx m = 1.0;
    for (int a = 0; a < grid.dim; ++a)
      for (int k = 0; k < alpha[a]; ++k) m *= I * xi[a];
    out[i] = m * hat[i];
  });
  fft_inverse(out, grid.counts);
  return out;
}

DerivativeFamilies derivative_families(const WholeField& sol, cplx lambda) {
  const BoxGrid& g = sol.grid;
  const int N = g.dim;
  const cplx lh = std::sqrt(lambda);
  auto alpha_of = [N](std::initializer_list<int> axes) {
    std::vector<int> a(N, 0);
    for (int ax : axes) ++a[ax];
    return a;
  };
  auto scaled = [](ScalarField v, cplx c) {
    for (auto& x : v) x *= c;
    return v;
  };
  DerivativeFamilies fam;
  const ScalarField rh = transformed(sol.rho, g);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) fam.grad3_rho.push_back(spectral_derivative(rh, g, alpha_of({j, k, l})));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      fam.lam_half_grad2_rho.push_back(scaled(spectral_derivative(rh, g, alpha_of({j, k})), lh));
  fam.lam_rho = scaled(sol.rho, lambda);
  for (int j = 0; j < N; ++j) fam.grad_lam_rho.push_back(scaled(spectral_derivative(rh, g, alpha_of({j})), lambda));
  for (int J = 0; J < N; ++J) {
    const ScalarField uh = transformed(sol.u[J], g);
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) fam.grad2_u.push_back(spectral_derivative(uh, g, alpha_of({j, k})));
    for (int j = 0; j < N; ++j) fam.lam_half_grad_u.push_back(scaled(spectral_derivative(uh, g, alpha_of({j})), lh));
    fam.lam_u.push_back(scaled(sol.u[J], lambda));
  }
  return fam;
}

}  // namespace korteweg
