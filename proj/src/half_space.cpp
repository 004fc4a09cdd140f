#include "korteweg/half_space.hpp"

#include <cmath>
#include <sstream>

namespace korteweg {

namespace {

const cplx I(0.0, 1.0);

void require_sizes(const std::vector<double>& xi, const std::vector<cplx>& g0) {
  if (g0.size() != xi.size() + 1)
    throw Error(ErrorKind::GridMismatch, "boundary data must have N = dim(xi') + 1 components");
}

double xi_sq(const std::vector<double>& xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return s;
}

cplx tangential_div(const std::vector<double>& xi, const std::vector<cplx>& g0) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) s += I * xi[k] * g0[k];
  return s;
}

[[noreturn]] void singular(const std::vector<double>& xi, cplx lambda, double scaled) {
  std::ostringstream os;
  os << "Lopatinskii determinant degenerates at |xi'|^2 = " << xi_sq(xi) << ", lambda = " << lambda
     << " (scaled value " << scaled << ")";
  throw Error(ErrorKind::SingularLopatinskii, os.str());
}

constexpr double kSingularTol = 1e-13;

// Amplitudes alpha, beta, gamma and the rho coefficients from (beta_N, gamma_N).
ModeSolution assemble(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0,
                      const RootSet& rs, cplx betaN, cplx gammaN, const Model& model) {
  const int N = static_cast<int>(g0.size());
  const double mu = model.mu();
  const double X2 = xi_sq(xi);
  const cplx w = rs.omega, t1 = rs.t1, t2 = rs.t2;
  const cplx w2 = X2 + lambda / mu;
  const cplx gN = g0[N - 1];
  ModeSolution ms;
  ms.xi = xi;
  ms.omega = w;
  ms.t1 = t1;
  ms.t2 = t2;
  ms.alpha.assign(N, 0.0);
  ms.beta.assign(N, 0.0);
  ms.gamma.assign(N, 0.0);
  ms.beta[N - 1] = betaN;
  ms.gamma[N - 1] = gammaN;
  ms.alpha[N - 1] = (t1 * t2 * gN / mu + t2 * (2.0 * t1 * w - w2 - X2) * betaN +
                     t1 * (2.0 * t2 * w - w2 - X2) * gammaN) /
                    (2.0 * t1 * t2 * w);
  for (int j = 0; j < N - 1; ++j) {
    const cplx ixj = I * xi[j];
    ms.beta[j] = -ixj * betaN / t1;
    ms.gamma[j] = -ixj * gammaN / t2;
    ms.alpha[j] = (g0[j] / mu + ixj * gN / (2.0 * mu * w) +
                   ixj * (4.0 * t1 * w - 3.0 * w2 - X2) * betaN / (2.0 * t1 * w) +
                   ixj * (4.0 * t2 * w - 3.0 * w2 - X2) * gammaN / (2.0 * t2 * w)) /
                  w;
  }
  ms.rho_a1 = (t1 * t1 - X2) / (lambda * t1) * betaN;
  ms.rho_a2 = (t2 * t2 - X2) / (lambda * t2) * gammaN;
  return ms;
}

double scaled_det(const Lopatinskii& lop, double X2, cplx lambda, const Model& model) {
  return lopatinskii_scaled(frak_symbols(X2, lambda, lop.roots, model), X2, lambda);
}

}  // namespace

cplx ModeSolution::rho(double x) const { return rho_a1 * std::exp(-t1 * x) + rho_a2 * std::exp(-t2 * x); }

cplx ModeSolution::u(int J, double x) const {
  const cplx ew = std::exp(-omega * x);
  return alpha[J] * ew + beta[J] * (std::exp(-t1 * x) - ew) + gamma[J] * (std::exp(-t2 * x) - ew);
}

ModeSolution coefficients_direct(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0,
                                 cplx h0, const Model& model) {
  require_sizes(xi, g0);
  model.require_admissible(lambda);
  const double X2 = xi_sq(xi);
  const Lopatinskii lop = lopatinskii(X2, lambda, model);
  const double sd = scaled_det(lop, X2, lambda, model);
  if (!(sd >= kSingularTol)) singular(xi, lambda, sd);
  const RootSet& rs = lop.roots;
  const double mu = model.mu();
  const cplx W2 = 2.0 * X2 + lambda / mu;
  const cplx G = tangential_div(xi, g0);
  cplx r0 = -2.0 * rs.t1 * rs.t2 * rs.omega * G / mu + rs.t1 * rs.t2 * W2 * g0.back() / mu;
  cplx r1 = lambda * h0;
  // Gaussian elimination with partial pivoting.
  auto L = lop.L;
  if (std::abs(L[1][0]) > std::abs(L[0][0])) {
    std::swap(L[0], L[1]);
    std::swap(r0, r1);
  }
  const cplx factor = L[1][0] / L[0][0];
  const cplx a11 = L[1][1] - factor * L[0][1];
  const cplx gammaN = (r1 - factor * r0) / a11;
  const cplx betaN = (r0 - L[0][1] * gammaN) / L[0][0];
  return assemble(xi, lambda, g0, rs, betaN, gammaN, model);
}

ModeSolution coefficients_closed_form(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0,
                                      cplx h0, const Model& model) {
  require_sizes(xi, g0);
  model.require_admissible(lambda);
  const double X2 = xi_sq(xi);
  const Lopatinskii lop = lopatinskii(X2, lambda, model);
  const double sd = scaled_det(lop, X2, lambda, model);
  if (!(sd >= kSingularTol)) singular(xi, lambda, sd);
  const RootSet& rs = lop.roots;
  const double mu = model.mu();
  const cplx w = rs.omega, t1 = rs.t1, t2 = rs.t2;
  const cplx W2 = 2.0 * X2 + lambda / mu;
  const cplx G = tangential_div(xi, g0);
  const cplx gN = g0.back();
  const cplx det = lop.det_direct;
  const cplx betaN = -(2.0 * t1 * t2 * w * lop.L11 / (mu * det)) * G + (t1 * t2 * W2 * lop.L11 / (mu * det)) * gN +
                     (lambda * lop.L12 / det) * h0;
  const cplx gammaN = -(2.0 * t1 * t2 * w * lop.L21 / (mu * det)) * G + (t1 * t2 * W2 * lop.L21 / (mu * det)) * gN +
                      (lambda * lop.L22 / det) * h0;
  return assemble(xi, lambda, g0, rs, betaN, gammaN, model);
}

// Kernel basis ------------------------------------------------------------------------

ModeBasis mode_basis(const RootSet& rs, const Model& model) {
  return ModeBasis{rs.t1, rs.t2, rs.omega, frak_r(1, rs, model), frak_r(2, rs, model)};
}

std::array<cplx, 5> basis_values(double x, const ModeBasis& b) {
  return {std::exp(-b.t1 * x), std::exp(-b.omega * x), divided_exp(b.t1, b.t2, x),
          b.r1 * divided_exp(b.omega, b.t1, x), b.r2 * divided_exp(b.omega, b.t2, x)};
}

Coef5 normal_derivative(const Coef5& c, const ModeBasis& b) {
  // dM0 = -t2 M0 - E1, dMj = -tj Mj - rj Ew
  return {-b.t1 * c[0] - c[2], -b.omega * c[1] - b.r1 * c[3] - b.r2 * c[4], -b.t2 * c[2], -b.t1 * c[3],
          -b.t2 * c[4]};
}

cplx evaluate(const Coef5& c, const std::array<cplx, 5>& v) {
  return c[0] * v[0] + c[1] * v[1] + c[2] * v[2] + c[3] * v[3] + c[4] * v[4];
}

KernelModeForm kernel_form(const std::vector<double>& xi, cplx lambda, const std::vector<cplx>& g0, cplx h0,
                           const Model& model) {
  require_sizes(xi, g0);
  model.require_admissible(lambda);
  const int N = static_cast<int>(g0.size());
  const double X2 = xi_sq(xi);
  const RootSet rs = roots(X2, lambda, model);
  const FrakSymbols fs = frak_symbols(X2, lambda, rs, model);
  const double sd = lopatinskii_scaled(fs, X2, lambda);
  if (!(sd >= kSingularTol)) singular(xi, lambda, sd);
  const double mu = model.mu();
  const cplx s1 = model.dc.s1, s2 = model.dc.s2;
  const cplx w = rs.omega, t1 = rs.t1, t2 = rs.t2;
  const cplx W2 = 2.0 * X2 + lambda / mu;
  const cplx gN = g0[N - 1];
  const cplx Q = -2.0 * w * tangential_div(xi, g0) + W2 * gN;
  const cplx m1 = fs.m[0], m2 = fs.m[1], l1 = fs.l[0], l2 = fs.l[1];

  // (t2 - t1) beta_N and (t2 - t1) gamma_N
  const cplx BN = t1 * t1 * t2 * s2 * (t1 + w) / (mu * l1) * Q - lambda * t1 * t2 * m2 / l2 * h0;
  const cplx CN = -t1 * t2 * t2 * s1 * (t2 + w) / (mu * l2) * Q + lambda * t1 * t2 * m1 / l1 * h0;

  KernelModeForm out;
  out.xi = xi;
  out.basis = mode_basis(rs, model);
  out.rho = {s1 * s2 * t1 * (t1 + w) / (mu * l1) * Q +
                 (fs.a * t1 * m1 / (s1 * l1) - fs.a * t2 * m2 / (s2 * l2)) * h0,
             0.0, s2 * CN / t2, 0.0, 0.0};
  const cplx chanB = BN / (t1 * (t1 + w));
  const cplx chanC = CN / (t2 * (t2 + w));
  out.u.assign(N, Coef5{});
  const cplx alphaN = gN / (2.0 * mu * w) + fs.b * (fs.q[0] * chanB + fs.q[1] * chanC) / (2.0 * w);
  out.u[N - 1] = {0.0, alphaN, 0.0, BN, CN};
  const cplx pj = fs.b * (fs.p[0] * chanB + fs.p[1] * chanC) / (2.0 * w * w);
  for (int j = 0; j < N - 1; ++j) {
    const cplx ixj = I * xi[j];
    const cplx alphaj = g0[j] / (mu * w) + ixj * gN / (2.0 * mu * w * w) + ixj * pj;
    out.u[j] = {0.0, alphaj, 0.0, -ixj * BN / t1, -ixj * CN / t2};
  }
  return out;
}

KernelModeForm to_kernel_form(const ModeSolution& ms, const Model& model) {
  KernelModeForm out;
  out.xi = ms.xi;
  out.basis = mode_basis(RootSet{ms.omega, ms.t1, ms.t2}, model);
  const cplx d = ms.t2 - ms.t1;
  // e^{-t2 x} = E1 + (t2 - t1) M0,  e^{-tj x} - e^{-w x} = (t2 - t1) Mj
  out.rho = {ms.rho_a1 + ms.rho_a2, 0.0, ms.rho_a2 * d, 0.0, 0.0};
  for (std::size_t J = 0; J < ms.alpha.size(); ++J)
    out.u.push_back({0.0, ms.alpha[J], 0.0, ms.beta[J] * d, ms.gamma[J] * d});
  return out;
}

DerivOrder deriv_from_axes(int N, std::initializer_list<int> axes) {
  DerivOrder o;
  for (int a : axes) {
    if (a == N - 1)
      ++o.n;
    else
      ++o.t[a];
  }
  return o;
}

// ReducedSolution -------------------------------------------------------------------------

ReducedSolution::ReducedSolution(const TangentialGrid& tg, std::vector<double> xn, cplx lambda, int N)
    : tg_(tg), xn_(std::move(xn)), lambda_(lambda), N_(N) {
  HalfGrid{tg_, xn_}.check();
  if (N != tg.dim_t + 1) throw Error(ErrorKind::GridMismatch, "ReducedSolution: N must equal dim_t + 1");
  basis_.resize(tg_.size());
  coef_.assign(N_ + 1, std::vector<Coef5>(tg_.size(), Coef5{}));
}

void ReducedSolution::set_mode(std::size_t mode, const KernelModeForm& form) {
  basis_[mode] = form.basis;
  coef_[0][mode] = form.rho;
  for (int J = 0; J < N_; ++J) coef_[J + 1][mode] = form.u[J];
}

void ReducedSolution::rebuild_cache() {
  const std::size_t K = xn_.size();
  cache_.resize(basis_.size() * K);
  for (std::size_t m = 0; m < basis_.size(); ++m)
    for (std::size_t k = 0; k < K; ++k) cache_[m * K + k] = basis_values(xn_[k], basis_[m]);
}

Coef5 ReducedSolution::derivative_coef(int component, std::size_t mode, const DerivOrder& order) const {
  Coef5 c = coef_.at(component)[mode];
  cplx factor = 1.0;
  const auto xi = tg_.wavevector(mode);
  for (int a = 0; a < tg_.dim_t; ++a)
    for (int k = 0; k < order.t[a]; ++k) factor *= I * xi[a];
  for (auto& v : c) v *= factor;
  for (int k = 0; k < order.n; ++k) c = normal_derivative(c, basis_[mode]);
  return c;
}

ScalarField ReducedSolution::synthesize(const std::vector<Coef5>& per_mode) const {
  if (cache_.size() != basis_.size() * xn_.size()) const_cast<ReducedSolution*>(this)->rebuild_cache();
  const std::size_t K = xn_.size();
  ScalarField out(basis_.size() * K);
  for (std::size_t m = 0; m < basis_.size(); ++m)
    for (std::size_t k = 0; k < K; ++k) out[m * K + k] = evaluate(per_mode[m], cache_[m * K + k]);
  std::vector<int> shape(tg_.dim_t, tg_.M);
  fft_inverse_batched(out, shape, static_cast<int>(K));
  return out;
}

ScalarField ReducedSolution::synthesize_trace(const std::vector<Coef5>& per_mode) const {
  ScalarField out(basis_.size());
  for (std::size_t m = 0; m < basis_.size(); ++m) out[m] = per_mode[m][0] + per_mode[m][1];
  std::vector<int> shape(tg_.dim_t, tg_.M);
  fft_inverse(out, shape);
  return out;
}

ScalarField ReducedSolution::sample(int component, const DerivOrder& order) const {
  std::vector<Coef5> c(basis_.size());
  for (std::size_t m = 0; m < basis_.size(); ++m) c[m] = derivative_coef(component, m, order);
  return synthesize(c);
}

ReducedSolution ReducedSolution::resampled(std::vector<double> xn) const {
  ReducedSolution r = *this;
  r.xn_ = std::move(xn);
  HalfGrid{r.tg_, r.xn_}.check();
  r.cache_.clear();
  return r;
}

void ReducedSolution::axpy(cplx a, const ReducedSolution& o) {
  if (!(o.tg_ == tg_) || o.xn_ != xn_ || o.lambda_ != lambda_ || o.N_ != N_)
    throw Error(ErrorKind::GridMismatch, "ReducedSolution::axpy: incompatible operands");
  for (std::size_t c = 0; c < coef_.size(); ++c)
    for (std::size_t m = 0; m < basis_.size(); ++m)
      for (int k = 0; k < 5; ++k) coef_[c][m][k] += a * o.coef_[c][m][k];
}

ReducedSolution solve_reduced(const std::vector<ScalarField>& g, const ScalarField& h, cplx lambda,
                              const TangentialGrid& tg, const std::vector<double>& xn, const Model& model) {
  tg.check();
  const int N = tg.dim_t + 1;
  if (static_cast<int>(g.size()) != N || h.size() != tg.size())
    throw Error(ErrorKind::GridMismatch, "solve_reduced: boundary data does not match the tangential grid");
  for (const auto& c : g)
    if (c.size() != tg.size()) throw Error(ErrorKind::GridMismatch, "solve_reduced: boundary data size mismatch");
  model.require_admissible(lambda);
  const std::vector<int> shape(tg.dim_t, tg.M);
  std::vector<ScalarField> gh = g;
  for (auto& c : gh) fft_forward(c, shape);
  ScalarField hh = h;
  fft_forward(hh, shape);
  ReducedSolution sol(tg, xn, lambda, N);
  std::vector<cplx> g0(N);
  for (std::size_t m = 0; m < tg.size(); ++m) {
    for (int J = 0; J < N; ++J) g0[J] = gh[J][m];
    sol.set_mode(m, kernel_form(tg.wavevector(m), lambda, g0, hh[m], model));
  }
  return sol;
}

ResidualReport residual_reduced(const ReducedSolution& sol, const std::vector<ScalarField>& g,
                                const ScalarField& h, const Model& model) {
  const TangentialGrid& tg = sol.tangential();
  const int N = sol.dim();
  if (static_cast<int>(g.size()) != N || h.size() != tg.size())
    throw Error(ErrorKind::GridMismatch, "residual_reduced: boundary data does not match");
  const MaterialParams& p = model.params;
  const cplx lambda = sol.lambda();
  const std::size_t M = sol.modes();
  auto D = [&](int comp, std::size_t m, std::initializer_list<int> axes) {
    return sol.derivative_coef(comp, m, deriv_from_axes(N, axes));
  };
  auto axpy = [](Coef5& y, cplx a, const Coef5& x) {
    for (int k = 0; k < 5; ++k) y[k] += a * x[k];
  };
  std::vector<Coef5> mass(M), stressN(M), neumann(M);
  std::vector<std::vector<Coef5>> mom(N, std::vector<Coef5>(M)), stress_t(N - 1, std::vector<Coef5>(M));
  for (std::size_t m = 0; m < M; ++m) {
    Coef5 div{}, lap_rho{};
    for (int a = 0; a < N; ++a) {
      axpy(div, 1.0, D(a + 1, m, {a}));
      axpy(lap_rho, 1.0, D(0, m, {a, a}));
    }
    mass[m] = D(0, m, {});
    for (auto& v : mass[m]) v *= lambda;
    axpy(mass[m], 1.0, div);
    for (int J = 0; J < N; ++J) {
      Coef5 r = D(J + 1, m, {});
      for (auto& v : r) v *= lambda;
      for (int a = 0; a < N; ++a) {
        axpy(r, -p.mu, D(J + 1, m, {a, a}));
        axpy(r, -p.nu, D(a + 1, m, {a, J}));
        axpy(r, -p.kappa, D(0, m, {J, a, a}));
      }
      mom[J][m] = r;
    }
    for (int j = 0; j < N - 1; ++j) {
      Coef5 r{};
      axpy(r, -p.mu, D(N, m, {j}));
      axpy(r, -p.mu, D(j + 1, m, {N - 1}));
      stress_t[j][m] = r;
    }
    Coef5 r{};
    axpy(r, -2.0 * p.mu, D(N, m, {N - 1}));
    axpy(r, -(p.nu - p.mu), div);
    axpy(r, -p.kappa, lap_rho);
    stressN[m] = r;
    neumann[m] = D(0, m, {N - 1});
    for (auto& v : neumann[m]) v = -v;
  }
  const HalfGrid hg = sol.grid();
  const auto w = hg.quadrature_weights();
  const std::vector<double> wt(tg.size(), tg.cell_volume());
  ResidualReport rep;
  const ScalarField mass_s = sol.synthesize(mass);
  rep.rows.push_back({"mass", max_abs(mass_s), weighted_norm(mass_s, w)});
  double mm = 0.0, ml = 0.0;
  for (int J = 0; J < N; ++J) {
    const ScalarField s = sol.synthesize(mom[J]);
    mm = std::max(mm, max_abs(s));
    ml += weighted_norm_sq(s, w);
  }
  rep.rows.push_back({"momentum", mm, std::sqrt(ml)});
  double sm = 0.0, sl = 0.0;
  for (int J = 0; J < N; ++J) {
    ScalarField s = sol.synthesize_trace(J < N - 1 ? stress_t[J] : stressN);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= g[J][i];
    sm = std::max(sm, max_abs(s));
    sl += weighted_norm_sq(s, wt);
  }
  rep.rows.push_back({"stress", sm, std::sqrt(sl)});
  ScalarField nr = sol.synthesize_trace(neumann);
  for (std::size_t i = 0; i < nr.size(); ++i) nr[i] -= h[i];
  rep.rows.push_back({"neumann", max_abs(nr), weighted_norm(nr, wt)});
  double dn = weighted_norm_sq(h, wt);
  for (const auto& c : g) dn += weighted_norm_sq(c, wt);
  rep.data_norm = std::sqrt(dn);
  return rep;
}

}  // namespace korteweg
