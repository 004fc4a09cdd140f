#include "korteweg/fields.hpp"

#include <cmath>

namespace korteweg {

std::vector<double> FullGrid::xn() const {
  std::vector<double> x(K() + 1);
  for (int j = 0; j <= K(); ++j) x[j] = j * step();
  return x;
}

BoxGrid FullGrid::box() const {
  BoxGrid b;
  b.dim = dim();
  b.counts.assign(tg.dim_t, tg.M);
  b.counts.push_back(MN);
  b.lengths.assign(tg.dim_t, tg.L);
  b.lengths.push_back(2.0 * H);
  b.origin.assign(tg.dim_t, 0.0);
  b.origin.push_back(-H);
  return b;
}

void FullGrid::check() const {
  tg.check();
  if (!(H > 0.0) || MN < 16 || (MN & (MN - 1)) != 0)
    throw Error(ErrorKind::GridMismatch, "FullGrid: H must be positive and MN a power of two >= 16");
}

void SampledField::axpy(cplx a, const SampledField& o) {
  auto acc = [a](ScalarField& y, const ScalarField& x) {
    if (x.empty()) return;
    if (y.empty()) y.assign(x.size(), 0.0);
    if (y.size() != x.size()) throw Error(ErrorKind::GridMismatch, "SampledField::axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
  };
  acc(v, o.v);
  if (d1.size() < o.d1.size()) d1.resize(o.d1.size());
  for (std::size_t i = 0; i < o.d1.size(); ++i) acc(d1[i], o.d1[i]);
  if (d2.size() < o.d2.size()) d2.resize(o.d2.size());
  for (std::size_t i = 0; i < o.d2.size(); ++i) acc(d2[i], o.d2[i]);
}

namespace {

// Fourth-order d/dx along the trailing axis (length K1, spacing h).
ScalarField normal_fd(const ScalarField& v, std::size_t K1, double h) {
  if (K1 < 5) throw Error(ErrorKind::GridMismatch, "normal derivative needs at least 5 samples");
  ScalarField out(v.size());
  const double s = 1.0 / (12.0 * h);
  const std::size_t K = K1 - 1;
  for (std::size_t base = 0; base < v.size(); base += K1) {
    const cplx* f = &v[base];
    cplx* o = &out[base];
    o[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    o[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (std::size_t j = 2; j + 2 <= K; ++j) o[j] = s * (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]);
    o[K - 1] = s * (3.0 * f[K] + 10.0 * f[K - 1] - 18.0 * f[K - 2] + 6.0 * f[K - 3] - f[K - 4]);
    o[K] = s * (25.0 * f[K] - 48.0 * f[K - 1] + 36.0 * f[K - 2] - 16.0 * f[K - 3] + 3.0 * f[K - 4]);
  }
  return out;
}

}  // namespace

ScalarField derivative_samples(const ScalarField& v, const FullGrid& g, const DerivOrder& o) {
  const std::size_t K1 = g.K() + 1;
  if (v.size() != g.half_size()) throw Error(ErrorKind::GridMismatch, "derivative_samples: size mismatch");
  ScalarField out = v;
  if (o.t[0] + o.t[1] > 0) {
    const std::vector<int> shape(g.tg.dim_t, g.tg.M);
    fft_forward_batched(out, shape, static_cast<int>(K1));
    const cplx I(0.0, 1.0);
    for (std::size_t m = 0; m < g.tg.size(); ++m) {
      const auto xi = g.tg.wavevector(m);
      cplx f = 1.0;
      for (int a = 0; a < g.tg.dim_t; ++a)
        for (int k = 0; k < o.t[a]; ++k) f *= I * xi[a];
      for (std::size_t k = 0; k < K1; ++k) out[m * K1 + k] *= f;
    }
    fft_inverse_batched(out, shape, static_cast<int>(K1));
  }
  for (int k = 0; k < o.n; ++k) out = normal_fd(out, K1, g.step());
  return out;
}

SampledField sampled_with_derivatives(ScalarField v, const FullGrid& g, int order) {
  const int N = g.dim();
  SampledField s;
  s.v = std::move(v);
  if (order >= 1)
    for (int a = 0; a < N; ++a) s.d1.push_back(derivative_samples(s.v, g, deriv_from_axes(N, {a})));
  if (order >= 2)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) s.d2.push_back(derivative_samples(s.v, g, deriv_from_axes(N, {a, b})));
  return s;
}

Profile Profile::exp(cplx z) {
  Profile p;
  p.kind = Kind::Exp;
  p.z = z;
  return p;
}

Profile Profile::gauss(double c, double w) {
  if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "Gaussian profile needs a positive width");
  Profile p;
  p.kind = Kind::Gauss;
  p.c = c;
  p.w = w;
  return p;
}

cplx Profile::derivative(int n, double x) const {
  if (kind == Kind::Exp) return std::pow(-z, n) * std::exp(-z * x);
  // d^n/dx^n e^{-s^2} = (-1/w)^n H_n(s) e^{-s^2} with physicists' Hermite H_n
  const double s = (x - c) / w;
  double h0 = 1.0, h1 = 2.0 * s;
  double hn = n == 0 ? h0 : h1;
  for (int k = 1; k < n; ++k) {
    hn = 2.0 * s * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = hn;
  }
  return std::pow(-1.0 / w, n) * hn * std::exp(-s * s);
}

AtomField AtomField::derivative(const DerivOrder& o) const {
  AtomField r = *this;
  for (auto& a : r.atoms) {
    a.order.t[0] += o.t[0];
    a.order.t[1] += o.t[1];
    a.order.n += o.n;
  }
  return r;
}

AtomField& AtomField::add(cplx a, const AtomField& o) {
  for (Atom at : o.atoms) {
    at.amp *= a;
    atoms.push_back(std::move(at));
  }
  return *this;
}

AtomField AtomField::scaled(cplx a) const {
  AtomField r;
  return r.add(a, *this);
}

ScalarField AtomField::sample(const HalfGrid& hg, const DerivOrder& extra) const {
  const std::size_t T = hg.tg.size(), K = hg.xn.size();
  ScalarField out(T * K, 0.0);
  const cplx I(0.0, 1.0);
  std::vector<cplx> phase(T), prof(K);
  for (const Atom& a : atoms) {
    if (static_cast<int>(a.k.size()) != hg.tg.dim_t) throw Error(ErrorKind::GridMismatch, "atom wavevector dimension");
    DerivOrder o = a.order;
    o.t[0] += extra.t[0];
    o.t[1] += extra.t[1];
    o.n += extra.n;
    cplx amp = a.amp;
    for (int d = 0; d < hg.tg.dim_t; ++d)
      for (int k = 0; k < o.t[d]; ++k) amp *= I * a.k[d];
    if (amp == 0.0) continue;
    for (std::size_t t = 0; t < T; ++t) {
      const auto x = hg.tg.point(t);
      double arg = 0.0;
      for (int d = 0; d < hg.tg.dim_t; ++d) arg += a.k[d] * x[d];
      phase[t] = amp * std::polar(1.0, arg);
    }
    for (std::size_t k = 0; k < K; ++k) prof[k] = a.profile.derivative(o.n, hg.xn[k]);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t k = 0; k < K; ++k) out[t * K + k] += phase[t] * prof[k];
  }
  return out;
}

SampledField AtomField::sampled(const HalfGrid& hg, int order) const {
  const int N = hg.tg.dim_t + 1;
  SampledField s;
  s.v = sample(hg);
  if (order >= 1)
    for (int a = 0; a < N; ++a) s.d1.push_back(sample(hg, deriv_from_axes(N, {a})));
  if (order >= 2)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) s.d2.push_back(sample(hg, deriv_from_axes(N, {a, b})));
  return s;
}

}  // namespace korteweg
