#include "korteweg/grids.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace korteweg {

std::vector<double> lattice(int M, double L) {
  std::vector<double> k(M);
  for (int i = 0; i < M; ++i) k[i] = 2.0 * kPi * (i < M / 2 ? i : i - M) / L;
  return k;
}

namespace {
bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }
}  // namespace

BoxGrid BoxGrid::uniform(int dim, int M, double L) {
  BoxGrid g;
  g.dim = dim;
  g.counts.assign(dim, M);
  g.lengths.assign(dim, L);
  g.origin.assign(dim, 0.0);
  g.check();
  return g;
}

std::size_t BoxGrid::size() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

double BoxGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= lengths[a] / counts[a];
  return v;
}

void BoxGrid::check() const {
  if (dim < 2 || dim > 3) throw Error(ErrorKind::InvalidArgument, "BoxGrid: dim must be 2 or 3");
  if (static_cast<int>(counts.size()) != dim || static_cast<int>(lengths.size()) != dim ||
      static_cast<int>(origin.size()) != dim)
    throw Error(ErrorKind::GridMismatch, "BoxGrid: axis metadata does not match dim");
  for (int a = 0; a < dim; ++a) {
    if (!power_of_two(counts[a]) || counts[a] < 2)
      throw Error(ErrorKind::InvalidArgument, "BoxGrid: points per axis must be a power of two");
    if (!(lengths[a] > 0.0)) throw Error(ErrorKind::InvalidArgument, "BoxGrid: period must be positive");
  }
}

std::size_t TangentialGrid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim_t; ++a) n *= static_cast<std::size_t>(M);
  return n;
}

double TangentialGrid::cell_volume() const { return std::pow(L / M, dim_t); }

std::vector<int> TangentialGrid::lattice_index(std::size_t flat) const {
  std::vector<int> idx(dim_t);
  for (int a = dim_t - 1; a >= 0; --a) {
    const int i = static_cast<int>(flat % M);
    flat /= M;
    idx[a] = i < M / 2 ? i : i - M;
  }
  return idx;
}

std::vector<double> TangentialGrid::wavevector(std::size_t flat) const {
  const auto k = lattice_index(flat);
  std::vector<double> xi(dim_t);
  for (int a = 0; a < dim_t; ++a) xi[a] = 2.0 * kPi * k[a] / L;
  return xi;
}

std::vector<double> TangentialGrid::point(std::size_t flat) const {
  std::vector<double> x(dim_t);
  for (int a = dim_t - 1; a >= 0; --a) {
    x[a] = L * static_cast<double>(flat % M) / M;
    flat /= M;
  }
  return x;
}

void TangentialGrid::check() const {
  if (dim_t < 1 || dim_t > 2) throw Error(ErrorKind::InvalidArgument, "TangentialGrid: N-1 must be 1 or 2");
  if (!power_of_two(M) || M < 2) throw Error(ErrorKind::InvalidArgument, "TangentialGrid: M must be a power of two");
  if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "TangentialGrid: period must be positive");
}

std::vector<double> chebyshev_normal_samples(double H, int n) {
  if (n < 2 || !(H > 0.0)) throw Error(ErrorKind::InvalidArgument, "normal samples need n >= 2 and H > 0");
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = 0.5 * H * (1.0 - std::cos(kPi * k / (n - 1)));
  x[0] = 0.0;
  x[n - 1] = H;
  return x;
}

std::vector<double> HalfGrid::quadrature_weights() const {
  const std::size_t K = xn.size();
  std::vector<double> wn(K, 0.0);
  for (std::size_t k = 0; k + 1 < K; ++k) {
    const double h = xn[k + 1] - xn[k];
    wn[k] += 0.5 * h;
    wn[k + 1] += 0.5 * h;
  }
  if (K == 1) wn[0] = 1.0;
  const double wt = tg.cell_volume();
  std::vector<double> w(size());
  for (std::size_t t = 0; t < tg.size(); ++t)
    for (std::size_t k = 0; k < K; ++k) w[index(t, k)] = wt * wn[k];
  return w;
}

void HalfGrid::check() const {
  tg.check();
  if (xn.empty() || xn.front() != 0.0)
    throw Error(ErrorKind::InvalidArgument, "normal samples must start at x_N = 0");
  for (std::size_t k = 1; k < xn.size(); ++k)
    if (!(xn[k] > xn[k - 1])) throw Error(ErrorKind::InvalidArgument, "normal samples must increase strictly");
}

// FFT plans -------------------------------------------------------------------------

namespace {

using PlanKey = std::tuple<std::vector<int>, int, int>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(const std::vector<int>& shape, int batch, int sign) {
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  const PlanKey key{shape, batch, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::size_t n = static_cast<std::size_t>(batch);
  for (int s : shape) n *= static_cast<std::size_t>(s);
  fftw_complex* buf = fftw_alloc_complex(n);
  // Batched layout: transform index stride = batch, batch members adjacent.
  fftw_plan p = fftw_plan_many_dft(static_cast<int>(shape.size()), shape.data(), batch, buf, nullptr, batch, 1,
                                   buf, nullptr, batch, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p) throw Error(ErrorKind::InvalidArgument, "FFTW failed to create a plan");
  cache.emplace(key, p);
  return p;
}

void run(ScalarField& data, const std::vector<int>& shape, int batch, int sign) {
  std::size_t n = static_cast<std::size_t>(batch);
  for (int s : shape) n *= static_cast<std::size_t>(s);
  if (data.size() != n) throw Error(ErrorKind::GridMismatch, "FFT: array size does not match shape");
  fftw_plan p = get_plan(shape, batch, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

void normalize(ScalarField& data, const std::vector<int>& shape) {
  double n = 1.0;
  for (int s : shape) n *= s;
  const double inv = 1.0 / n;
  for (auto& v : data) v *= inv;
}

}  // namespace

void fft_forward(ScalarField& data, const std::vector<int>& shape) { run(data, shape, 1, FFTW_FORWARD); }

void fft_inverse(ScalarField& data, const std::vector<int>& shape) {
  run(data, shape, 1, FFTW_BACKWARD);
  normalize(data, shape);
}

void fft_forward_batched(ScalarField& data, const std::vector<int>& shape, int batch) {
  run(data, shape, batch, FFTW_FORWARD);
}

void fft_inverse_batched(ScalarField& data, const std::vector<int>& shape, int batch) {
  run(data, shape, batch, FFTW_BACKWARD);
  normalize(data, shape);
}

double weighted_norm_sq(const ScalarField& v, const std::vector<double>& w) {
  if (v.size() != w.size()) throw Error(ErrorKind::GridMismatch, "norm: weight size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
  return s;
}

double weighted_norm(const ScalarField& v, const std::vector<double>& w) {
  return std::sqrt(weighted_norm_sq(v, w));
}

double max_abs(const ScalarField& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace korteweg
