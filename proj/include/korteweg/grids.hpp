#pragma once

#include <cstddef>
#include <vector>

#include "korteweg/types.hpp"

namespace korteweg {

// Frequencies 2 pi k / L in FFT order: k = 0..M/2-1, -M/2..-1.
std::vector<double> lattice(int M, double L);

// Periodic box; row-major storage with the last axis (x_N) fastest.
struct BoxGrid {
  int dim = 2;
  std::vector<int> counts;
  std::vector<double> lengths;
  std::vector<double> origin;

  static BoxGrid uniform(int dim, int M, double L);
  std::size_t size() const;
  double cell_volume() const;
  double coordinate(int axis, int i) const { return origin[axis] + lengths[axis] * i / counts[axis]; }
  void check() const;
  bool operator==(const BoxGrid& o) const {
    return dim == o.dim && counts == o.counts && lengths == o.lengths && origin == o.origin;
  }
};

struct TangentialGrid {
  int dim_t = 1;
  int M = 256;
  double L = 2.0 * kPi;

  std::size_t size() const;
  double cell_volume() const;
  // Wavevector xi' of the flat (row-major) mode index.
  std::vector<double> wavevector(std::size_t flat) const;
  std::vector<int> lattice_index(std::size_t flat) const;
  std::vector<double> point(std::size_t flat) const;
  void check() const;
  bool operator==(const TangentialGrid& o) const { return dim_t == o.dim_t && M == o.M && L == o.L; }
};

// Default: n points x = H (1 - cos(pi k/(n-1)))/2, clustered at the boundary.
std::vector<double> chebyshev_normal_samples(double H, int n = 129);

// Tangential lattice times normal samples; x_N index fastest.
struct HalfGrid {
  TangentialGrid tg;
  std::vector<double> xn;

  std::size_t size() const { return tg.size() * xn.size(); }
  std::size_t index(std::size_t t, std::size_t k) const { return t * xn.size() + k; }
  // Tangential cell volume times trapezoid weights in x_N.
  std::vector<double> quadrature_weights() const;
  void check() const;
  bool operator==(const HalfGrid& o) const { return tg == o.tg && xn == o.xn; }
};

// In-place DFTs backed by FFTW. Forward is unnormalized; inverse divides by
// the transform length.
void fft_forward(ScalarField& data, const std::vector<int>& shape);
void fft_inverse(ScalarField& data, const std::vector<int>& shape);
// Batched transform over the leading axes `shape` of an array whose trailing
// axis has length `batch` (the x_N samples of a HalfGrid field).
void fft_forward_batched(ScalarField& data, const std::vector<int>& shape, int batch);
void fft_inverse_batched(ScalarField& data, const std::vector<int>& shape, int batch);

// Discrete L2 norm with weights w (sizes must match), and squared version.
double weighted_norm_sq(const ScalarField& v, const std::vector<double>& w);
double weighted_norm(const ScalarField& v, const std::vector<double>& w);
double max_abs(const ScalarField& v);

}  // namespace korteweg
