#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "korteweg/grids.hpp"
#include "korteweg/half_space.hpp"

namespace korteweg {

// Periodic tangential lattice times x_N in [-H, H) with MN uniform points.
// The half grid is x_N = j * step, j = 0..MN/2; the box index of x_N is
// (MN/2 + j) mod MN.
struct FullGrid {
  TangentialGrid tg;
  double H = 10.0;
  int MN = 256;

  int dim() const { return tg.dim_t + 1; }
  int K() const { return MN / 2; }
  double step() const { return 2.0 * H / MN; }
  std::vector<double> xn() const;
  HalfGrid half() const { return HalfGrid{tg, xn()}; }
  BoxGrid box() const;
  std::size_t half_size() const { return tg.size() * (K() + 1); }
  void check() const;
  bool operator==(const FullGrid& o) const { return tg == o.tg && H == o.H && MN == o.MN; }
};

// Half-grid samples of a field with first (N) and second (N x N, row-major)
// derivatives when carried.
struct SampledField {
  ScalarField v;
  std::vector<ScalarField> d1;
  std::vector<ScalarField> d2;

  int order() const { return d2.empty() ? (d1.empty() ? 0 : 1) : 2; }
  void axpy(cplx a, const SampledField& o);
};

// Tangential derivatives spectrally, normal derivatives by fourth-order
// finite differences (one-sided near the ends).
ScalarField derivative_samples(const ScalarField& v, const FullGrid& g, const DerivOrder& o);
SampledField sampled_with_derivatives(ScalarField v, const FullGrid& g, int order);

// Normal profiles with closed-form derivatives.
struct Profile {
  enum class Kind { Exp, Gauss };
  Kind kind = Kind::Exp;
  cplx z = 1.0;                 // e^{-z x}
  double c = 0.0, w = 1.0;      // e^{-((x - c)/w)^2}

  static Profile exp(cplx z);
  static Profile gauss(double c, double w);
  cplx derivative(int n, double x) const;
};

// amp * D^order [ e^{i k.x'} profile(x_N) ]
struct Atom {
  cplx amp = 1.0;
  std::vector<double> k;
  Profile profile;
  DerivOrder order;
};

// Finite sum of atoms; closed under differentiation.
struct AtomField {
  std::vector<Atom> atoms;

  AtomField derivative(const DerivOrder& o) const;
  AtomField d(int N, std::initializer_list<int> axes) const { return derivative(deriv_from_axes(N, axes)); }
  AtomField& add(cplx a, const AtomField& o);
  AtomField scaled(cplx a) const;
  bool empty() const { return atoms.empty(); }

  ScalarField sample(const HalfGrid& hg, const DerivOrder& extra = {}) const;
  SampledField sampled(const HalfGrid& hg, int order) const;
};

}  // namespace korteweg
