#include "korteweg/full_resolvent.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace korteweg {

namespace {

ScalarField zeros(const FullGrid& g) { return ScalarField(g.half_size(), 0.0); }

SampledField zero_field(const FullGrid& g, int order) {
  const int N = g.dim();
  SampledField s;
  s.v = zeros(g);
  if (order >= 1) s.d1.assign(N, zeros(g));
  if (order >= 2) s.d2.assign(N * N, zeros(g));
  return s;
}

void require_field(const SampledField& s, const FullGrid& g, int order, const char* what) {
  const std::size_t n = g.half_size();
  const std::size_t N = g.dim();
  bool ok = s.v.size() == n && s.order() >= order;
  if (ok && order >= 1) ok = s.d1.size() == N;
  if (ok && order >= 2) ok = s.d2.size() == N * N;
  for (const auto& c : s.d1) ok = ok && c.size() == n;
  for (const auto& c : s.d2) ok = ok && c.size() == n;
  if (!ok) throw Error(ErrorKind::GridMismatch, std::string("FullData: field ") + what + " does not match the grid");
}

std::vector<int> box_alpha(const FullGrid& g, const DerivOrder& o) {
  std::vector<int> a(g.dim(), 0);
  for (int d = 0; d < g.tg.dim_t; ++d) a[d] = o.t[d];
  a[g.dim() - 1] = o.n;
  return a;
}

ScalarField box_transform(ScalarField v, const BoxGrid& b) {
  fft_forward(v, b.counts);
  return v;
}

}  // namespace

// FullData ------------------------------------------------------------------------

FullData FullData::zero(const FullGrid& grid) {
  grid.check();
  const int N = grid.dim();
  FullData F;
  F.grid = grid;
  F.d = zero_field(grid, 1);
  F.f.assign(N, zero_field(grid, 0));
  F.g.assign(N, zero_field(grid, 1));
  F.h = zero_field(grid, 2);
  return F;
}

void FullData::check() const {
  grid.check();
  const std::size_t N = grid.dim();
  if (f.size() != N || g.size() != N) throw Error(ErrorKind::GridMismatch, "FullData: f and g need N components");
  require_field(d, grid, 1, "d");
  for (const auto& c : f) require_field(c, grid, 0, "f");
  for (const auto& c : g) require_field(c, grid, 1, "g");
  require_field(h, grid, 2, "h");
}

FullData& FullData::axpy(cplx a, const FullData& o) {
  if (!(o.grid == grid) || o.f.size() != f.size()) throw Error(ErrorKind::GridMismatch, "FullData::axpy: grid mismatch");
  d.axpy(a, o.d);
  for (std::size_t J = 0; J < f.size(); ++J) {
    f[J].axpy(a, o.f[J]);
    g[J].axpy(a, o.g[J]);
  }
  h.axpy(a, o.h);
  return *this;
}

bool FullData::interior_zero() const {
  auto zero = [](const ScalarField& v) {
    for (const auto& x : v)
      if (x != 0.0) return false;
    return true;
  };
  if (!zero(d.v)) return false;
  for (const auto& c : f)
    if (!zero(c.v)) return false;
  return true;
}

FullData make_full_data(const FullGrid& grid, ScalarField d, std::vector<ScalarField> f, std::vector<ScalarField> g,
                        ScalarField h) {
  grid.check();
  const std::size_t N = grid.dim();
  if (f.size() != N || g.size() != N) throw Error(ErrorKind::GridMismatch, "make_full_data: f and g need N components");
  FullData F;
  F.grid = grid;
  F.d = sampled_with_derivatives(std::move(d), grid, 1);
  for (auto& c : f) F.f.push_back(sampled_with_derivatives(std::move(c), grid, 0));
  for (auto& c : g) F.g.push_back(sampled_with_derivatives(std::move(c), grid, 1));
  F.h = sampled_with_derivatives(std::move(h), grid, 2);
  F.check();
  return F;
}

std::vector<ScalarField> data_blocks(const FullData& F, cplx lambda) {
  F.check();
  const cplx lh = std::sqrt(lambda);
  auto scaled = [](ScalarField v, cplx c) {
    for (auto& x : v) x *= c;
    return v;
  };
  std::vector<ScalarField> b;
  b.push_back(F.d.v);
  for (const auto& c : F.d.d1) b.push_back(c);
  for (const auto& c : F.f) b.push_back(c.v);
  for (const auto& c : F.g) {
    for (const auto& e : c.d1) b.push_back(e);
    b.push_back(scaled(c.v, lh));
  }
  for (const auto& e : F.h.d2) b.push_back(e);
  for (const auto& e : F.h.d1) b.push_back(scaled(e, lh));
  b.push_back(scaled(F.h.v, lambda));
  return b;
}

double data_norm(const FullData& F, cplx lambda) {
  const auto w = F.grid.half().quadrature_weights();
  double s = 0.0;
  for (const auto& b : data_blocks(F, lambda)) s += weighted_norm_sq(b, w);
  return std::sqrt(s);
}

// Extensions -----------------------------------------------------------------------

ScalarField extend_even(const ScalarField& half, const FullGrid& g) {
  if (half.size() != g.half_size()) throw Error(ErrorKind::GridMismatch, "extend_even: size mismatch");
  const std::size_t K = g.K(), K1 = K + 1, MN = g.MN;
  ScalarField box(g.tg.size() * MN);
  for (std::size_t t = 0; t < g.tg.size(); ++t)
    for (std::size_t i = 0; i < MN; ++i) {
      const std::size_t j = i >= K ? i - K : K - i;  // |x_N| / step
      box[t * MN + i] = half[t * K1 + j];
    }
  return box;
}

ScalarField extend_zero(const ScalarField& half, const FullGrid& g) {
  if (half.size() != g.half_size()) throw Error(ErrorKind::GridMismatch, "extend_zero: size mismatch");
  const std::size_t K = g.K(), K1 = K + 1, MN = g.MN;
  ScalarField box(g.tg.size() * MN, 0.0);
  for (std::size_t t = 0; t < g.tg.size(); ++t) {
    for (std::size_t j = 0; j < K; ++j) box[t * MN + K + j] = half[t * K1 + j];
    box[t * MN] = half[t * K1 + K];  // x_N = H, periodic image of -H
  }
  return box;
}

ScalarField restrict_to_half(const ScalarField& box, const FullGrid& g) {
  const std::size_t K = g.K(), K1 = K + 1, MN = g.MN;
  if (box.size() != g.tg.size() * MN) throw Error(ErrorKind::GridMismatch, "restrict_to_half: size mismatch");
  ScalarField half(g.half_size());
  for (std::size_t t = 0; t < g.tg.size(); ++t)
    for (std::size_t j = 0; j < K1; ++j) half[t * K1 + j] = box[t * MN + (K + j) % MN];
  return half;
}

ScalarField trace(const ScalarField& half, const FullGrid& g) {
  const std::size_t K1 = g.K() + 1;
  if (half.size() != g.half_size()) throw Error(ErrorKind::GridMismatch, "trace: size mismatch");
  ScalarField tr(g.tg.size());
  for (std::size_t t = 0; t < tr.size(); ++t) tr[t] = half[t * K1];
  return tr;
}

// Boundary correction -------------------------------------------------------------

CorrectedBoundaryData correct_boundary_data(const FullData& F, const WholeField& whole, const Model& model) {
  F.check();
  const FullGrid& g = F.grid;
  const BoxGrid box = g.box();
  if (!(whole.grid == box)) throw Error(ErrorKind::GridMismatch, "correct_boundary_data: whole-space grid mismatch");
  const int N = g.dim();
  const MaterialParams& p = model.params;
  const ScalarField rh = box_transform(whole.rho, box);
  std::vector<ScalarField> uh;
  for (const auto& c : whole.u) uh.push_back(box_transform(c, box));
  auto tr = [&](const ScalarField& hat, std::initializer_list<int> axes) {
    std::vector<int> a(N, 0);
    for (int ax : axes) ++a[ax];
    return trace(restrict_to_half(spectral_derivative(hat, box, a), g), g);
  };
  const std::size_t T = g.tg.size();
  ScalarField div(T, 0.0), lap(T, 0.0);
  for (int a = 0; a < N; ++a) {
    const ScalarField da = tr(uh[a], {a});
    const ScalarField laa = tr(rh, {a, a});
    for (std::size_t t = 0; t < T; ++t) {
      div[t] += da[t];
      lap[t] += laa[t];
    }
  }
  CorrectedBoundaryData out;
  for (int j = 0; j < N - 1; ++j) {
    ScalarField gj = trace(F.g[j].v, g);
    const ScalarField a = tr(uh[N - 1], {j}), b = tr(uh[j], {N - 1});
    for (std::size_t t = 0; t < T; ++t) gj[t] += p.mu * (a[t] + b[t]);
    out.g.push_back(std::move(gj));
  }
  ScalarField gN = trace(F.g[N - 1].v, g);
  const ScalarField dnun = tr(uh[N - 1], {N - 1});
  for (std::size_t t = 0; t < T; ++t) gN[t] += 2.0 * p.mu * dnun[t] + (p.nu - p.mu) * div[t] + p.kappa * lap[t];
  out.g.push_back(std::move(gN));
  out.h = trace(F.h.v, g);
  const ScalarField dnr = tr(rh, {N - 1});
  for (std::size_t t = 0; t < T; ++t) out.h[t] += dnr[t];
  return out;
}

// Solutions -----------------------------------------------------------------------

ScalarField FullSolution::sample(int component, const DerivOrder& order) const {
  ScalarField out = reduced.sample(component, order);
  if (!whole_hat.empty()) {
    const ScalarField w = restrict_to_half(spectral_derivative(whole_hat.at(component), grid.box(), box_alpha(grid, order)), grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[i];
  }
  return out;
}

FullSolution solve_gamma_zero(const FullData& F, cplx lambda, const Model& model) {
  F.check();
  model.require_admissible(lambda);
  const FullGrid& g = F.grid;
  const int N = g.dim();
  FullSolution S;
  S.grid = g;
  S.lambda = lambda;
  std::vector<ScalarField> gt;
  ScalarField ht;
  if (F.interior_zero()) {
    for (const auto& c : F.g) gt.push_back(trace(c.v, g));
    ht = trace(F.h.v, g);
  } else {
    const BoxGrid box = g.box();
    std::vector<ScalarField> Ef;
    for (const auto& c : F.f) Ef.push_back(extend_zero(c.v, g));
    const WholeField whole = solve_whole(box, extend_even(F.d.v, g), Ef, lambda, model);
    CorrectedBoundaryData c = correct_boundary_data(F, whole, model);
    gt = std::move(c.g);
    ht = std::move(c.h);
    S.whole_hat.push_back(box_transform(whole.rho, box));
    for (int J = 0; J < N; ++J) S.whole_hat.push_back(box_transform(whole.u[J], box));
  }
  S.reduced = solve_reduced(gt, ht, lambda, g.tg, g.xn(), model);
  return S;
}

FullData neumann_map(const FullSolution& S, double gamma) {
  const FullGrid& g = S.grid;
  const int N = g.dim();
  FullData G = FullData::zero(g);
  if (gamma == 0.0) return G;
  const ScalarField rho = S.sample(0);
  std::vector<ScalarField> grad;
  for (int a = 0; a < N; ++a) grad.push_back(S.sample(0, deriv_from_axes(N, {a})));
  for (int J = 0; J < N; ++J)
    for (std::size_t i = 0; i < rho.size(); ++i) G.f[J].v[i] = -gamma * grad[J][i];
  for (std::size_t i = 0; i < rho.size(); ++i) G.g[N - 1].v[i] = -gamma * rho[i];
  for (int a = 0; a < N; ++a)
    for (std::size_t i = 0; i < rho.size(); ++i) G.g[N - 1].d1[a][i] = -gamma * grad[a][i];
  return G;
}

GeneralSolution solve_general(const FullData& F, cplx lambda, const Model& model, int max_iter, double tol,
                              const std::optional<FullData>& initial) {
  F.check();
  model.require_admissible(lambda);
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "solve_general: max_iter must be >= 1");
  const double gamma = model.gamma();
  GeneralSolution out;
  NeumannState& st = out.state;
  if (gamma == 0.0) {
    out.solution = solve_gamma_zero(F, lambda, model);
    st.k = 1;
    st.current = F;
    st.converged = true;
    st.increments.push_back(0.0);
    return out;
  }
  st.current = initial ? *initial : F;
  st.current.check();
  if (!(st.current.grid == F.grid)) throw Error(ErrorKind::GridMismatch, "solve_general: initial iterate grid");
  const double ref = std::max(data_norm(F, lambda), data_norm(st.current, lambda));
  if (ref == 0.0) {
    out.solution = solve_gamma_zero(F, lambda, model);
    st.converged = true;
    return out;
  }
  int above_one = 0;
  for (st.k = 0; st.k < max_iter;) {
    const FullSolution S = solve_gamma_zero(st.current, lambda, model);
    FullData next = F;
    next.axpy(1.0, neumann_map(S, gamma));
    FullData diff = next;
    diff.axpy(-1.0, st.current);
    const double inc = data_norm(diff, lambda);
    if (!st.increments.empty()) {
      const double r = st.increment_norm > 0.0 ? inc / st.increment_norm : 0.0;
      st.ratios.push_back(r);
      above_one = r >= 1.0 ? above_one + 1 : 0;
    }
    st.increments.push_back(inc);
    st.increment_norm = inc;
    st.current = std::move(next);
    ++st.k;
    if (!std::isfinite(inc) || above_one >= 5) {
      std::ostringstream os;
      os << "Neumann iteration does not contract at lambda = " << lambda << " (gamma = " << gamma
         << "); increase |lambda|";
      throw Error(ErrorKind::NeumannDiverged, os.str());
    }
    if (inc <= tol * ref) {
      st.converged = true;
      break;
    }
  }
  out.solution = solve_gamma_zero(st.current, lambda, model);
  return out;
}

ResidualReport residual_full(const FullSolution& S, const FullData& F, const Model& model) {
  F.check();
  const FullGrid& g = S.grid;
  if (!(F.grid == g)) throw Error(ErrorKind::GridMismatch, "residual_full: grid mismatch");
  const int N = g.dim();
  const MaterialParams& p = model.params;
  const cplx lambda = S.lambda;
  std::map<std::tuple<int, int, int, int>, ScalarField> memo;
  auto D = [&](int comp, std::initializer_list<int> axes) -> const ScalarField& {
    const DerivOrder o = deriv_from_axes(N, axes);
    auto key = std::make_tuple(comp, o.t[0], o.t[1], o.n);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, S.sample(comp, o)).first;
    return it->second;
  };
  const std::size_t n = g.half_size();
  ScalarField div(n, 0.0), lap(n, 0.0);
  for (int a = 0; a < N; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      div[i] += D(a + 1, {a})[i];
      lap[i] += D(0, {a, a})[i];
    }
  const auto w = g.half().quadrature_weights();
  const std::vector<double> wt(g.tg.size(), g.tg.cell_volume());
  ResidualReport rep;

  ScalarField mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = lambda * D(0, {})[i] + div[i] - F.d.v[i];
  rep.rows.push_back({"mass", max_abs(mass), weighted_norm(mass, w)});

  double mm = 0.0, ml = 0.0;
  for (int J = 0; J < N; ++J) {
    ScalarField r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = lambda * D(J + 1, {})[i] + p.gamma * D(0, {J})[i] - F.f[J].v[i];
    for (int a = 0; a < N; ++a) {
      const ScalarField& uaa = D(J + 1, {a, a});
      const ScalarField& uaj = D(a + 1, {a, J});
      const ScalarField& raaj = D(0, {J, a, a});
      for (std::size_t i = 0; i < n; ++i) r[i] -= p.mu * uaa[i] + p.nu * uaj[i] + p.kappa * raaj[i];
    }
    mm = std::max(mm, max_abs(r));
    ml += weighted_norm_sq(r, w);
  }
  rep.rows.push_back({"momentum", mm, std::sqrt(ml)});

  const std::size_t T = g.tg.size();
  double sm = 0.0, sl = 0.0;
  for (int J = 0; J < N; ++J) {
    ScalarField r(n);
    if (J < N - 1) {
      for (std::size_t i = 0; i < n; ++i) r[i] = -p.mu * (D(N, {J})[i] + D(J + 1, {N - 1})[i]);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        r[i] = -(2.0 * p.mu * D(N, {N - 1})[i] + (p.nu - p.mu) * div[i] + p.kappa * lap[i] - p.gamma * D(0, {})[i]);
    }
    ScalarField rt = trace(r, g);
    const ScalarField gt = trace(F.g[J].v, g);
    for (std::size_t t = 0; t < T; ++t) rt[t] -= gt[t];
    sm = std::max(sm, max_abs(rt));
    sl += weighted_norm_sq(rt, wt);
  }
  rep.rows.push_back({"stress", sm, std::sqrt(sl)});

  ScalarField nr = trace(D(0, {N - 1}), g);
  const ScalarField ht = trace(F.h.v, g);
  for (std::size_t t = 0; t < T; ++t) nr[t] = -nr[t] - ht[t];
  rep.rows.push_back({"neumann", max_abs(nr), weighted_norm(nr, wt)});

  double dn = weighted_norm_sq(F.d.v, w);
  for (const auto& c : F.f) dn += weighted_norm_sq(c.v, w);
  for (const auto& c : F.g) dn += weighted_norm_sq(trace(c.v, g), wt);
  dn += weighted_norm_sq(ht, wt);
  rep.data_norm = std::sqrt(dn);
  return rep;
}

// Random data and contraction -------------------------------------------------------

FullData random_full_data(const FullGrid& grid, std::uint64_t seed, int modes) {
  grid.check();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> index(-modes, modes);
  std::uniform_real_distribution<double> centre(0.3 * grid.H, 0.6 * grid.H);
  const int N = grid.dim();
  const HalfGrid hg = grid.half();
  auto field = [&](bool interior) {
    AtomField a;
    for (int m = 0; m < modes; ++m) {
      Atom at;
      at.amp = cplx(normal(rng), normal(rng));
      for (int d = 0; d < grid.tg.dim_t; ++d) at.k.push_back(2.0 * kPi * index(rng) / grid.tg.L);
      at.profile = interior ? Profile::gauss(centre(rng), 0.08 * grid.H) : Profile::gauss(0.0, 0.15 * grid.H);
      a.atoms.push_back(at);
    }
    return a;
  };
  FullData F;
  F.grid = grid;
  F.d = field(true).sampled(hg, 1);
  for (int J = 0; J < N; ++J) F.f.push_back(field(true).sampled(hg, 0));
  for (int J = 0; J < N; ++J) F.g.push_back(field(false).sampled(hg, 1));
  F.h = field(false).sampled(hg, 2);
  return F;
}

double contraction_ratio(const FullData& F, cplx lambda, const Model& model) {
  const double nf = data_norm(F, lambda);
  if (nf == 0.0) throw Error(ErrorKind::ZeroDenominator, "contraction_ratio: zero data");
  const FullSolution S = solve_gamma_zero(F, lambda, model);
  return data_norm(neumann_map(S, model.gamma()), lambda) / nf;
}

std::vector<ProbeRow> contraction_probe(const Model& model, const Sector& sector, const std::vector<cplx>& lambdas,
                                        const FullGrid& grid, std::uint64_t seed) {
  const FullData F = random_full_data(grid, seed);
  std::vector<ProbeRow> rows;
  for (cplx l : lambdas) {
    if (!sector.contains(l)) throw Error(ErrorKind::LambdaOutsideSector, "contraction_probe: lambda outside the sector");
    rows.push_back({l, contraction_ratio(F, l, model)});
  }
  return rows;
}

Lambda0Selection select_lambda0(const Model& model, const FullGrid& grid, double angle, std::uint64_t seed,
                                double target, double start, int max_doublings) {
  const FullData F = random_full_data(grid, seed);
  Lambda0Selection sel;
  double r = start;
  for (sel.doublings = 0; sel.doublings <= max_doublings; ++sel.doublings, r *= 2.0) {
    sel.lambda = std::polar(r, angle);
    sel.ratio = contraction_ratio(F, sel.lambda, model);
    if (sel.ratio <= target) return sel;
  }
  throw Error(ErrorKind::NeumannDiverged, "select_lambda0: no contraction found within the doubling budget");
}

}  // namespace korteweg
