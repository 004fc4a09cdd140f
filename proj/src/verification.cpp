#include "korteweg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "korteweg/parallel.hpp"

namespace korteweg {

ManufacturedAtoms manufactured_atoms(const ManufacturedPair& star, cplx lambda, const Model& model) {
  const int N = static_cast<int>(star.u.size());
  if (N < 2 || N > 3) throw Error(ErrorKind::InvalidArgument, "manufactured pair needs 2 or 3 velocity components");
  const MaterialParams& p = model.params;
  const AtomField& rho = star.rho;
  AtomField div, lap;
  for (int a = 0; a < N; ++a) {
    div.add(1.0, star.u[a].d(N, {a}));
    lap.add(1.0, rho.d(N, {a, a}));
  }
  ManufacturedAtoms m;
  m.d.add(lambda, rho).add(1.0, div);
  for (int J = 0; J < N; ++J) {
    AtomField f;
    f.add(lambda, star.u[J]).add(p.gamma, rho.d(N, {J}));
    for (int a = 0; a < N; ++a) {
      f.add(-p.mu, star.u[J].d(N, {a, a}));
      f.add(-p.nu, star.u[a].d(N, {J, a}));
      f.add(-p.kappa, rho.d(N, {J, a, a}));
    }
    m.f.push_back(std::move(f));
  }
  for (int j = 0; j < N - 1; ++j) {
    AtomField g;
    g.add(-p.mu, star.u[N - 1].d(N, {j})).add(-p.mu, star.u[j].d(N, {N - 1}));
    m.g.push_back(std::move(g));
  }
  AtomField gN;
  gN.add(-2.0 * p.mu, star.u[N - 1].d(N, {N - 1})).add(-(p.nu - p.mu), div).add(-p.kappa, lap).add(p.gamma, rho);
  m.g.push_back(std::move(gN));
  m.h.add(-1.0, rho.d(N, {N - 1}));
  return m;
}

FullData manufactured_data(const ManufacturedPair& star, const FullGrid& grid, cplx lambda, const Model& model) {
  grid.check();
  if (static_cast<int>(star.u.size()) != grid.dim())
    throw Error(ErrorKind::GridMismatch, "manufactured_data: pair dimension does not match the grid");
  const ManufacturedAtoms m = manufactured_atoms(star, lambda, model);
  const HalfGrid hg = grid.half();
  FullData F;
  F.grid = grid;
  F.d = m.d.sampled(hg, 1);
  for (const auto& c : m.f) F.f.push_back(c.sampled(hg, 0));
  for (const auto& c : m.g) F.g.push_back(c.sampled(hg, 1));
  F.h = m.h.sampled(hg, 2);
  return F;
}

ManufacturedPair homogeneous_mode(const std::vector<double>& k, cplx lambda, const std::vector<cplx>& g0, cplx h0,
                                  const Model& model) {
  const ModeSolution ms = coefficients_direct(k, lambda, g0, h0, model);
  auto atom = [&](cplx amp, cplx z) {
    Atom a;
    a.amp = amp;
    a.k = k;
    a.profile = Profile::exp(z);
    return a;
  };
  ManufacturedPair p;
  p.rho.atoms = {atom(ms.rho_a1, ms.t1), atom(ms.rho_a2, ms.t2)};
  for (std::size_t J = 0; J < g0.size(); ++J) {
    AtomField u;
    u.atoms = {atom(ms.alpha[J] - ms.beta[J] - ms.gamma[J], ms.omega), atom(ms.beta[J], ms.t1),
               atom(ms.gamma[J], ms.t2)};
    p.u.push_back(std::move(u));
  }
  return p;
}

ManufacturedPair random_manufactured_pair(const FullGrid& grid, cplx lambda, const Model& model, std::uint64_t seed) {
  grid.check();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> index(-3, 3);
  const int N = grid.dim();
  auto cnormal = [&] { return cplx(normal(rng), normal(rng)); };
  auto wavevector = [&] {
    std::vector<double> k;
    for (int d = 0; d < grid.tg.dim_t; ++d) k.push_back(2.0 * kPi * index(rng) / grid.tg.L);
    return k;
  };
  auto bumps = [&] {
    AtomField a;
    for (int m = 0; m < 3; ++m) a.atoms.push_back(Atom{cnormal(), wavevector(), Profile::gauss(0.5 * grid.H, 0.04 * grid.H), {}});
    return a;
  };
  ManufacturedPair p;
  p.rho = bumps();
  for (int J = 0; J < N; ++J) p.u.push_back(bumps());
  for (int m = 0; m < 3; ++m) {
    std::vector<cplx> g0(N);
    for (auto& v : g0) v = cnormal();
    const ManufacturedPair h = homogeneous_mode(wavevector(), lambda, g0, cnormal(), model);
    p.rho.add(1.0, h.rho);
    for (int J = 0; J < N; ++J) p.u[J].add(1.0, h.u[J]);
  }
  return p;
}

double relative_error(const FullSolution& S, const ManufacturedPair& star) {
  const HalfGrid hg = S.grid.half();
  const auto w = hg.quadrature_weights();
  double num = 0.0, den = 0.0;
  for (int c = 0; c <= static_cast<int>(star.u.size()); ++c) {
    const ScalarField ex = c == 0 ? star.rho.sample(hg) : star.u[c - 1].sample(hg);
    ScalarField diff = S.sample(c);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= ex[i];
    num += weighted_norm_sq(diff, w);
    den += weighted_norm_sq(ex, w);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

WholeManufactured random_whole_pair(const BoxGrid& grid, cplx lambda, const Model& model, std::uint64_t seed,
                                    int kmax) {
  grid.check();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int N = grid.dim;
  auto field = [&] {
    ScalarField hat(grid.size(), 0.0);
    std::vector<int> idx(N, 0);
    for (std::size_t flat = 0; flat < hat.size(); ++flat) {
      bool inside = true;
      for (int a = 0; a < N; ++a) {
        const int k = idx[a] < grid.counts[a] / 2 ? idx[a] : idx[a] - grid.counts[a];
        inside = inside && std::abs(k) <= kmax;
      }
      if (inside) hat[flat] = cplx(normal(rng), normal(rng));
      for (int a = N - 1; a >= 0; --a) {
        if (++idx[a] < grid.counts[a]) break;
        idx[a] = 0;
      }
    }
    fft_inverse(hat, grid.counts);
    return hat;
  };
  WholeManufactured m;
  m.star.grid = grid;
  m.star.rho = field();
  for (int a = 0; a < N; ++a) m.star.u.push_back(field());
  m.data = apply_whole_operator(m.star, lambda, model);
  return m;
}

BoundaryData random_boundary_data(const TangentialGrid& tg, std::uint64_t seed, int kmax) {
  tg.check();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::vector<int> shape(tg.dim_t, tg.M);
  auto field = [&] {
    ScalarField hat(tg.size(), 0.0);
    for (std::size_t m = 0; m < hat.size(); ++m) {
      bool inside = true;
      for (int k : tg.lattice_index(m)) inside = inside && std::abs(k) <= kmax;
      if (inside) hat[m] = cplx(normal(rng), normal(rng));
    }
    fft_inverse(hat, shape);
    return hat;
  };
  BoundaryData b;
  for (int J = 0; J <= tg.dim_t; ++J) b.g.push_back(field());
  b.h = field();
  return b;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (y.size() != n || n < 2) throw Error(ErrorKind::InvalidArgument, "spearman: need two samples of equal length >= 2");
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Rademacher averages ---------------------------------------------------------------

namespace {

// Re<v_j, v_k> for all pairs.
std::vector<double> real_gram(const std::vector<std::vector<cplx>>& v) {
  const std::size_t m = v.size();
  for (const auto& x : v)
    if (x.size() != v[0].size()) throw Error(ErrorKind::GridMismatch, "rademacher: vectors differ in length");
  std::vector<double> G(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j; k < m; ++k) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < v[j].size(); ++i) s += std::conj(v[j][i]) * v[k][i];
      G[j * m + k] = G[k * m + j] = s.real();
    }
  return G;
}

// E||sum s_j v_j||^2 over the members of `subset` (bit mask), from the Gram matrix.
double mean_square_from_gram(const std::vector<double>& G, std::size_t m, std::uint64_t subset, RademacherMode mode,
                             std::size_t draws, std::uint64_t seed) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < m; ++j)
    if ((subset >> j) & 1u) idx.push_back(j);
  const std::size_t q = idx.size();
  if (q == 0) return 0.0;
  auto quad = [&](std::uint64_t signs) {
    double acc = 0.0;
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        const double g = G[idx[a] * m + idx[b]];
        acc += (((signs >> a) ^ (signs >> b)) & 1u) ? -g : g;
      }
    return acc;
  };
  double acc = 0.0;
  if (mode == RademacherMode::Exact) {
    if (q > 10) throw Error(ErrorKind::InvalidArgument, "exact Rademacher enumeration is limited to m <= 10");
    const std::uint64_t n = std::uint64_t{1} << q;
    for (std::uint64_t s = 0; s < n; ++s) acc += quad(s);
    return acc / static_cast<double>(n);
  }
  if (draws == 0) throw Error(ErrorKind::InvalidArgument, "Monte-Carlo Rademacher average needs draws > 0");
  if (q > 64) throw Error(ErrorKind::InvalidArgument, "Monte-Carlo Rademacher average is limited to m <= 64");
  std::mt19937_64 rng(seed);
  for (std::size_t d = 0; d < draws; ++d) acc += quad(rng());
  return acc / static_cast<double>(draws);
}

std::uint64_t all_of(std::size_t m) { return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1; }

}  // namespace

double rademacher_mean_square(const std::vector<std::vector<cplx>>& v, RademacherMode mode, std::size_t draws,
                              std::uint64_t seed) {
  if (v.empty()) return 0.0;
  if (mode == RademacherMode::MonteCarlo && v.size() > 64)
    throw Error(ErrorKind::InvalidArgument, "Monte-Carlo Rademacher average is limited to m <= 64");
  return mean_square_from_gram(real_gram(v), v.size(), all_of(v.size()), mode, draws, seed);
}

double rademacher_ratio(const std::vector<std::vector<cplx>>& Tf, const std::vector<std::vector<cplx>>& f,
                        RademacherMode mode, std::size_t draws, std::uint64_t seed) {
  if (Tf.size() != f.size()) throw Error(ErrorKind::InvalidArgument, "rademacher_ratio: list lengths differ");
  const double den = rademacher_mean_square(f, mode, draws, seed);
  if (!(den > 0.0)) throw Error(ErrorKind::ZeroDenominator, "rademacher_ratio: all inputs vanish");
  return std::sqrt(std::max(0.0, rademacher_mean_square(Tf, mode, draws, seed)) / den);
}

std::vector<cplx> lambda_derivative_family(const LambdaOperator& op, cplx lambda, const Sector& sector,
                                           double rel_step) {
  if (!(rel_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda_derivative_family: step must be positive");
  for (double s : {1.0 + rel_step, 1.0 - rel_step})
    if (!sector.contains(lambda * s)) {
      std::ostringstream os;
      os << "lambda (1 +- " << rel_step << ") leaves the sector at lambda = " << lambda;
      throw Error(ErrorKind::StepOutsideSector, os.str());
    }
  // lambda d/dlambda F = dF(lambda (1 + e))/de at e = 0
  auto central = [&](double h) {
    std::vector<cplx> p = op(lambda * (1.0 + h));
    const std::vector<cplx> m = op(lambda * (1.0 - h));
    if (p.size() != m.size()) throw Error(ErrorKind::GridMismatch, "lambda_derivative_family: operator output size");
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (p[i] - m[i]) / (2.0 * h);
    return p;
  };
  const std::vector<cplx> coarse = central(rel_step);
  std::vector<cplx> fine = central(0.5 * rel_step);
  for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return fine;
}

// R-bounds ---------------------------------------------------------------------------

std::string family_id(RFamily f, int n) {
  std::string base = f == RFamily::SA ? "S_lambda A" : "T_lambda B";
  return n == 0 ? base : "(lambda d/dlambda) " + base;
}

std::vector<cplx> family_blocks(const FullSolution& S, RFamily f) {
  const FullGrid& g = S.grid;
  const int N = g.dim();
  const auto w = g.half().quadrature_weights();
  std::vector<double> sw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sw[i] = std::sqrt(w[i]);
  const cplx lh = std::sqrt(S.lambda);
  std::vector<cplx> out;
  auto push = [&](const ScalarField& v, cplx c) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(c * sw[i] * v[i]);
  };
  if (f == RFamily::SA) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) push(S.sample(0, deriv_from_axes(N, {a, b, c})), 1.0);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) push(S.sample(0, deriv_from_axes(N, {a, b})), lh);
    push(S.sample(0), S.lambda);
    for (int a = 0; a < N; ++a) push(S.sample(0, deriv_from_axes(N, {a})), S.lambda);
  } else {
    for (int J = 1; J <= N; ++J) {
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) push(S.sample(J, deriv_from_axes(N, {a, b})), 1.0);
      for (int a = 0; a < N; ++a) push(S.sample(J, deriv_from_axes(N, {a})), lh);
      push(S.sample(J), S.lambda);
    }
  }
  return out;
}

std::vector<cplx> data_vector(const FullData& F, cplx lambda) {
  const auto w = F.grid.half().quadrature_weights();
  std::vector<cplx> out;
  for (const auto& b : data_blocks(F, lambda))
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(std::sqrt(w[i]) * b[i]);
  return out;
}

double RBoundEstimate::bound_after(int t) const {
  double b = 0.0;
  for (int i = 0; i < t && i < static_cast<int>(trial_ratios.size()); ++i) b = std::max(b, trial_ratios[i]);
  return b;
}

std::vector<RBoundEstimate> estimate_rbounds(const std::vector<std::pair<RFamily, int>>& families,
                                             const RBoundOptions& opt, const Model& model) {
  opt.grid.check();
  if (opt.m_max < 1 || opt.trials < 1) throw Error(ErrorKind::InvalidArgument, "rbound: m_max and trials must be >= 1");
  if (opt.m_max > 10) throw Error(ErrorKind::InvalidArgument, "rbound: m_max is limited to 10");
  for (const auto& [f, n] : families)
    if (n != 0 && n != 1) throw Error(ErrorKind::InvalidArgument, "rbound: n must be 0 or 1");
  const double lo = std::max(opt.sector.delta, 1e-2) * (1.0 + 4.0 * opt.rel_step) * 1.001;
  if (!(opt.lambda_max > lo)) throw Error(ErrorKind::InvalidArgument, "rbound: lambda_max must exceed the sector floor");
  const double arg_max = (kPi - opt.sector.sigma) * (1.0 - 1e-9);
  if (!(arg_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "rbound: sector angle must be below pi");

  auto solve = [&](const FullData& F, cplx l) {
    return opt.general ? solve_general(F, l, model).solution : solve_gamma_zero(F, l, model);
  };
  const std::size_t nf = families.size();
  // ratios[trial][family]
  std::vector<std::vector<double>> ratios(opt.trials, std::vector<double>(nf, 0.0));
  parallel_for(static_cast<std::size_t>(opt.trials), [&](std::size_t t) {
    std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> logmod(std::log(lo), std::log(opt.lambda_max));
    std::uniform_real_distribution<double> arg(-arg_max, arg_max);
    std::vector<std::vector<cplx>> in;
    std::vector<std::vector<std::vector<cplx>>> out(nf);
    for (int j = 0; j < opt.m_max; ++j) {
      const cplx l = std::polar(std::exp(logmod(rng)), arg(rng));
      const FullData F = random_full_data(opt.grid, rng());
      in.push_back(data_vector(F, l));
      bool need0 = false, need1 = false;
      for (const auto& fam : families) (fam.second == 0 ? need0 : need1) = true;
      auto both = [&](cplx lam) {
        const FullSolution S = solve(F, lam);
        std::vector<cplx> a = family_blocks(S, RFamily::SA);
        const std::vector<cplx> b = family_blocks(S, RFamily::TB);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      };
      std::vector<cplx> v0, v1;
      if (need0) v0 = both(l);
      if (need1) v1 = lambda_derivative_family(both, l, opt.sector, opt.rel_step);
      for (std::size_t q = 0; q < nf; ++q) {
        const auto& [fam, n] = families[q];
        const std::vector<cplx>& v = n == 0 ? v0 : v1;
        // SA blocks come first; their length is N^3 + N^2 + 1 + N fields.
        const int N = opt.grid.dim();
        const std::size_t len_sa = static_cast<std::size_t>(N * N * N + N * N + 1 + N) * opt.grid.half_size();
        if (fam == RFamily::SA)
          out[q].emplace_back(v.begin(), v.begin() + len_sa);
        else
          out[q].emplace_back(v.begin() + len_sa, v.end());
      }
    }
    // Every nonempty subset of the drawn configuration is itself an
    // admissible choice of (lambda_j, F_j) with m <= m_max.
    const std::size_t m = in.size();
    const std::vector<double> Gin = real_gram(in);
    for (std::size_t q = 0; q < nf; ++q) {
      const std::vector<double> Gout = real_gram(out[q]);
      double best = 0.0;
      for (std::uint64_t mask = 1; mask <= all_of(m); ++mask) {
        const double den = mean_square_from_gram(Gin, m, mask, RademacherMode::Exact, 0, 0);
        if (!(den > 0.0)) throw Error(ErrorKind::ZeroDenominator, "rbound: random data vanished");
        const double num = mean_square_from_gram(Gout, m, mask, RademacherMode::Exact, 0, 0);
        best = std::max(best, std::sqrt(std::max(0.0, num) / den));
      }
      ratios[t][q] = best;
    }
  });
  std::ostringstream sec;
  sec << "sigma=" << opt.sector.sigma << " delta=" << opt.sector.delta << " |lambda| in [" << lo << ", "
      << opt.lambda_max << "]";
  std::vector<RBoundEstimate> est(nf);
  for (std::size_t q = 0; q < nf; ++q) {
    RBoundEstimate& e = est[q];
    e.family = families[q].first;
    e.n = families[q].second;
    e.family_id = family_id(e.family, e.n);
    e.m_max = opt.m_max;
    e.trials = opt.trials;
    e.sector = sec.str();
    for (int t = 0; t < opt.trials; ++t) e.trial_ratios.push_back(ratios[t][q]);
    e.estimated_bound = e.bound_after(opt.trials);
  }
  return est;
}

RBoundEstimate estimate_rbound(RFamily family, int n, const RBoundOptions& opt, const Model& model) {
  return estimate_rbounds({{family, n}}, opt, model).front();
}

}  // namespace korteweg
