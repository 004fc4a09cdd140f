#include "korteweg/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "korteweg/parallel.hpp"

namespace korteweg {

namespace {

cplx principal_sqrt(cplx z, const char* what) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    std::ostringstream os;
    os << what << ": radicand " << z << " lies on the branch cut (-inf, 0]";
    throw Error(ErrorKind::BranchCutHit, os.str());
  }
  return std::sqrt(z);
}

double scale_of(double xi2, cplx lambda) { return std::sqrt(std::abs(lambda)) + std::sqrt(xi2); }

}  // namespace

cplx omega_lambda(double xi2, cplx lambda, double mu) {
  return principal_sqrt(xi2 + lambda / mu, "omega_lambda");
}

std::pair<cplx, cplx> roots_t(double xi2, cplx lambda, const DerivedConstants& dc) {
  return {principal_sqrt(xi2 + dc.s1 * lambda, "roots_t"),
          principal_sqrt(xi2 + dc.s2 * lambda, "roots_t")};
}

cplx root_gap(const RootSet& rs, cplx lambda, const DerivedConstants& dc) {
  return (dc.s2 - dc.s1) * lambda / (rs.t1 + rs.t2);
}

RootSet roots(double xi2, cplx lambda, const Model& model) {
  RootSet rs;
  rs.omega = omega_lambda(xi2, lambda, model.mu());
  std::tie(rs.t1, rs.t2) = roots_t(xi2, lambda, model.dc);
  return rs;
}

cplx whole_space_symbol_P(double xi2, cplx lambda, const MaterialParams& p) {
  return lambda * lambda + (p.mu + p.nu) * lambda * xi2 + p.kappa * xi2 * xi2;
}

std::pair<cplx, cplx> whole_space_lambda_roots(double xi2, const Model& model) {
  return {-model.kappa() * model.dc.s1 * xi2, -model.kappa() * model.dc.s2 * xi2};
}

cplx normal_polynomial(cplx t, double xi2, cplx lambda, const MaterialParams& p) {
  const cplx y = t * t - xi2;
  return lambda * lambda - lambda * (p.mu + p.nu) * y + p.kappa * y * y;
}

namespace {

// W2^2 - 4 t w |xi'|^2 with W2 = omega^2 + |xi'|^2. The two terms agree to
// leading order when |lambda| << |xi'|^2; the rationalised numerator is
// free of that cancellation because s_j != 1/mu.
cplx lopatinskii_A(double X, cplx W2, cplx t, cplx w, cplx a, cplx c) {
  const cplx W4 = W2 * W2;
  const cplx direct = W4 - 4.0 * t * w * X;
  if (std::abs(direct) >= 0.5 * std::abs(W4)) return direct;
  const cplx num = 16.0 * X * X * X * (c - a) + X * X * (24.0 * c * c - 16.0 * a * c) + 8.0 * X * c * c * c +
                   c * c * c * c;
  return num / (W4 + 4.0 * t * w * X);
}

}  // namespace

Lopatinskii lopatinskii(double xi2, cplx lambda, const Model& model) {
  Lopatinskii out;
  const RootSet rs = roots(xi2, lambda, model);
  out.roots = rs;
  const cplx w = rs.omega, t1 = rs.t1, t2 = rs.t2;
  const cplx W2 = 2.0 * xi2 + lambda / model.mu();  // omega^2 + |xi'|^2
  const cplx s1l = model.dc.s1 * lambda;  // t1^2 - |xi'|^2
  const cplx s2l = model.dc.s2 * lambda;  // t2^2 - |xi'|^2
  const cplx c = lambda / model.mu();      // omega^2 - |xi'|^2
  const cplx A1 = lopatinskii_A(xi2, W2, t1, w, s1l, c);
  const cplx A2 = lopatinskii_A(xi2, W2, t2, w, s2l, c);
  out.L = {{{t2 * A1, t1 * A2}, {s1l, s2l}}};
  out.L11 = s2l;
  out.L12 = -t1 * A2;
  out.L21 = -s1l;
  out.L22 = t2 * A1;
  out.det_direct = out.L[0][0] * out.L[1][1] - out.L[0][1] * out.L[1][0];
  const FrakSymbols fs = frak_symbols(xi2, lambda, rs, model);
  out.det_factored = lambda * root_gap(rs, lambda, model.dc) * fs.l[0] / (t1 * (t1 + w));
  return out;
}

FrakSymbols frak_symbols(double xi2, cplx lambda, const Model& model) {
  return frak_symbols(xi2, lambda, roots(xi2, lambda, model), model);
}

FrakSymbols frak_symbols(double xi2, cplx lambda, const RootSet& rs, const Model& model) {
  FrakSymbols fs;
  const double imu = 1.0 / model.mu();
  const cplx w = rs.omega, t1 = rs.t1, t2 = rs.t2;
  const cplx s1 = model.dc.s1, s2 = model.dc.s2;
  const cplx t1sq = xi2 + s1 * lambda, t2sq = xi2 + s2 * lambda;
  const cplx sum_sq = t2sq + t2 * t1 + t1sq - xi2;
  for (int j = 0; j < 2; ++j) {
    const cplx tj = j == 0 ? t1 : t2;
    const cplx sj = j == 0 ? s1 : s2;
    fs.m[j] = imu * imu * lambda * (tj + w) - 4.0 * (sj - imu) * xi2 * w;
    fs.p[j] = (4.0 * sj - 3.0 * imu) * w + imu * tj;
    fs.q[j] = (2.0 * sj - imu) * w + imu * tj;
    fs.l[j] = imu * imu * lambda * tj * (tj + w) * sum_sq +
              4.0 * w * xi2 * (sj * tj * w * (tj + w) - (sj - imu) * t1 * t2 * (t2 + t1));
    fs.r[j] = (sj - imu) * (t2 + t1) / ((s2 - s1) * (tj + w));
  }
  fs.a = s1 * s2 * (t2 + t1) / (s2 - s1);
  fs.b = (t2 + t1) / (s2 - s1);
  return fs;
}

QuotientForms quotient_forms(double xi2, cplx lambda, const Model& model) {
  QuotientForms q;
  const Lopatinskii lop = lopatinskii(xi2, lambda, model);
  const RootSet& rs = lop.roots;
  const cplx w = rs.omega;
  const cplx W2 = w * w + xi2;
  for (int j = 0; j < 2; ++j) {
    const cplx tj = rs.t(j + 1);
    q.m[j] = (tj + w) * (W2 * W2 - 4.0 * tj * w * xi2) / lambda;
    q.p[j] = (tj + w) * (4.0 * tj * w - 3.0 * w * w - xi2) / lambda;
    q.q[j] = (tj + w) * (2.0 * tj * w - w * w - xi2) / lambda;
    q.l[j] = lop.det_direct * tj * (tj + w) / (lambda * (rs.t2 - rs.t1));
  }
  return q;
}

double lopatinskii_scaled(const FrakSymbols& fs, double xi2, cplx lambda) {
  const double sc = std::pow(scale_of(xi2, lambda), 6);
  return std::min(std::abs(fs.l[0]), std::abs(fs.l[1])) / sc;
}

// Kernels -------------------------------------------------------------------------

cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx divided_exp_direct(cplx a, cplx b, double x) {
  // e^{-a x} (e^{-(b-a) x} - 1) / (b - a), with an accurate expm1.
  const cplx d = b - a;
  if (d == cplx(0.0)) return -x * std::exp(-a * x);
  return std::exp(-a * x) * expm1c(-d * x) / d;
}

namespace {
struct GaussLegendre16 {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 1.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};
const GaussLegendre16& gl16() {
  static const GaussLegendre16 rule;
  return rule;
}
}  // namespace

const std::array<double, 16>& gauss_legendre_nodes() { return gl16().nodes; }
const std::array<double, 16>& gauss_legendre_weights() { return gl16().weights; }

cplx divided_exp_quadrature(cplx a, cplx b, double x) {
  // -x * int_0^1 exp(-(theta b + (1 - theta) a) x) dtheta
  const auto& nodes = gauss_legendre_nodes();
  const auto& weights = gauss_legendre_weights();
  cplx sum = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double theta = 0.5 * (nodes[i] + 1.0);
    sum += 0.5 * weights[i] * std::exp(-(theta * b + (1.0 - theta) * a) * x);
  }
  return -x * sum;
}

cplx divided_exp(cplx a, cplx b, double x, double eps) {
  if (std::abs(b - a) > eps * (std::abs(a) + std::abs(b))) return divided_exp_direct(a, b, x);
  return divided_exp_quadrature(a, b, x);
}

cplx frak_r(int j, const RootSet& rs, const Model& model) {
  const cplx sj = model.s(j);
  const cplx tj = rs.t(j);
  return (sj - 1.0 / model.mu()) * (rs.t2 + rs.t1) / ((model.dc.s2 - model.dc.s1) * (tj + rs.omega));
}

cplx kernel_M(int j, double x, const RootSet& rs, const Model& model, double eps) {
  if (j == 0) return divided_exp(rs.t1, rs.t2, x, eps);
  if (j != 1 && j != 2) throw Error(ErrorKind::InvalidArgument, "kernel_M: j must be 0, 1 or 2");
  return frak_r(j, rs, model) * divided_exp(rs.omega, rs.t(j), x, eps);
}

cplx kernel_M_derivative(int j, double x, const RootSet& rs, const Model& model) {
  if (j == 0) return -rs.t2 * kernel_M(0, x, rs, model) - std::exp(-rs.t1 * x);
  return -rs.t(j) * kernel_M(j, x, rs, model) - frak_r(j, rs, model) * std::exp(-rs.omega * x);
}

// Scans ------------------------------------------------------------------------------

const char* to_string(ScanTarget t) {
  switch (t) {
    case ScanTarget::P: return "P";
    case ScanTarget::L1: return "l1";
    case ScanTarget::L2: return "l2";
    case ScanTarget::ReOmega: return "re_omega";
    case ScanTarget::ReT1: return "re_t1";
    case ScanTarget::ReT2: return "re_t2";
    case ScanTarget::DetL: return "detL";
  }
  return "?";
}

ScanTarget scan_target_from_string(const std::string& s) {
  for (ScanTarget t : {ScanTarget::P, ScanTarget::L1, ScanTarget::L2, ScanTarget::ReOmega,
                       ScanTarget::ReT1, ScanTarget::ReT2, ScanTarget::DetL}) {
    if (s == to_string(t)) return t;
  }
  throw Error(ErrorKind::ConfigError, "unknown scan target '" + s + "'");
}

int homogeneity_power(ScanTarget t) {
  switch (t) {
    case ScanTarget::P: return 4;
    case ScanTarget::L1:
    case ScanTarget::L2:
    case ScanTarget::DetL: return 6;
    default: return 1;
  }
}

ScanGrid ScanGrid::refined() const {
  ScanGrid g = *this;
  g.n_lambda = 2 * n_lambda - 1;
  g.n_angle = 2 * n_angle - 1;
  g.n_xi = 2 * n_xi - 1;
  return g;
}

namespace {
std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 0 || !(lo > 0.0) || !(hi >= lo)) return v;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v.push_back(std::exp(a + (b - a) * i / (n - 1)));
  return v;
}
}  // namespace

std::vector<double> ScanGrid::lambda_moduli(double delta) const {
  const double lo = delta > 0.0 ? delta : lambda_floor;
  if (!(lambda_max > lo)) return {};
  return logspace(lo, lambda_max, n_lambda);
}

std::vector<double> ScanGrid::angles(double sigma) const {
  std::vector<double> v;
  const double edge = kPi - sigma;
  if (n_angle <= 0) return v;
  if (n_angle == 1) return {0.0};
  for (int i = 0; i < n_angle; ++i) v.push_back(-edge + 2.0 * edge * i / (n_angle - 1));
  return v;
}

std::vector<double> ScanGrid::xi_moduli() const { return logspace(xi_min, xi_max, n_xi); }

double scan_ratio(ScanTarget target, double xi, cplx lambda, const Model& model) {
  const double xi2 = xi * xi;
  const double sc = scale_of(xi2, lambda);
  switch (target) {
    case ScanTarget::P:
      return std::abs(whole_space_symbol_P(xi2, lambda, model.params)) / std::pow(sc, 4);
    case ScanTarget::L1:
    case ScanTarget::L2: {
      const FrakSymbols fs = frak_symbols(xi2, lambda, model);
      return std::abs(fs.l[target == ScanTarget::L1 ? 0 : 1]) / std::pow(sc, 6);
    }
    case ScanTarget::ReOmega: return omega_lambda(xi2, lambda, model.mu()).real() / sc;
    case ScanTarget::ReT1: return roots_t(xi2, lambda, model.dc).first.real() / sc;
    case ScanTarget::ReT2: return roots_t(xi2, lambda, model.dc).second.real() / sc;
    case ScanTarget::DetL: {
      const Lopatinskii lop = lopatinskii(xi2, lambda, model);
      const RootSet& rs = lop.roots;
      // |det L| t1 (t1 + omega) / (lambda (t2 - t1)) = |l1|
      const cplx l1 = lop.det_factored * rs.t1 * (rs.t1 + rs.omega) / (lambda * root_gap(rs, lambda, model.dc));
      return std::abs(l1) / std::pow(sc, 6);
    }
  }
  return 0.0;
}

namespace {

struct ScanPoint {
  double v, xi, mod, th;
};

double safe_ratio(ScanTarget target, double xi, cplx lambda, const Model& model) {
  const double v = scan_ratio(target, xi, lambda, model);
  return std::isnan(v) ? 0.0 : v;
}

// Bounded compass search in (log xi, arg lambda) at fixed |lambda|. The scaled
// ratio is homogeneous of degree 0, so these two coordinates suffice.
ScanPoint polish(ScanTarget target, ScanPoint p, double du0, double dth0, double u_lo, double u_hi, double edge,
                 const Model& model) {
  double u = std::log(p.xi), du = du0, dth = dth0;
  auto eval = [&](double uu, double th) {
    return safe_ratio(target, std::exp(uu), std::polar(p.mod, th), model);
  };
  for (int it = 0; it < 4000 && (du > 1e-10 || dth > 1e-12); ++it) {
    bool moved = false;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        const double uu = std::clamp(u + a * du, u_lo, u_hi);
        const double th = std::clamp(p.th + b * dth, -edge, edge);
        const double v = eval(uu, th);
        if (v < p.v) {
          p.v = v;
          u = uu;
          p.th = th;
          moved = true;
        }
      }
    if (!moved) {
      du *= 0.5;
      dth *= 0.5;
    }
  }
  p.xi = std::exp(u);
  return p;
}

}  // namespace

ScanResult scan_lower_bound(ScanTarget target, const Sector& sector, const ScanGrid& grid,
                            const Model& model) {
  const auto mods = grid.lambda_moduli(sector.delta);
  const auto angs = grid.angles(sector.sigma);
  const auto xis = grid.xi_moduli();
  if (mods.empty() || angs.empty() || xis.empty())
    throw Error(ErrorKind::EmptyGrid, "scan grid has no points");
  const std::size_t per_row = angs.size() * xis.size();
  std::vector<ScanPoint> pts(mods.size() * per_row);
  parallel_for(mods.size(), [&](std::size_t i) {
    std::size_t k = i * per_row;
    for (double th : angs)
      for (double xi : xis) pts[k++] = {safe_ratio(target, xi, std::polar(mods[i], th), model), xi, mods[i], th};
  });
  // Stable order keeps ties deterministic.
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t seeds = std::min<std::size_t>(grid.polish_seeds, order.size());
  std::partial_sort(order.begin(), order.begin() + std::max<std::size_t>(seeds, 1), order.end(),
                    [&](std::size_t a, std::size_t b) { return pts[a].v < pts[b].v || (pts[a].v == pts[b].v && a < b); });
  ScanResult res;
  res.target = target;
  res.sector = sector;
  res.grid = grid;
  res.points = pts.size();
  const ScanPoint& g = pts[order[0]];
  res.grid_C = g.v;
  res.C = g.v;
  res.argmin_xi = g.xi;
  res.argmin_lambda = std::polar(g.mod, g.th);
  if (seeds > 0 && res.C > 0.0) {
    const double du = xis.size() > 1 ? std::log(xis[1] / xis[0]) : 0.1;
    const double dth = angs.size() > 1 ? std::abs(angs[1] - angs[0]) : 0.0;
    const double edge = kPi - sector.sigma;
    std::vector<ScanPoint> polished(seeds);
    parallel_for(seeds, [&](std::size_t s) {
      polished[s] = polish(target, pts[order[s]], du, dth, std::log(grid.xi_min), std::log(grid.xi_max), edge, model);
    });
    for (const ScanPoint& p : polished)
      if (p.v < res.C) {
        res.C = p.v;
        res.argmin_xi = p.xi;
        res.argmin_lambda = std::polar(p.mod, p.th);
      }
  }
  return res;
}

SigmaStar empirical_sigma_star(const Model& model, const ScanGrid& grid, double zero_tol,
                               double sigma_tol) {
  auto c_at = [&](double sigma) {
    const Sector s{sigma, 0.0};
    return std::min(scan_lower_bound(ScanTarget::L1, s, grid, model).C,
                    scan_lower_bound(ScanTarget::L2, s, grid, model).C);
  };
  SigmaStar out;
  const double hi0 = kPi / 2 - 1e-3;
  out.reference_C = c_at(hi0);
  out.threshold = zero_tol * out.reference_C;
  double lo = model.dc.sigma_w + 1e-6;
  double hi = hi0;
  if (c_at(lo) >= out.threshold) {
    out.sigma_star = lo;
    return out;
  }
  while (hi - lo > sigma_tol) {
    const double mid = 0.5 * (lo + hi);
    if (c_at(mid) >= out.threshold)
      hi = mid;
    else
      lo = mid;
    ++out.bisection_steps;
  }
  out.sigma_star = hi;
  return out;
}

// Multiplier certification ---------------------------------------------------------

bool Certificate::finite() const { return std::isfinite(estimated_constant); }

namespace {

// Nested central difference of order alpha (entries 0..2 per axis).
cplx nested_difference(const Symbol& m, std::vector<double> xi, cplx lambda,
                       const std::vector<int>& alpha, std::size_t axis, double h) {
  while (axis < alpha.size() && alpha[axis] == 0) ++axis;
  if (axis == alpha.size()) return m(xi, lambda);
  const double x0 = xi[axis];
  auto at = [&](double x) {
    xi[axis] = x;
    return nested_difference(m, xi, lambda, alpha, axis + 1, h);
  };
  cplx v;
  if (alpha[axis] == 1) {
    v = (at(x0 + h) - at(x0 - h)) / (2.0 * h);
  } else {
    v = (at(x0 + h) - 2.0 * at(x0) + at(x0 - h)) / (h * h);
  }
  return v;
}

cplx xi_derivative(const Symbol& m, const std::vector<double>& xi, cplx lambda,
                   const std::vector<int>& alpha, double h) {
  const cplx coarse = nested_difference(m, xi, lambda, alpha, 0, h);
  const cplx fine = nested_difference(m, xi, lambda, alpha, 0, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

void enumerate_alphas(int dim, int max_order, std::vector<int>& cur, std::size_t axis,
                      std::vector<std::vector<int>>& out) {
  if (axis == static_cast<std::size_t>(dim)) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (std::size_t k = 0; k < axis; ++k) used += cur[k];
  for (int a = 0; a + used <= max_order && a <= 2; ++a) {
    cur[axis] = a;
    enumerate_alphas(dim, max_order, cur, axis + 1, out);
  }
  cur[axis] = 0;
}

std::vector<std::vector<double>> directions(int dim) {
  if (dim == 1) return {{1.0}, {-1.0}};
  std::vector<std::vector<double>> d;
  for (int k = 0; k < 5; ++k) {
    const double th = kPi * k / 4.0 + 0.1;
    d.push_back({std::cos(th), std::sin(th)});
  }
  return d;
}

}  // namespace

Certificate certify_multiplier(const std::string& id, const Symbol& m, double order, int type,
                               const Sector& sector, const ScanGrid& grid, int dim, int max_alpha,
                               double step_scale) {
  if (dim < 1 || dim > 2) throw Error(ErrorKind::InvalidArgument, "certify_multiplier: dim must be 1 or 2");
  if (max_alpha < 0 || max_alpha > 3)
    throw Error(ErrorKind::InvalidArgument, "certify_multiplier: max_alpha must lie in [0, 3]");
  const auto mods = grid.lambda_moduli(sector.delta);
  const auto angs = grid.angles(sector.sigma);
  const auto xis = grid.xi_moduli();
  if (mods.empty() || angs.empty() || xis.empty())
    throw Error(ErrorKind::EmptyGrid, "certification grid has no points");
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur(dim, 0);
  enumerate_alphas(dim, std::min(max_alpha, 2 * dim), cur, 0, alphas);
  // Depth-3 requests in one dimension cannot be expressed with per-axis
  // orders <= 2; nested differences beyond that are noise dominated anyway.
  const auto dirs = directions(dim);
  constexpr double lambda_rel_step = 1e-5;

  std::vector<double> row_max(mods.size(), 0.0);
  parallel_for(mods.size(), [&](std::size_t i) {
    double local = 0.0;
    for (double th : angs) {
      const cplx lambda = std::polar(mods[i], th);
      const double root_l = std::sqrt(mods[i]);
      for (double r : xis) {
        for (const auto& dir : dirs) {
          std::vector<double> xi(dim);
          for (int k = 0; k < dim; ++k) xi[k] = r * dir[k];
          const double h = step_scale * std::max(r, (root_l + r) * 1e-3);
          if (h < 1e3 * std::numeric_limits<double>::epsilon() * r || h == 0.0)
            throw Error(ErrorKind::DerivativeStepUnderflow,
                        "step " + std::to_string(h) + " collapsed at |xi'| = " + std::to_string(r));
          const double sc = root_l + r;
          for (const auto& alpha : alphas) {
            int abs_alpha = 0;
            for (int a : alpha) abs_alpha += a;
            const double bound = type == 1 ? std::pow(sc, order - abs_alpha)
                                           : std::pow(sc, order) * std::pow(r, -abs_alpha);
            const cplx d0 = xi_derivative(m, xi, lambda, alpha, h);
            const cplx lp = lambda * (1.0 + lambda_rel_step);
            const cplx lm = lambda * (1.0 - lambda_rel_step);
            const cplx d1 = (xi_derivative(m, xi, lp, alpha, h) - xi_derivative(m, xi, lm, alpha, h)) /
                            (2.0 * lambda_rel_step);
            const double v = std::max(std::abs(d0), std::abs(d1)) / bound;
            local = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(local, v);
          }
        }
      }
    }
    row_max[i] = local;
  });
  Certificate c;
  c.symbol_id = id;
  c.claimed_order = order;
  c.claimed_type = type;
  c.sector = sector;
  c.grid = grid;
  c.dim_tangential = dim;
  c.max_alpha = max_alpha;
  c.estimated_constant = *std::max_element(row_max.begin(), row_max.end());
  return c;
}

std::vector<MultiplierEntry> multiplier_catalog(const Model& model) {
  std::vector<MultiplierEntry> out;
  auto xi2_of = [](const std::vector<double>& xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return s;
  };
  auto rs_of = [&model, xi2_of](const std::vector<double>& xi, cplx l) {
    return roots(xi2_of(xi), l, model);
  };
  auto fs_of = [&model, xi2_of](const std::vector<double>& xi, cplx l) {
    return frak_symbols(xi2_of(xi), l, model);
  };
  out.push_back({"xi_1", [](const std::vector<double>& xi, cplx) { return cplx(xi[0]); }, 1, 1});
  out.push_back({"lambda^1/2", [](const std::vector<double>&, cplx l) { return std::sqrt(l); }, 1, 1});
  out.push_back({"|xi'|^2", [xi2_of](const std::vector<double>& xi, cplx) { return cplx(xi2_of(xi)); }, 2, 1});
  out.push_back({"lambda", [](const std::vector<double>&, cplx l) { return l; }, 2, 1});
  for (double s : {-2.0, -1.0, 1.0, 2.0}) {
    out.push_back({"omega^" + std::to_string(static_cast<int>(s)),
                   [rs_of, s](const std::vector<double>& xi, cplx l) { return std::pow(rs_of(xi, l).omega, s); },
                   s, 1});
  }
  for (int j = 1; j <= 2; ++j) {
    const std::string J = std::to_string(j);
    out.push_back({"t_" + J, [rs_of, j](const std::vector<double>& xi, cplx l) { return rs_of(xi, l).t(j); }, 1, 1});
    out.push_back({"t_" + J + "+omega",
                   [rs_of, j](const std::vector<double>& xi, cplx l) {
                     const RootSet rs = rs_of(xi, l);
                     return rs.t(j) + rs.omega;
                   },
                   1, 1});
    for (double s : {-2.0, -1.0, -0.5, 0.5, 2.0}) {
      std::ostringstream id;
      id << "t_" << j << "^" << s;
      out.push_back({id.str(),
                     [rs_of, j, s](const std::vector<double>& xi, cplx l) { return std::pow(rs_of(xi, l).t(j), s); },
                     s, 1});
    }
    const int k = j - 1;
    out.push_back({"m_" + J, [fs_of, k](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).m[k]; }, 3, 1});
    out.push_back({"p_" + J, [fs_of, k](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).p[k]; }, 1, 1});
    out.push_back({"q_" + J, [fs_of, k](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).q[k]; }, 1, 1});
    out.push_back({"r_" + J, [fs_of, k](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).r[k]; }, 0, 1});
    out.push_back({"l_" + J, [fs_of, k](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).l[k]; }, 6, 1});
    out.push_back({"l_" + J + "^-1",
                   [fs_of, k](const std::vector<double>& xi, cplx l) { return 1.0 / fs_of(xi, l).l[k]; }, -6, 1});
  }
  out.push_back({"a", [fs_of](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).a; }, 1, 1});
  out.push_back({"b", [fs_of](const std::vector<double>& xi, cplx l) { return fs_of(xi, l).b; }, 1, 1});
  return out;
}

}  // namespace korteweg
