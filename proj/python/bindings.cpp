#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "korteweg/full_resolvent.hpp"
#include "korteweg/half_space.hpp"
#include "korteweg/symbols.hpp"
#include "korteweg/verification.hpp"
#include "korteweg/whole_space.hpp"

namespace py = pybind11;
using namespace korteweg;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ScalarField to_field(const CArray& a) { return ScalarField(a.data(), a.data() + a.size()); }

CArray to_array(const ScalarField& v, const std::vector<py::ssize_t>& shape) {
  CArray out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict residual_dict(const ResidualReport& r) {
  py::dict rows;
  for (const auto& row : r.rows) rows[py::str(row.name)] = py::make_tuple(row.max_abs, row.l2);
  py::dict d;
  d["rows"] = rows;
  d["data_norm"] = r.data_norm;
  d["relative"] = r.worst_relative();
  return d;
}

FullGrid make_grid(int M, double H, int MN, double L) { return FullGrid{TangentialGrid{1, M, L}, H, MN}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resolvent solver for the linearized Korteweg system";

  py::register_exception<Error>(m, "KortewegError", PyExc_RuntimeError);

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init([](double mu, double nu, double kappa, double gamma, double rho_ref) {
             return MaterialParams{mu, nu, kappa, gamma, rho_ref};
           }),
           py::arg("mu") = 1.0, py::arg("nu") = 1.0, py::arg("kappa") = 2.0, py::arg("gamma") = 0.0,
           py::arg("rho_ref") = 1.0)
      .def_readwrite("mu", &MaterialParams::mu)
      .def_readwrite("nu", &MaterialParams::nu)
      .def_readwrite("kappa", &MaterialParams::kappa)
      .def_readwrite("gamma", &MaterialParams::gamma)
      .def_readwrite("rho_ref", &MaterialParams::rho_ref);

  py::class_<DerivedConstants>(m, "DerivedConstants")
      .def_readonly("eta_w", &DerivedConstants::eta_w)
      .def_readonly("sigma_w", &DerivedConstants::sigma_w)
      .def_readonly("s1", &DerivedConstants::s1)
      .def_readonly("s2", &DerivedConstants::s2);

  m.def("validate", [](const MaterialParams& p) {
    const Verdict v = validate(p);
    std::vector<std::string> names;
    for (ErrorKind k : v.failures()) names.emplace_back(to_string(k));
    return names;
  });
  m.def("derive_constants", &derive_constants);
  m.def("rescale", &rescale);
  m.def("sector_contains", [](double sigma, double delta, cplx lambda) { return Sector{sigma, delta}.contains(lambda); });

  m.def("omega_lambda", &omega_lambda, py::arg("xi_prime_sq"), py::arg("lam"), py::arg("mu"));
  m.def("roots_t", [](double xi2, cplx lambda, const MaterialParams& p) {
    return roots_t(xi2, lambda, derive_constants(p));
  });
  m.def("symbol_P", &whole_space_symbol_P, py::arg("xi_sq"), py::arg("lam"), py::arg("params"));
  m.def("lopatinskii_det", [](double xi2, cplx lambda, const MaterialParams& p) {
    const Lopatinskii L = lopatinskii(xi2, lambda, Model(p));
    return py::make_tuple(L.det_direct, L.det_factored);
  });
  m.def("frak_l", [](double xi2, cplx lambda, const MaterialParams& p) {
    const FrakSymbols fs = frak_symbols(xi2, lambda, Model(p));
    return py::make_tuple(fs.l[0], fs.l[1]);
  });
  m.def(
      "kernel_M",
      [](int j, double x, cplx omega, cplx t1, cplx t2, const MaterialParams& p) {
        return kernel_M(j, x, RootSet{omega, t1, t2}, Model(p));
      },
      py::arg("j"), py::arg("x"), py::arg("omega"), py::arg("t1"), py::arg("t2"), py::arg("params"));

  m.def(
      "scan",
      [](const std::string& target, double sigma, double delta, const MaterialParams& p, int n_lambda, int n_angle,
         int n_xi) {
        ScanGrid g;
        g.n_lambda = n_lambda;
        g.n_angle = n_angle;
        g.n_xi = n_xi;
        const ScanResult r = scan_lower_bound(scan_target_from_string(target), Sector{sigma, delta}, g, Model(p));
        py::dict d;
        d["C"] = r.C;
        d["grid_C"] = r.grid_C;
        d["argmin_xi"] = r.argmin_xi;
        d["argmin_lambda"] = r.argmin_lambda;
        return d;
      },
      py::arg("target"), py::arg("sigma"), py::arg("delta"), py::arg("params"), py::arg("n_lambda") = 40,
      py::arg("n_angle") = 9, py::arg("n_xi") = 40);

  m.def(
      "solve_whole",
      [](const CArray& d, const std::vector<CArray>& f, cplx lambda, const MaterialParams& p, double L) {
        if (d.ndim() != 2) throw Error(ErrorKind::GridMismatch, "d must be a 2-d array");
        BoxGrid g;
        g.dim = 2;
        g.counts = {static_cast<int>(d.shape(0)), static_cast<int>(d.shape(1))};
        g.lengths = {L, L};
        g.origin = {0.0, 0.0};
        std::vector<ScalarField> fv;
        for (const auto& c : f) fv.push_back(to_field(c));
        const WholeField s = solve_whole(g, to_field(d), fv, lambda, Model(p));
        const std::vector<py::ssize_t> shape{d.shape(0), d.shape(1)};
        py::list u;
        for (const auto& c : s.u) u.append(to_array(c, shape));
        return py::make_tuple(to_array(s.rho, shape), u,
                              residual_dict(residual_whole(s, to_field(d), fv, lambda, Model(p))));
      },
      py::arg("d"), py::arg("f"), py::arg("lam"), py::arg("params"), py::arg("L") = 2.0 * kPi);

  m.def(
      "solve_reduced",
      [](const std::vector<CArray>& g, const CArray& h, cplx lambda, const MaterialParams& p,
         const std::vector<double>& xn, double L) {
        const TangentialGrid tg{1, static_cast<int>(h.size()), L};
        std::vector<ScalarField> gv;
        for (const auto& c : g) gv.push_back(to_field(c));
        const Model model(p);
        const ReducedSolution s = solve_reduced(gv, to_field(h), lambda, tg, xn, model);
        const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(tg.size()), static_cast<py::ssize_t>(xn.size())};
        py::list comps;
        for (int c = 0; c <= s.dim(); ++c) comps.append(to_array(s.sample(c, {}), shape));
        return py::make_tuple(comps, residual_dict(residual_reduced(s, gv, to_field(h), model)));
      },
      py::arg("g"), py::arg("h"), py::arg("lam"), py::arg("params"), py::arg("xn"), py::arg("L") = 2.0 * kPi);

  m.def(
      "solve_manufactured",
      [](cplx lambda, const MaterialParams& p, int M, double H, int MN, std::uint64_t seed) {
        const Model model(p);
        const FullGrid g = make_grid(M, H, MN, 2.0 * kPi);
        const ManufacturedPair star = random_manufactured_pair(g, lambda, model, seed);
        const FullData F = manufactured_data(star, g, lambda, model);
        const GeneralSolution s = solve_general(F, lambda, model);
        py::dict d;
        d["recovery_error"] = relative_error(s.solution, star);
        d["residual"] = residual_dict(residual_full(s.solution, F, model));
        d["iterations"] = s.state.k;
        return d;
      },
      py::arg("lam"), py::arg("params"), py::arg("M") = 32, py::arg("H") = 10.0, py::arg("MN") = 256,
      py::arg("seed") = 1);

  m.def(
      "contraction_probe",
      [](const MaterialParams& p, double sigma, const std::vector<cplx>& lambdas, int M, double H, int MN,
         std::uint64_t seed) {
        std::vector<double> ratios;
        for (const auto& row : contraction_probe(Model(p), Sector{sigma, 0.0}, lambdas, make_grid(M, H, MN, 2.0 * kPi),
                                                 seed))
          ratios.push_back(row.ratio);
        return ratios;
      },
      py::arg("params"), py::arg("sigma"), py::arg("lambdas"), py::arg("M") = 32, py::arg("H") = 5.0,
      py::arg("MN") = 64, py::arg("seed") = 1);

  m.def(
      "rbound",
      [](const std::string& family, int n, const MaterialParams& p, int trials, int m_max, std::uint64_t seed) {
        RBoundOptions o;
        o.trials = trials;
        o.m_max = m_max;
        o.seed = seed;
        const RFamily f = family == "S" ? RFamily::SA : RFamily::TB;
        if (family != "S" && family != "T") throw Error(ErrorKind::InvalidArgument, "family must be 'S' or 'T'");
        return estimate_rbound(f, n, o, Model(p)).estimated_bound;
      },
      py::arg("family"), py::arg("n"), py::arg("params"), py::arg("trials") = 50, py::arg("m_max") = 8,
      py::arg("seed") = 20240601);
}
