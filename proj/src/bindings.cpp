#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperfh/cli.hpp"
#include "hyperfh/errors.hpp"
#include "hyperfh/fh_chiral.hpp"
#include "hyperfh/fh_lorentz.hpp"
#include "hyperfh/geometry.hpp"
#include "hyperfh/hardy.hpp"
#include "hyperfh/laplace.hpp"
#include "hyperfh/specfun.hpp"

namespace py = pybind11;
using namespace hyperfh;

namespace {

int side_arg(int side) {
  if (side != 1 && side != -1) throw Error(ErrorCode::DomainError, "side must be +1 or -1");
  return side;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier-Helgason analysis on the one-sheeted hyperboloid";

  static py::exception<Error> exc(m, "HyperFHError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), e.what());
    }
  });

  // geometry
  m.def("classify", [](const C3& z) { return std::string(label_name(classify(z))); }, py::arg("z"));
  m.def("classify_line", &classify_line, py::arg("z"));
  m.def("chart_lm", [](const C3& z) {
    auto c = chart_lm(z);
    return py::make_tuple(c.lambda, c.mu);
  }, py::arg("z"));
  m.def("chart_lm_inv", [](cplx l, cplx mu) { return chart_lm_inv(l, mu); }, py::arg("lam"), py::arg("mu"));
  m.def("cauchy_quadratic", &cauchy_quadratic, py::arg("z"), py::arg("zp"));

  // special functions
  m.def("conical_p", &conical_p, py::arg("nu"), py::arg("x"));
  m.def("conical_p_complex", &conical_p_complex, py::arg("nu"), py::arg("Z"));
  m.def("conical_q", py::overload_cast<cplx, double>(&conical_q), py::arg("nu"), py::arg("x"));
  m.def("legendre_q", &legendre_q_int, py::arg("ell"), py::arg("Z"));
  m.def("legendre_q_all", &legendre_q_all, py::arg("L"), py::arg("Z"));
  m.def("mehler_weight", &mehler_weight, py::arg("nu"), py::arg("sign"));

  // Cauchy kernel in its several forms
  m.def("cauchy_kernel", &cauchy_kernel_exact, py::arg("z"), py::arg("zp"));
  m.def("cauchy_kernel_spectral", [](const C3& z, const C3& zp, int side, double tol) {
    KernelOptions o;
    o.tol = tol;
    return cauchy_kernel_spectral(z, zp, side_arg(side), o);
  }, py::arg("z"), py::arg("zp"), py::arg("side"), py::arg("tol") = 1e-11);
  m.def("cauchy_kernel_cf", [](const C3& z, const C3& zp, int side, double tol) {
    KernelOptions o;
    o.tol = tol;
    return cauchy_kernel_cf(z, zp, side_arg(side), o);
  }, py::arg("z"), py::arg("zp"), py::arg("side"), py::arg("tol") = 1e-11);
  m.def("cauchy_kernel_discrete", [](const C3& z, const C3& zp, int L) {
    auto r = cauchy_kernel_discrete(z, zp, L);
    return py::make_tuple(r.value, r.tail_estimate, r.ratio);
  }, py::arg("z"), py::arg("zp"), py::arg("L") = 40);

  // functions on X
  py::class_<FunctionOnX>(m, "FunctionOnX")
      .def_static("cauchy_kernel", &FunctionOnX::cauchy_kernel, py::arg("w"))
      .def_static("pole_product", &FunctionOnX::pole_product, py::arg("a"), py::arg("p"), py::arg("b"),
                  py::arg("q"), py::arg("c") = cplx(1.0))
      .def_static("from_json", [](const std::string& s) { return FunctionOnX::from_json(json::parse(s)); })
      .def("to_json", [](const FunctionOnX& f) { return f.to_json().dump(); })
      .def("__add__", &FunctionOnX::operator+)
      .def("scaled", &FunctionOnX::scaled)
      .def("eval", &FunctionOnX::eval, py::arg("z"))
      .def("__call__", &FunctionOnX::eval, py::arg("z"));

  m.def("decompose", [](const FunctionOnX& f) {
    auto d = decompose(f);
    py::dict out;
    const TuboidLabel labels[] = {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight, TuboidLabel::TLeft};
    for (auto t : labels) out[label_name(t)] = d.component(t);
    return out;
  }, py::arg("f"));
  m.def("component_interior", &component_interior, py::arg("f"), py::arg("tuboid"), py::arg("z"));

  py::enum_<TuboidLabel>(m, "Tuboid")
      .value("TPlus", TuboidLabel::TPlus)
      .value("TMinus", TuboidLabel::TMinus)
      .value("TRight", TuboidLabel::TRight)
      .value("TLeft", TuboidLabel::TLeft);

  // Lorentzian transforms
  py::class_<LorentzFHTransform>(m, "LorentzFHTransform")
      .def(py::init([](const FunctionOnX& f) { return LorentzFHTransform(f); }), py::arg("f"))
      .def("__call__", [](const LorentzFHTransform& t, const R3& xi, double nu, int side) {
        return t(xi, nu, side_arg(side));
      }, py::arg("xi"), py::arg("nu"), py::arg("side"))
      .def("at_alpha", [](const LorentzFHTransform& t, double a, double nu, int side) {
        return t.at_alpha(a, nu, side_arg(side));
      }, py::arg("alpha"), py::arg("nu"), py::arg("side"))
      .def_property_readonly("label", &LorentzFHTransform::label);
  m.def("fh_inverse", [](const LorentzFHTransform& t, const C3& z, int side) {
    py::gil_scoped_release nogil;
    return fh_inverse(t, z, side_arg(side));
  }, py::arg("transform"), py::arg("z"), py::arg("side"));

  // chiral transforms
  py::enum_<Chirality>(m, "Chirality").value("Right", Chirality::Right).value("Left", Chirality::Left);
  m.def("classify_cone", [](const C3& xi) { return std::string(cone_label_name(classify_cone(xi))); },
        py::arg("xi"));
  m.def("fh_chiral", [](const FunctionOnX& f, const C3& xi, int L) { return fh_direct_chiral_all(f, xi, L); },
        py::arg("f"), py::arg("xi"), py::arg("L"));

  // Volterra kernels and Laplace transforms
  py::class_<ReducedVolterraKernel>(m, "VolterraKernel")
      .def_static("exp_cosh", &ReducedVolterraKernel::exp_cosh, py::arg("rate"))
      .def_static("cosh_exp_cosh", &ReducedVolterraKernel::cosh_exp_cosh, py::arg("rate"))
      .def_static("from_json", [](const std::string& s) { return ReducedVolterraKernel::from_json(json::parse(s)); })
      .def("__call__", &ReducedVolterraKernel::operator());
  m.def("laplace_g", &laplace_g, py::arg("r"), py::arg("nu"), py::arg("tol") = 1e-10);
  m.def("laplace_h", &laplace_h, py::arg("r"), py::arg("nu"), py::arg("tol") = 1e-10);
  m.def("h_from_g", &h_from_g, py::arg("r"), py::arg("nu"), py::arg("tol") = 1e-10);
  m.def("fh_invariant_direct", [](const ReducedVolterraKernel& r, const R3& xi, double nu, int side) {
    return fh_invariant_direct(r, ConePoint(xi[0], xi[1], xi[2]), nu, side_arg(side));
  }, py::arg("r"), py::arg("xi"), py::arg("nu"), py::arg("side"));
  m.def("kl_reconstruct", [](const std::function<cplx(double)>& G, cplx Z, double tol) {
    return kl_reconstruct(G, Z, tol);
  }, py::arg("G"), py::arg("Z"), py::arg("tol") = 1e-8);

  // front end
  m.def("verify_suites", &verify_suites);
  m.def("run_verify", [](const std::string& suite, double tol_scale, unsigned long long seed) {
    py::gil_scoped_release nogil;
    return run_verify(suite, tol_scale, seed).to_json().dump();
  }, py::arg("suite"), py::arg("tol_scale") = 1.0, py::arg("seed") = 20240607ULL);
  m.def("run_transform", [](const std::string& config) {
    std::ostringstream os;
    run_transform(json::parse(config), os);
    return os.str();
  }, py::arg("config"));
}
