#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weilreg/errors.hpp"
#include "weilreg/exactalg.hpp"
#include "weilreg/session.hpp"
#include "weilreg/slice.hpp"
#include "weilreg/varmaps.hpp"

namespace py = pybind11;
using namespace weilreg;

namespace {

using Names = std::vector<std::string>;

PyObject* error_type = nullptr;

MonomialOrder order_named(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw Unsupported("unknown monomial order '" + name + "'");
}

Ideal ideal_of(const Names& gens, const Names& vars) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, vars));
  return Ideal(vars.size(), std::move(ps));
}

Names printed(const std::vector<Polynomial>& ps, const Names& vars) {
  Names out;
  for (const auto& p : ps) out.push_back(to_string(p, vars));
  return out;
}

Names basis_of(const Ideal& i, const Names& vars) { return printed(i.groebner_basis(MonomialOrder::grevlex()), vars); }

std::vector<std::size_t> indices_of(const Names& which, const Names& vars) {
  std::vector<std::size_t> out;
  for (const auto& w : which) {
    auto it = std::find(vars.begin(), vars.end(), w);
    if (it == vars.end()) throw ParseError("unknown variable '" + w + "'");
    out.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  return out;
}

RationalMap self_map(const Names& vars, const std::string& rep) {
  auto x = AffineVariety::affine_space(vars);
  return make_rational_map(x, x, {parse_representative(x, rep)});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact regularization of rational group actions";

  error_type = PyErr_NewException("weilreg._core.Error", PyExc_RuntimeError, nullptr);
  m.attr("Error") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("kind") = e.kind();
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  m.def(
      "groebner_basis",
      [](const Names& gens, const Names& vars, const std::string& order) {
        Ideal i = ideal_of(gens, vars);
        return printed(i.groebner_basis(order_named(order)), vars);
      },
      py::arg("gens"), py::arg("vars"), py::arg("order") = "grevlex", "Reduced Groebner basis.");
  m.def(
      "normal_form",
      [](const std::string& f, const Names& gens, const Names& vars) {
        return to_string(normal_form(parse_polynomial(f, vars), ideal_of(gens, vars)), vars);
      },
      py::arg("f"), py::arg("gens"), py::arg("vars"));
  m.def(
      "eliminate",
      [](const Names& gens, const Names& vars, const Names& drop) {
        return basis_of(eliminate(ideal_of(gens, vars), indices_of(drop, vars)), vars);
      },
      py::arg("gens"), py::arg("vars"), py::arg("drop"));
  m.def(
      "saturate",
      [](const Names& gens, const Names& vars, const std::string& by) {
        return basis_of(saturate(ideal_of(gens, vars), parse_polynomial(by, vars)), vars);
      },
      py::arg("gens"), py::arg("vars"), py::arg("by"));
  m.def(
      "is_empty_variety", [](const Names& gens, const Names& vars) { return is_empty_variety(ideal_of(gens, vars)); },
      py::arg("gens"), py::arg("vars"));

  m.def(
      "biregular_complement",
      [](const Names& vars, const std::string& rep) { return basis_of(biregular_locus(self_map(vars, rep)).complement(), vars); },
      py::arg("vars"), py::arg("rep"), "Ideal of the locus where a self-map of affine space is not biregular.");
  m.def(
      "inverse", [](const Names& vars, const std::string& rep) { return inverse(self_map(vars, rep)).print(); },
      py::arg("vars"), py::arg("rep"));

  m.def(
      "certify",
      [](const std::string& big_f, const Names& xvars, const Names& yvars, const std::string& f,
         const std::vector<std::vector<long>>& samples) {
        auto x = AffineVariety::affine_space(xvars), y = AffineVariety::affine_space(yvars);
        Names all = xvars;
        all.insert(all.end(), yvars.begin(), yvars.end());
        std::vector<std::vector<Scalar>> points;
        for (const auto& s : samples) {
          std::vector<Scalar> p;
          for (long v : s) p.push_back(Scalar(v));
          points.push_back(std::move(p));
        }
        if (points.empty()) points = candidate_points(x, 64);
        auto d = certify_regular(x, y, parse_fraction(big_f, all, false), parse_polynomial(f, yvars), points);
        py::dict out;
        out["k"] = d.k;
        out["slices"] = printed(d.slices, yvars);
        std::vector<std::vector<std::string>> coeffs;
        for (const auto& row : d.coefficients) {
          std::vector<std::string> r;
          for (const auto& c : row) r.push_back(to_string(c));
          coeffs.push_back(std::move(r));
        }
        out["coefficients"] = coeffs;
        out["regular_form"] = d.regular_form ? to_string(*d.regular_form, all) : std::string();
        return out;
      },
      py::arg("F"), py::arg("xvars"), py::arg("yvars"), py::arg("f"), py::arg("samples") = std::vector<std::vector<long>>{});

  m.def(
      "format_session",
      [](const std::string& text) { return session::print_session(session::parse_session(text)); }, py::arg("text"),
      "Canonical text of a session.");
  m.def(
      "run_session",
      [](const std::string& text, std::uint64_t max_groebner_steps, bool parallel) {
        auto ast = session::parse_session(text);
        session::Report report;
        {
          py::gil_scoped_release release;
          report = session::run_session(ast, {max_groebner_steps, parallel, nullptr});
        }
        return session::emit_report(report, session::Format::Json);
      },
      py::arg("text"), py::arg("max_groebner_steps") = 0, py::arg("parallel") = false,
      "Run a session and return its JSON report.");
}
