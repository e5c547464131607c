// Python bindings. Values cross the boundary as JSON text in the same
// encoding as the command-line tool; the ellsurf package decodes it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ellsurf/acceptance.hpp"
#include "ellsurf/report.hpp"

namespace py = pybind11;
using namespace ellsurf;

namespace {

py::handle error_type;

WeierstrassModel model(const std::string& text) { return model_from_json(parse_json(text)); }
CurvePoint point(const std::string& text) { return point_from_json(parse_json(text)); }

std::vector<CurvePoint> points(const std::vector<std::string>& texts) {
  std::vector<CurvePoint> out;
  for (const auto& t : texts) out.push_back(point(t));
  return out;
}

FamilyCertificate certificate_mode(const std::string& name) {
  if (name == "none") return FamilyCertificate::None;
  if (name == "qbar") return FamilyCertificate::Qbar;
  if (name == "qt") return FamilyCertificate::Qt;
  fail(ErrorKind::MalformedInput, "certify must be 'none', 'qbar' or 'qt'");
}

Rational rational(const std::string& text) { return rational_from_json(Json(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic on elliptic surfaces y^2 = x (x - f^2)(x - g^2)";

  static py::exception<Error> exc(m, "EllsurfError", PyExc_ValueError);
  error_type = exc;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), std::string(e.what()));
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  m.def("analyze", [](const std::string& curve) { return analyze_report(model(curve)).dump(); });
  m.def("height", [](const std::string& curve, const std::string& p) { return to_string(height(model(curve), point(p))); });
  m.def("pairing", [](const std::string& curve, const std::string& p, const std::string& q) {
    return to_string(pairing(model(curve), point(p), point(q)));
  });
  m.def("gram", [](const std::string& curve, const std::vector<std::string>& pts) {
    return to_json(gram(model(curve), points(pts))).dump();
  });
  m.def("torsion", [](const std::string& curve, bool over_q) { return to_json(torsion_of(model(curve), over_q)).dump(); });
  m.def("family", [](const std::string& triple, const std::string& certify) {
    bool passed = true;
    Json j = family_report(triple_from_json(parse_json(triple)), certificate_mode(certify), passed);
    return j.dump();
  });
  m.def("descent", [](const std::string& triple, const std::vector<std::string>& pts) {
    return descent_report(triple_from_json(parse_json(triple)), points(pts)).dump();
  });
  m.def("quadric", [](const std::string& alpha, const std::string& beta, const std::string& gamma,
                      const std::vector<std::string>& base) {
    if (base.size() != 3) fail(ErrorKind::MalformedInput, "base point needs three coordinates");
    Quadric q(rational(alpha), rational(beta), rational(gamma));
    return to_json(family_of(q, parametrize(q, {rational(base[0]), rational(base[1]), rational(base[2])}))).dump();
  });
  m.def("specialize", [](const std::string& family, const std::string& t0) {
    return to_json(specialize(quadric_family_from_json(parse_json(family)), rational(t0))).dump();
  });
  m.def("rank3", [](const std::string& t0) { return to_json(rank3_member(rational(t0))).dump(); });
  m.def("run_criterion", [](int id) {
    auto r = run_criterion(id);
    return Json{{"id", r.id},         {"title", r.title},   {"status", r.passed ? "PASS" : "FAIL"},
                {"tolerance", r.tolerance}, {"detail", r.detail}, {"notes", r.notes}}
        .dump();
  });
  m.attr("criterion_count") = static_cast<int>(acceptance_titles().size());
}
