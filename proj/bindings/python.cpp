// Python bindings for the main operations: words, scenes, scripts, search,
// relation lifts, and extension-class arithmetic.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptolemy/cohomology.hpp"
#include "ptolemy/quantize.hpp"
#include "ptolemy/rewrite.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/surface.hpp"

namespace py = pybind11;
using namespace ptolemy;

namespace {

SearchLimits limits_with(size_t budget) {
  SearchLimits lim = default_limits();
  if (budget > 0) lim.node_budget = budget;
  return lim;
}

}  // namespace

PYBIND11_MODULE(ptolemy_core, m) {
  m.doc() = "quantized decorated Ptolemy groupoid: words, scenes, scripts, lifts";

  py::register_exception<Error>(m, "PtolemyError");

  py::class_<DecoratedPermutation>(m, "DecoratedPermutation")
      .def_static("identity", &DecoratedPermutation::identity)
      .def_static("from_cycles", &DecoratedPermutation::parse_cycles)
      .def("cycles", &DecoratedPermutation::cycles)
      .def("size", &DecoratedPermutation::size)
      .def("is_identity", &DecoratedPermutation::is_identity)
      .def("compose", &DecoratedPermutation::compose)
      .def("inverse", &DecoratedPermutation::inverse)
      .def("__eq__",
           [](const DecoratedPermutation& a, const DecoratedPermutation& b) { return a == b; })
      .def("__repr__", [](const DecoratedPermutation& p) { return "P[" + p.cycles() + "]"; });

  py::class_<OperatorWord>(m, "OperatorWord")
      .def(py::init([](int size, const std::string& literal) {
             return OperatorWord::parse(size, literal);
           }),
           py::arg("size"), py::arg("literal") = "1")
      .def_property_readonly("size", &OperatorWord::size)
      .def_property_readonly("zeta_exp", &OperatorWord::zeta_exp)
      .def_property_readonly("length", &OperatorWord::length)
      .def_property_readonly("tail", &OperatorWord::tail)
      .def("multiply", &OperatorWord::multiply)
      .def("inverse", &OperatorWord::inverse)
      .def("conjugate_by", &OperatorWord::conjugate_by)
      .def("relabel", &OperatorWord::relabel)
      .def("equivalent", &OperatorWord::equivalent)
      .def("__mul__", &OperatorWord::multiply)
      .def("__eq__", [](const OperatorWord& a, const OperatorWord& b) { return a == b; })
      .def("__str__", &OperatorWord::str)
      .def("__repr__", &OperatorWord::str);

  py::class_<DecoratedTriangulation>(m, "Scene")
      .def_static("load", &DecoratedTriangulation::load)
      .def_static("parse", &DecoratedTriangulation::parse)
      .def_property_readonly("triangles", &DecoratedTriangulation::triangle_count)
      .def_property_readonly("punctures", &DecoratedTriangulation::puncture_count)
      .def_property_readonly("genus", &DecoratedTriangulation::genus)
      .def("isomorphic",
           [](const DecoratedTriangulation& a, const DecoratedTriangulation& b) {
             return a.isomorphism(b).has_value();
           })
      .def("__str__", &DecoratedTriangulation::str);

  m.def(
      "relation_suite",
      [](const DecoratedTriangulation& t, int sigma_samples, uint64_t seed) {
        auto rep = relation_suite(t, sigma_samples, seed);
        return py::make_tuple(rep.instances, rep.failures);
      },
      py::arg("scene"), py::arg("sigma_samples") = 4, py::arg("seed") = 1);

  m.def(
      "replay_script",
      [](const std::string& path) {
        Script sc = Script::load_file(path);
        if (!sc.start) throw Error("ParseError", "script has no start word");
        auto rep = check_script(*sc.start, sc, std::nullopt);
        if (!rep.ok) throw Error("ReplayFailed", rep.message);
        return rep.final_word;
      },
      py::arg("path"), "replay a self-contained script file; returns the final word");

  m.def(
      "normalize",
      [](const OperatorWord& w, size_t budget) -> py::object {
        auto nf = normalize_bounded(w, limits_with(budget));
        if (!nf) return py::none();
        return py::make_tuple(nf->zeta_exp, nf->tail);
      },
      py::arg("word"), py::arg("budget") = 0,
      "bounded reduction to (zeta exponent, permutation); None when exhausted");

  m.def(
      "derive",
      [](const OperatorWord& start, const OperatorWord& goal, size_t budget) -> py::object {
        auto out = derive_steps(start, goal, limits_with(budget));
        if (!out.found) return py::none();
        Script sc;
        sc.size = start.size();
        sc.start = start;
        sc.expected = out.final_word;
        for (const Step& st : out.steps)
          sc.items.push_back({st, std::nullopt, std::nullopt, st.str()});
        return py::cast(sc.str());
      },
      py::arg("start"), py::arg("goal"), py::arg("budget") = 0,
      "search for a kernel derivation; returns the script text or None");

  m.def(
      "verify_relation",
      [](const std::string& rel_path, const std::string& data, const std::string& method,
         size_t budget) {
        RelationInstance rel = RelationInstance::load(rel_path, data);
        LiftMethod me = (method == "search") ? LiftMethod::Search : LiftMethod::Script;
        LiftOutcome out = lift_exponent(rel, me, limits_with(budget), data);
        py::dict d;
        d["ok"] = out.ok;
        d["detail"] = out.detail;
        d["identity_exponent"] = out.raw_exp;
        d["relation_exponent"] = out.normalized_exp;
        if (out.z_exp) d["z_exponent"] = *out.z_exp;
        d["log"] = out.log;
        return d;
      },
      py::arg("relation_file"), py::arg("data"), py::arg("method") = "script",
      py::arg("budget") = 0);

  m.def("scalar_group_order",
        [](unsigned long long zeta_order) { return scalar_group_order(zeta_order).order; });

  m.def(
      "extension_class",
      [](long long chain, const std::vector<long long>& punctures, int g,
         unsigned long long zeta_order, bool embed_divisible) {
        LiftData d;
        d.chain_exp = chain;
        d.puncture_exps = punctures;
        auto c = class_from_lifts(d, g, static_cast<int>(punctures.size()), zeta_order);
        if (embed_divisible)
          c = change_coefficients(c, {CoefficientMap::Kind::EmbedDivisible, 0});
        py::dict out;
        out["chi"] = c.chi;
        out["chi_order"] = c.chi_order;
        out["euler"] = c.euler;
        out["text"] = c.str();
        return out;
      },
      py::arg("chain"), py::arg("punctures"), py::arg("g"), py::arg("zeta_order") = 0,
      py::arg("embed_divisible") = false);

  m.attr("__version__") = "1.0.0";
}
