// Python bindings for the main operations: symbolic RHom, the cone
// formula, the verification suites and class composition.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "puncture/acceptance.hpp"
#include "puncture/oracle.hpp"

namespace py = pybind11;
using namespace puncture;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

Field field_of(const std::string& spec) { return Field::parse(spec); }

DegreeWindow window_of(std::pair<int, int> w) { return DegreeWindow(w.first, w.second); }

py::dict rhom_py(const std::string& a, const std::string& b, const std::string& field,
                 std::pair<int, int> window, int margin) {
    Field f = field_of(field);
    AdmissibleModule am = AdmissibleModule::parse(a), bm = AdmissibleModule::parse(b);
    RHomResult r = rhom_modules(am, bm, f);
    py::dict out;
    out["h0"] = r.h0.to_string();
    out["h1"] = r.h1.to_string();
    bool brute_ok = true;
    for (const Atom& at : am.summands())
        if (at.kind != AtomKind::Free && at.kind != AtomKind::Torsion && at.kind != AtomKind::Laurent)
            brute_ok = false;
    if (brute_ok) {
        DegreeWindow w = window_of(window);
        BruteHom brute = brute_hom(am, bm, w, f);
        Report cmp = compare(r.h0, brute.dims, w, margin, f);
        py::dict dims;
        for (const auto& [d, n] : brute.dims.dims_map()) dims[py::int_(d)] = n;
        out["h0_shadow"] = dims;
        out["oracle_pass"] = cmp.pass;
    }
    return out;
}

py::dict cone_py(const std::string& c, const std::string& d, const std::string& field,
                 std::pair<int, int> window, int margin, bool remark) {
    Field f = field_of(field);
    AdmissibleModule cm = AdmissibleModule::parse(c), dm = AdmissibleModule::parse(d);
    DegreeWindow w = window_of(window);
    Complex complex(f);
    std::map<int, AdmissibleModule> sym;
    if (remark) {
        complex = remark_form(cm, dm, f);
        sym = cohomology(complex, CohomologyContext{extension_certified(f)});
    } else {
        RabComplex rc = rab_complex(cm, dm, f);
        complex = rc.complex;
        sym = rc.cohomology;
    }
    py::dict out;
    py::dict symd;
    for (const auto& [n, m] : sym) symd[py::int_(n)] = m.to_string();
    out["cohomology"] = symd;
    py::dict shadows;
    for (const auto& [n, space] : shadow_cohomology(realize(complex, w))) {
        py::dict dims;
        DegreeWindow interior = w.interior(margin);
        for (int deg = interior.lo; deg <= interior.hi; ++deg) dims[py::int_(deg)] = space.dim(deg);
        shadows[py::int_(n)] = dims;
    }
    out["shadow"] = shadows;
    return out;
}

py::object verify_appendix_b_py(int n, std::pair<int, int> window, int margin, const std::string& field) {
    TruncatedResolution r = build_resolution(n, window.second - window.first + 1, field_of(field));
    return to_py(verify_exact(r, window_of(window), margin).to_json());
}

py::object verify_extension_py(int n, std::pair<int, int> window, int margin, const std::string& field) {
    return to_py(extension_witness(field_of(field), n, window_of(window), margin).to_json());
}

py::object verify_adjunction_py(const std::string& c, const std::string& s, std::pair<int, int> window, int margin,
                                const std::string& field) {
    return to_py(verify_adjunction(AdmissibleModule::parse(c), AdmissibleModule::parse(s), window_of(window), margin,
                                   field_of(field))
                     .to_json());
}

RabClass class_from_dict(const Field& f, const py::dict& jc, const AdmissibleModule& c0, const AdmissibleModule& c1) {
    AdmissibleModule lc0 = localize(c0), lc1 = localize(c1);
    std::vector<std::vector<TailClass>> fm(c1.size(), std::vector<TailClass>(lc0.size(), TailClass(f)));
    if (jc.contains("f")) {
        auto rows = jc["f"].cast<std::vector<std::vector<std::string>>>();
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j)
                fm.at(i).at(j) = TailClass::from(RatFunc::parse(f, rows[i][j]));
    }
    AtomMorphism g(f, lc0, lc1);
    if (jc.contains("g")) {
        auto rows = jc["g"].cast<std::vector<std::vector<std::string>>>();
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j) g.set_entry(i, j, RatFunc::parse(f, rows[i][j]));
    }
    return RabClass(c0, c1, std::move(fm), std::move(g));
}

py::dict compose_py(const std::vector<std::string>& objects, const std::vector<py::dict>& classes,
                    const std::string& field) {
    Field f = field_of(field);
    if (objects.size() < 2 || classes.size() + 1 != objects.size())
        throw StructuralError("compose: need objects o0..ok and one class per consecutive pair");
    std::vector<AdmissibleModule> mods;
    for (const auto& o : objects) mods.push_back(AdmissibleModule::parse(o));
    RabClass total = class_from_dict(f, classes[0], mods[0], mods[1]);
    for (size_t i = 1; i < classes.size(); ++i)
        total = compose_classes(class_from_dict(f, classes[i], mods[i], mods[i + 1]), total);
    py::dict out;
    py::list frows, grows;
    for (const auto& row : total.f) {
        py::list r;
        for (const auto& t : row) r.append(t.to_string());
        frows.append(r);
    }
    for (size_t i = 0; i < total.g.target().size(); ++i) {
        py::list r;
        for (size_t j = 0; j < total.g.source().size(); ++j) r.append(total.g.entry(i, j).to_string());
        grows.append(r);
    }
    out["f"] = frows;
    out["g"] = grows;
    return out;
}

py::list selftest_py(const std::string& field, std::uint64_t seed) {
    py::list out;
    for (const auto& r : acceptance::run_all(field_of(field), seed)) {
        py::dict d;
        d["criterion"] = r.index;
        d["name"] = r.name;
        d["pass"] = r.pass;
        d["detail"] = r.detail;
        d["seconds"] = r.seconds;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_puncture, m) {
    m.doc() = "exact Hom computations in the formal punctured neighborhood of infinity over K[t]";

    py::register_exception<StructuralError>(m, "StructuralError");
    py::register_exception<CalculusError>(m, "CalculusError");

    m.def("rhom", &rhom_py, py::arg("a"), py::arg("b"), py::arg("field") = "q",
          py::arg("window") = std::pair<int, int>(-8, 8), py::arg("margin") = 2,
          "symbolic derived Hom with the brute-force H0 shadow");
    m.def(
        "rab",
        [](const std::string& c, const std::string& d, const std::string& field, std::pair<int, int> window,
           int margin) { return cone_py(c, d, field, window, margin, false); },
        py::arg("c"), py::arg("d"), py::arg("field") = "q", py::arg("window") = std::pair<int, int>(-8, 8),
        py::arg("margin") = 2, "Hom in the punctured neighborhood via the cone formula");
    m.def(
        "remark",
        [](const std::string& c, const std::string& d, const std::string& field, std::pair<int, int> window,
           int margin) { return cone_py(c, d, field, window, margin, true); },
        py::arg("c"), py::arg("d"), py::arg("field") = "q", py::arg("window") = std::pair<int, int>(-8, 8),
        py::arg("margin") = 2, "the right-adjoint form of the cone formula");
    m.def("localize", [](const std::string& mod) { return localize(AdmissibleModule::parse(mod)).to_string(); },
          py::arg("module"), "invert t on an admissible module");
    m.def("verify_appendix_b", &verify_appendix_b_py, py::arg("n") = 6,
          py::arg("window") = std::pair<int, int>(0, 8), py::arg("margin") = 2, py::arg("field") = "q");
    m.def("verify_extension", &verify_extension_py, py::arg("n") = 6, py::arg("window") = std::pair<int, int>(0, 8),
          py::arg("margin") = 2, py::arg("field") = "q");
    m.def("verify_adjunction", &verify_adjunction_py, py::arg("c"), py::arg("s"),
          py::arg("window") = std::pair<int, int>(-8, 8), py::arg("margin") = 2, py::arg("field") = "q");
    m.def("compose", &compose_py, py::arg("objects"), py::arg("classes"), py::arg("field") = "q",
          "compose morphism classes (f, g) along a chain of objects");
    m.def("selftest", &selftest_py, py::arg("field") = "q", py::arg("seed") = 0,
          "run the acceptance suite; returns one record per criterion");
}
