// Python bindings.  Structured results cross the boundary as the same JSON the CLI emits.

#include "g2d/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace g2d;

namespace {

Weight to_weight(const std::vector<long>& v) { return Weight(v.begin(), v.end()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computations for G2-instanton deformations on homogeneous nearly-G2 spaces";

    m.def("space_names", &space_names);
    m.def("group_names", &group_names);

    m.def("casimir", [](const std::string& group, const std::vector<long>& w) {
        const RootDatum& d = group_datum(group);
        const Weight lambda = to_weight(w);
        if (lambda.size() != d.rank || !d.is_dominant(lambda)) throw std::invalid_argument("not a dominant weight of " + group);
        return rational_str(casimir_eigenvalue(d, lambda));
    }, py::arg("group"), py::arg("weight"));

    m.def("dimension", [](const std::string& group, const std::vector<long>& w) {
        return weyl_dimension(group_datum(group), to_weight(w));
    }, py::arg("group"), py::arg("weight"));

    m.def("solve", [](const std::string& group, const std::string& target) {
        return enumerate_casimir_solutions(group_datum(group), parse_rational(target));
    }, py::arg("group"), py::arg("target"));

    m.def("branch", [](const std::string& space, const std::vector<long>& w) {
        const SpaceData& sd = space_data(space);
        const IrrepMultiset r = branch(*sd.g, to_weight(w), sd.map, *sd.h);
        return std::vector<std::pair<Weight, long>>(r.begin(), r.end());
    }, py::arg("space"), py::arg("weight"));

    m.def("deform_json", [](const std::string& space, const std::string& group, int threads) {
        DeformationReport r;
        {
            py::gil_scoped_release release;
            r = assemble_report(space, parse_structure_group(group), threads);
        }
        return report_json(r).dump();
    }, py::arg("space"), py::arg("group") = "g2", py::arg("threads") = 0);

    m.def("verify_json", [](const std::string& scope) {
        std::vector<CheckResult> out;
        for (const auto& name : space_names()) {
            const SpaceData& sd = space_data(name);
            auto add = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
            if (scope == "all" || scope == "clifford") add(verify_clifford(sd.space->phi, name));
            if (scope == "all" || scope == "spaces") add(verify_space(*sd.space));
            if (scope == "all" || scope == "casimir") add(verify_casimir(name));
        }
        return checks_json(out).dump();
    }, py::arg("scope") = "all");

    m.def("mixing_block", [](const std::string& space, const std::vector<long>& w, const std::vector<long>& e) {
        const MixingBlock mb = mixing_block(space, to_weight(w), to_weight(e));
        std::vector<std::vector<std::string>> matrix(2, std::vector<std::string>(2));
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) matrix[r][c] = mb.M(r, c).str();
        std::map<std::string, std::string> ratio;
        for (const auto& [lambda, x] : mb.ratio) ratio[rational_str(lambda)] = x.str();
        return py::make_tuple(matrix, ratio);
    }, py::arg("space"), py::arg("weight"), py::arg("e_irrep"));

    py::register_exception<unknown_space>(m, "UnknownSpace", PyExc_ValueError);
    py::register_exception<unknown_group>(m, "UnknownGroup", PyExc_ValueError);
}
