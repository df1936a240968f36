#include "g2d/report.hpp"

#include <iomanip>
#include <sstream>

namespace g2d {

using nlohmann::json;

namespace {

const char* const kRadicals[8] = {"1", "sqrt2", "sqrt3", "sqrt5", "sqrt6", "sqrt10", "sqrt15", "sqrt30"};

std::string basis_name(int k) {
    if (k < 8) return kRadicals[k];
    return k == 8 ? "i" : std::string("i*") + kRadicals[k - 8];
}

std::string field_text(const FieldElement& x) { return x.is_rational() ? rational_str(x.to_rational()) : x.str(); }

}  // namespace

json field_json(const FieldElement& x) {
    json j = json::object();
    const auto c = x.coeffs();
    for (int k = 0; k < FieldElement::kDim; ++k)
        if (c[k] != 0) j[basis_name(k)] = rational_str(c[k]);
    return j;
}

json weight_json(const Weight& w) { return json(w); }

json multiset_json(const SpaceData& sd, const IrrepMultiset& m, bool of_g) {
    json a = json::array();
    for (const auto& [w, k] : m) {
        json e = {{"weight", weight_json(w)}, {"multiplicity", k}};
        if (of_g) {
            e["dim"] = weyl_dimension(*sd.g, w);
            e["label"] = irrep_label(sd, w);
        } else {
            e["dim"] = weyl_dimension(*sd.h, w);
        }
        a.push_back(std::move(e));
    }
    return a;
}

std::string deformation_row(const SpaceData& sd, const IrrepMultiset& m) {
    if (m.empty()) return "0";
    // larger representations first, as in the usual table layout
    std::vector<std::pair<Weight, long>> items(m.begin(), m.end());
    std::stable_sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
        return weyl_dimension(*sd.g, a.first) > weyl_dimension(*sd.g, b.first);
    });
    std::string out;
    for (const auto& [w, k] : items) {
        if (!out.empty()) out += " ⊕ ";
        if (k > 1) out += std::to_string(k);
        out += irrep_label(sd, w);
    }
    return out;
}

json report_json(const DeformationReport& r, bool with_timing) {
    const SpaceData& sd = space_data(r.space);
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["space"] = r.space;
    doc["structure_group"] = to_string(r.group);
    json comps = json::array();
    for (const auto& c : r.components) {
        json jc = {{"casimir", rational_str(c.casimir)}, {"dim", c.dim}, {"irreps", multiset_json(sd, c.irreps, false)}};
        json cands = json::array();
        for (const auto& cand : c.candidates) {
            json jd = {{"weight", weight_json(cand.weight)},
                       {"dim", cand.dim},
                       {"label", irrep_label(sd, cand.weight)},
                       {"lambda1_multiplicity", cand.lambda1_multiplicity},
                       {"lambda0_multiplicity", cand.lambda0_multiplicity}};
            if (cand.block) {
                const DiracBlock& b = *cand.block;
                json matrix = json::array();
                for (std::size_t i = 0; i < b.A.rows(); ++i) {
                    json row = json::array();
                    for (std::size_t k = 0; k < b.A.cols(); ++k) row.push_back(field_json(b.A(i, k)));
                    matrix.push_back(std::move(row));
                }
                json eig = json::array();
                for (const auto& [lambda, vecs] : b.eigen.spaces)
                    eig.push_back({{"value", rational_str(lambda)},
                                   {"geometric", vecs.size()},
                                   {"algebraic", b.eigen.algebraic.count(lambda) ? b.eigen.algebraic.at(lambda) : 0}});
                json sector = json::array();
                for (const auto& [lambda, d] : b.sector_dims) sector.push_back({{"value", rational_str(lambda)}, {"dim", d}});
                jd["construction"] = cand.construction;
                jd["block"] = {{"hom_dim", b.hom_dim},
                               {"lambda1_dim", b.lambda1_dim},
                               {"matrix", std::move(matrix)},
                               {"eigenvalues", std::move(eig)},
                               {"irrational_part", b.eigen.residual},
                               {"lambda1_spectrum", std::move(sector)},
                               {"sector_complete", b.sector_complete},
                               {"shift_identity", b.shift_identity},
                               {"deformation_dim", b.deformation_dim}};
            }
            cands.push_back(std::move(jd));
        }
        jc["candidates"] = std::move(cands);
        comps.push_back(std::move(jc));
    }
    doc["components"] = std::move(comps);
    doc["step1"] = multiset_json(sd, r.step1, true);
    json def = json::array();
    for (const auto& [w, k] : r.deformations)
        def.push_back({{"weight", weight_json(w)},
                       {"multiplicity", k},
                       {"complex_dim", k * weyl_dimension(*sd.g, w)},
                       {"label", irrep_label(sd, w)}});
    doc["deformation_space"] = std::move(def);
    doc["complex_dim"] = r.complex_dim;
    doc["table_row"] = deformation_row(sd, r.deformations);
    if (with_timing) doc["timing"] = {{"seconds", r.seconds}};
    return doc;
}

std::string report_text(const DeformationReport& r, bool with_timing) {
    const SpaceData& sd = space_data(r.space);
    std::ostringstream os;
    os << r.space << ", structure group " << (r.group == StructureGroup::H ? "H" : "G2") << "\n";
    for (const auto& c : r.components) {
        os << "  E component, Casimir " << rational_str(c.casimir) << ", dim " << c.dim << ":";
        for (const auto& [w, k] : c.irreps) os << " " << (k > 1 ? std::to_string(k) + "x" : "") << weight_str(w);
        os << "\n";
        for (const auto& cand : c.candidates) {
            os << "    " << weight_str(cand.weight) << " dim " << cand.dim << "  Λ¹ " << cand.lambda1_multiplicity
               << "  Λ⁰ " << cand.lambda0_multiplicity;
            if (cand.block) {
                const DiracBlock& b = *cand.block;
                os << "  [" << cand.construction << "] spectrum";
                for (const auto& [lambda, vecs] : b.eigen.spaces) os << " " << rational_str(lambda) << "^" << vecs.size();
                os << "  Λ¹-sector";
                for (const auto& [lambda, d] : b.sector_dims) os << " " << rational_str(lambda) << "^" << d;
                os << "  kernel(D+2) " << b.deformation_dim;
                if (b.A.rows() <= 4) {
                    os << "\n      A =";
                    for (std::size_t i = 0; i < b.A.rows(); ++i) {
                        os << (i ? "; " : " [");
                        for (std::size_t k = 0; k < b.A.cols(); ++k) os << (k ? ", " : "") << field_text(b.A(i, k));
                    }
                    os << "]";
                }
            }
            os << "\n";
        }
    }
    os << "  step 1:       " << deformation_row(sd, r.step1) << "\n";
    os << "  deformations: " << deformation_row(sd, r.deformations) << "  (complex dim " << r.complex_dim << ")\n";
    if (with_timing) os << "  time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
    return os.str();
}

json checks_json(const std::vector<CheckResult>& checks) {
    json a = json::array();
    for (const auto& c : checks)
        a.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return a;
}

std::string checks_text(const std::vector<CheckResult>& checks) {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << "[" << c.suite << "] " << c.name;
        if (!c.passed) os << "  -- " << c.detail;
        os << "\n";
    }
    return os.str();
}

}  // namespace g2d
