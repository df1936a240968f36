// g2deform: verification suites, single-shot representation computations and full
// deformation reports for the four normal homogeneous nearly-G2 spaces.

#include "g2d/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace g2d;
using nlohmann::json;

namespace {

enum class Format { Text, Json };

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<CheckResult> run_verify(const std::string& scope, const std::string& space_file) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
    const bool all = scope == "all";
    if (!space_file.empty()) {
        // user tables are loaded without validation so that every failure is reported
        const HomogeneousSpaceModel s = load_space_file(space_file, false);
        if (all || scope == "clifford") append(verify_clifford(s.phi, s.name));
        if (all || scope == "spaces") append(verify_space(s));
        if (scope == "casimir") throw std::invalid_argument("casimir checks need a built-in space with root data");
        return out;
    }
    for (const auto& name : space_names()) {
        const SpaceData& sd = space_data(name);
        if (all || scope == "clifford") append(verify_clifford(sd.space->phi, name));
        if (all || scope == "spaces") append(verify_space(*sd.space));
        if (all || scope == "casimir") append(verify_casimir(name));
    }
    return out;
}

std::string weights_line(const RootDatum& d, const IrrepMultiset& m) {
    std::string out;
    for (const auto& [w, k] : m) {
        if (!out.empty()) out += " + ";
        if (k > 1) out += std::to_string(k) + "x";
        out += weight_str(w);
    }
    (void)d;
    return out.empty() ? "0" : out;
}

// S^n notation when every factor of H is sp(1) ≅ su(2) ≅ so(3)
std::string symmetric_power_line(const RootDatum& h, const IrrepMultiset& m) {
    for (std::size_t f = 0; f < h.factor_names.size(); ++f)
        if (h.factor_abelian[f] || h.factor_rank[f] != 1) return {};
    std::string out;
    for (const auto& [w, k] : m) {
        if (!out.empty()) out += " + ";
        if (k > 1) out += std::to_string(k);
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "⊗S^" : "S^") + std::to_string(w[i]);
    }
    return out;
}

Weight to_weight(const std::vector<long>& v) { return Weight(v.begin(), v.end()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infinitesimal deformations of the canonical G2-instanton on normal homogeneous nearly-G2 spaces"};
    app.require_subcommand(1);
    std::string space_file;
    Format format = Format::Text;
    const std::map<std::string, Format> formats = {{"text", Format::Text}, {"json", Format::Json}};

    std::string scope = "all";
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("scope", scope, "all | clifford | spaces | casimir")
        ->check(CLI::IsMember({"all", "clifford", "spaces", "casimir"}));

    std::string space, group = "g2";
    bool timing = false;
    int threads = 0;
    auto* deform = app.add_subcommand("deform", "compute the deformation space of the canonical connection");
    deform->add_option("space", space, "space name")->required();
    deform->add_option("--group", group, "structure group of the bundle")->check(CLI::IsMember({"h", "g2"}));
    deform->add_option("--threads", threads, "worker threads (default: G2D_THREADS or all cores)");
    deform->add_flag("--timing", timing, "include wall-clock time");

    std::string group_name;
    std::vector<long> weight;
    auto* casimir = app.add_subcommand("casimir", "Casimir eigenvalue of an irreducible representation");
    casimir->add_option("group", group_name, "group name")->required();
    casimir->add_option("weight", weight, "highest weight in Dynkin labels")->required();

    std::string target;
    auto* solve = app.add_subcommand("solve", "dominant weights with a given Casimir eigenvalue");
    solve->add_option("group", group_name, "group name")->required();
    solve->add_option("target", target, "rational Casimir value, e.g. 2/3")->required();

    auto* branch_cmd = app.add_subcommand("branch", "restrict a G-irrep to H");
    branch_cmd->add_option("space", space, "space name")->required();
    branch_cmd->add_option("weight", weight, "highest weight of G")->required();

    for (auto* sub : {verify, deform, casimir, solve, branch_cmd}) {
        sub->add_option("--format", format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--space-file", space_file, "TOML description of a homogeneous space")->check(CLI::ExistingFile);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            const auto checks = run_verify(scope, space_file);
            const bool ok = all_passed(checks);
            if (format == Format::Json)
                emit({{"scope", scope}, {"passed", ok}, {"checks", checks_json(checks)}});
            else
                std::cout << checks_text(checks) << (ok ? "all checks passed" : "FAILED") << "\n";
            return ok ? 0 : 1;
        }
        if (*deform) {
            if (!space_file.empty()) {
                const HomogeneousSpaceModel s = load_space_file(space_file);
                throw std::invalid_argument("no root datum for space '" + s.name +
                                            "': deformation reports need one of the built-in spaces");
            }
            const DeformationReport r = assemble_report(space, parse_structure_group(group), threads);
            if (format == Format::Json)
                emit(report_json(r, timing));
            else
                std::cout << report_text(r, timing);
            return 0;
        }
        if (*casimir) {
            const RootDatum& d = group_datum(group_name);
            const Weight w = to_weight(weight);
            if (w.size() != d.rank) throw std::invalid_argument("expected " + std::to_string(d.rank) + " weight coordinates");
            if (!d.is_dominant(w)) throw std::invalid_argument("weight " + weight_str(w) + " is not dominant");
            const Rational c = casimir_eigenvalue(d, w);
            if (format == Format::Json)
                emit({{"group", group_name}, {"weight", w}, {"casimir", rational_str(c)}, {"dim", weyl_dimension(d, w)}});
            else
                std::cout << rational_str(c) << "\n";
            return 0;
        }
        if (*solve) {
            const RootDatum& d = group_datum(group_name);
            const auto sols = enumerate_casimir_solutions(d, parse_rational(target));
            if (format == Format::Json) {
                json a = json::array();
                for (const auto& w : sols) a.push_back({{"weight", w}, {"dim", weyl_dimension(d, w)}});
                emit({{"group", group_name}, {"target", rational_str(parse_rational(target))}, {"solutions", a}});
            } else {
                for (const auto& w : sols) std::cout << weight_str(w) << "\n";
            }
            return 0;
        }
        if (*branch_cmd) {
            const SpaceData& sd = space_data(space);
            const Weight w = to_weight(weight);
            if (w.size() != sd.g->rank || !sd.g->is_dominant(w))
                throw std::invalid_argument("weight " + weight_str(w) + " is not a dominant weight of " + sd.g->name);
            const IrrepMultiset m = branch(*sd.g, w, sd.map, *sd.h);
            if (format == Format::Json) {
                emit({{"space", space}, {"weight", w}, {"restriction", multiset_json(sd, m, false)}});
            } else {
                std::cout << weights_line(*sd.h, m);
                const std::string s = symmetric_power_line(*sd.h, m);
                if (!s.empty()) std::cout << "   " << s;
                std::cout << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
