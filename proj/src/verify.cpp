#include "g2d/verify.hpp"

#include "g2d/dirac.hpp"

#include <algorithm>
#include <bit>

namespace g2d {

namespace {

CheckResult result(std::string suite, std::string name, std::string failure) {
    CheckResult r{std::move(suite), std::move(name), failure.empty(), std::move(failure)};
    return r;
}

std::string spinor_eigen_check(const G2StructureTable& t) {
    const FieldMatrix phi = form_action_matrix(t.phi_form(), t);
    const FieldMatrix psi = form_action_matrix(t.psi_form(), t);
    FieldVector eta(8);
    eta[0] = 1L;
    if (phi * eta != scale(eta, FieldElement(7L))) return "φ·η ≠ 7η";
    if (psi * eta != scale(eta, FieldElement(7L))) return "ψ·η ≠ 7η";
    for (int a = 0; a < 7; ++a) {
        const FieldVector x = clifford_matrix(a, t) * eta;
        const FieldVector minus_x = scale(x, FieldElement(-1L));
        if (phi * x != minus_x) return "φ·(e" + std::to_string(a + 1) + "·η) ≠ −e" + std::to_string(a + 1) + "·η";
        if (psi * x != minus_x) return "ψ·(e" + std::to_string(a + 1) + "·η) ≠ −e" + std::to_string(a + 1) + "·η";
    }
    return {};
}

}  // namespace

PForm random_form(std::mt19937& rng, int p) {
    std::uniform_int_distribution<int> coin(0, 1), num(-5, 5);
    static const FieldElement sqrt3 = parse_field("sqrt3");
    PForm f(p);
    for (unsigned m = 0; m < 128; ++m) {
        if (std::popcount(m) != p || coin(rng)) continue;
        std::vector<int> idx;
        for (int i = 0; i < 7; ++i)
            if (m >> i & 1) idx.push_back(i);
        FieldElement c(static_cast<long>(num(rng)));
        if (coin(rng)) c = c * sqrt3;
        f.set(idx, c);
    }
    return f;
}

std::vector<CheckResult> verify_clifford(const G2StructureTable& t, const std::string& label, unsigned seed,
                                         int forms_per_degree) {
    std::vector<CheckResult> out;
    const std::string suite = "clifford";
    out.push_back(result(suite, label + ": φφ = 6δ", t.check_phi_phi()));
    out.push_back(result(suite, label + ": φφ = 42", t.check_phi_norm()));
    out.push_back(result(suite, label + ": ψφ = −4φ", t.check_psi_phi()));
    out.push_back(result(suite, label + ": φ, ψ eigenvalues on η and X·η", spinor_eigen_check(t)));
    std::mt19937 rng(seed);
    for (int p = 0; p <= 7; ++p) {
        std::string failure;
        for (int k = 0; k < forms_per_degree && failure.empty(); ++k) {
            const PForm alpha = random_form(rng, p);
            if (!casimir_identity_check(alpha, t)) failure = "fails on " + alpha.str();
        }
        out.push_back(result(suite, label + ": Σ e_j·α·e_j, p = " + std::to_string(p), failure));
    }
    return out;
}

std::vector<CheckResult> verify_space(const HomogeneousSpaceModel& s) {
    std::vector<CheckResult> out;
    const std::string suite = "spaces";
    auto add = [&](const std::string& name, const std::string& failure) { out.push_back(result(suite, s.name + ": " + name, failure)); };
    add("antisymmetry", s.g.check_antisymmetry());
    add("Jacobi identity", s.g.check_jacobi());
    add("Killing form", s.g.check_killing());
    add("reductive", check_reductive(s));
    add("orthonormal frame", check_metric(s));
    add("B-orthogonal", check_orthogonal(s));
    add("isotropy inside g2", check_isotropy_in_g2(s));
    add("G2 table", s.phi.check_phi_phi() + s.phi.check_phi_norm() + s.phi.check_psi_phi());
    add("canonical torsion", canonical_torsion_check(s));
    add("canonical curvature", canonical_curvature_check(s));
    std::string cas;
    try {
        const Rational c = isotropy_casimir(s);
        if (c != Rational(16, 3)) cas = "isotropy Casimir is " + c.get_str();
    } catch (const std::exception& e) {
        cas = e.what();
    }
    add("isotropy Casimir = 16/3", cas);
    return out;
}

std::vector<CheckResult> verify_casimir(const std::string& space) {
    std::vector<CheckResult> out;
    const std::string suite = "casimir";
    const SpaceData& sd = space_data(space);
    const RootDatum& G = *sd.g;
    const HomogeneousSpaceModel& s = *sd.space;

    // Casimir operator of realized irreps against the Freudenthal value
    FieldMatrix k(s.g.dim(), s.g.dim());
    for (std::size_t a = 0; a < s.g.dim(); ++a)
        for (std::size_t b = 0; b < s.g.dim(); ++b) k(a, b) = -s.g.killing()(a, b);
    const FieldMatrix k_inv = inverse(k);
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < G.rank; ++i) {
        Weight w(G.rank, 0);
        w[i] = 1;
        weights.push_back(w);
        w[i] = 2;
        weights.push_back(w);
    }
    std::string realized;
    std::size_t count = 0;
    for (const Weight& w : weights) {
        IrrepRealization r;
        try {
            r = realize_irrep(sd, w, 2);
        } catch (const not_found_error&) {
            continue;  // spinor-type weights are out of reach of the matrix model
        }
        ++count;
        FieldMatrix c(static_cast<std::size_t>(r.dim), static_cast<std::size_t>(r.dim));
        for (std::size_t a = 0; a < s.g.dim(); ++a)
            for (std::size_t b = 0; b < s.g.dim(); ++b)
                if (!k_inv(a, b).is_zero()) c += (r.matrices[a] * r.matrices[b]).scaled(-k_inv(a, b));
        const Rational expect = casimir_eigenvalue(G, w);
        if (c != FieldMatrix::identity(c.rows()).scaled(FieldElement(expect))) {
            realized = "Casimir operator on " + weight_str(w) + " is not " + expect.get_str();
            break;
        }
    }
    if (realized.empty() && count == 0) realized = "no irreps realized";
    out.push_back(result(suite, space + ": Freudenthal value = Casimir operator on realized G-irreps", realized));

    // the Casimir of H splits E = 𝔤₂ with the Freudenthal eigenvalues of its constituents
    std::string split;
    try {
        casimir_components(sd, e_module(s, StructureGroup::G2));
    } catch (const std::exception& e) {
        split = e.what();
    }
    out.push_back(result(suite, space + ": H-Casimir eigenspaces of g2 match Freudenthal", split));
    return out;
}

bool all_passed(const std::vector<CheckResult>& r) {
    return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace g2d
