#include "g2d/reps.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <sstream>

namespace g2d {

namespace {

std::vector<std::vector<long>> factor_cartan(const std::string& name) {
    if (name == "so5") return {{2, -2}, {-1, 2}};
    if (name == "so7") return {{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}};
    if (name == "g2") return {{2, -1}, {-3, 2}};
    if (name == "sp2") return {{2, -1}, {-2, 2}};
    if (name == "su3") return {{2, -1}, {-1, 2}};
    if (name == "so3" || name == "sp1" || name == "su2" || name == "sp1u" || name == "sp1d" || name == "su2d")
        return {{2}};
    throw unknown_group("no Cartan matrix for factor '" + name + "'");
}

// Positive roots of one simple factor by root strings, in simple-root coordinates.
std::vector<Weight> positive_roots_simple(const std::vector<std::vector<long>>& cartan) {
    const std::size_t r = cartan.size();
    auto dynkin = [&](const Weight& c) {
        Weight d(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) d[j] += c[i] * cartan[i][j];
        return d;
    };
    std::set<Weight> roots;
    std::vector<Weight> level;
    for (std::size_t i = 0; i < r; ++i) {
        Weight c(r, 0);
        c[i] = 1;
        roots.insert(c);
        level.push_back(c);
    }
    while (!level.empty()) {
        std::vector<Weight> next;
        for (const Weight& beta : level) {
            const Weight d = dynkin(beta);
            for (std::size_t i = 0; i < r; ++i) {
                long p = 0;
                Weight down = beta;
                while (true) {
                    --down[i];
                    if (!roots.count(down)) break;
                    ++p;
                }
                // β + α_i is a root iff q = p − ⟨β, α_i^∨⟩ > 0
                if (p - d[i] > 0) {
                    Weight up = beta;
                    ++up[i];
                    if (roots.insert(up).second) next.push_back(up);
                }
            }
        }
        level = std::move(next);
    }
    return {roots.begin(), roots.end()};
}

Weight add(Weight a, const Weight& b, long s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

long to_long(const Rational& q, const char* what) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::logic_error(std::string(what) + " is not an integer");
    return q.get_num().get_si();
}

Character orbit_fill(const RootDatum& d, const Weight& dom, long mult, Character& out) {
    std::set<Weight> seen{dom};
    std::deque<Weight> q{dom};
    while (!q.empty()) {
        const Weight w = q.front();
        q.pop_front();
        out[w] += mult;
        for (std::size_t i = 0; i < d.rank; ++i) {
            if (d.abelian[i] || w[i] == 0) continue;
            Weight v = d.reflect(w, i);
            if (seen.insert(v).second) q.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- RootDatum

Rational RootDatum::inner(const Weight& a, const Weight& b) const {
    Rational s = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < rank; ++j)
            if (b[j] != 0) s += gram[i][j] * a[i] * b[j];
    }
    return s;
}

Weight RootDatum::half_sum() const {
    Weight r(rank, 0);
    for (std::size_t i = 0; i < rank; ++i) r[i] = abelian[i] ? 0 : 1;
    return r;
}

bool RootDatum::is_dominant(const Weight& w) const {
    for (std::size_t i = 0; i < rank; ++i)
        if (!abelian[i] && w[i] < 0) return false;
    return true;
}

Weight RootDatum::reflect(const Weight& w, std::size_t i) const {
    Weight v = w;
    for (std::size_t j = 0; j < rank; ++j) v[j] -= w[i] * cartan[i][j];
    return v;
}

Weight RootDatum::dominant_conjugate(const Weight& w) const {
    Weight v = w;
    while (true) {
        std::size_t i = 0;
        while (i < rank && (abelian[i] || v[i] >= 0)) ++i;
        if (i == rank) return v;
        v = reflect(v, i);
    }
}

RootDatum make_root_datum(const std::string& name, const HomogeneousSpaceModel& s,
                          const std::vector<FactorData>& factors) {
    RootDatum d;
    d.name = name;
    for (const auto& f : factors) {
        d.factor_names.push_back(f.name);
        d.factor_offset.push_back(d.rank);
        d.factor_rank.push_back(f.coroots.size());
        d.factor_abelian.push_back(f.abelian);
        d.rank += f.coroots.size();
        for (const auto& c : f.coroots) {
            d.coroots.push_back(c);
            d.abelian.push_back(f.abelian);
        }
    }
    d.cartan.assign(d.rank, std::vector<long>(d.rank, 0));
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (factors[f].abelian) continue;
        const auto c = factor_cartan(factors[f].name);
        const std::size_t off = d.factor_offset[f];
        if (c.size() != d.factor_rank[f]) throw std::logic_error("rank mismatch for " + factors[f].name);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) d.cartan[off + i][off + j] = c[i][j];
        for (const Weight& rs : positive_roots_simple(c)) {
            Weight dyn(d.rank, 0);
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = 0; j < c.size(); ++j) dyn[off + j] += rs[i] * c[i][j];
            d.positive_roots.push_back(dyn);
        }
    }
    FieldMatrix k(d.rank, d.rank);
    for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j) k(i, j) = -s.g.killing(d.coroots[i], d.coroots[j]);
    const FieldMatrix g = inverse(k);
    d.gram.assign(d.rank, std::vector<Rational>(d.rank));
    for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j) d.gram[i][j] = g(i, j).to_rational();
    return d;
}

// ------------------------------------------------------------- registry

namespace {

struct Registry {
    std::map<std::string, HomogeneousSpaceModel> spaces;
    std::map<std::string, RootDatum> groups;
    std::map<std::string, SpaceData> data;
};

const Registry& registry() {
    static const std::unique_ptr<Registry> reg = [] {
        auto r = std::make_unique<Registry>();
        for (const auto& n : space_names()) r->spaces.emplace(n, build_space(n));
        auto add = [&](const std::string& name, const std::string& space, bool g_side, std::vector<std::size_t> pick) {
            const auto& s = r->spaces.at(space);
            const auto& all = g_side ? s.g_factors : s.h_factors;
            std::vector<FactorData> fs;
            if (pick.empty())
                fs = all;
            else
                for (auto p : pick) fs.push_back(all[p]);
            r->groups.emplace(name, make_root_datum(name, s, fs));
        };
        add("so7", "spin7-g2", true, {});
        add("g2", "spin7-g2", false, {});
        add("so5", "so5-so3", true, {});
        add("so3", "so5-so3", false, {});
        add("sp2sp1", "sp2sp1-sp1sp1", true, {});
        add("sp1sp1", "sp2sp1-sp1sp1", false, {});
        add("sp1u", "sp2sp1-sp1sp1", false, {0});
        add("sp1d", "sp2sp1-sp1sp1", false, {1});
        add("su3su2", "su3su2-su2u1", true, {});
        add("su2u1", "su3su2-su2u1", false, {});
        add("su2d", "su3su2-su2u1", false, {0});
        add("u1", "su3su2-su2u1", false, {1});
        const std::vector<std::tuple<std::string, std::string, std::string>> pairs = {
            {"spin7-g2", "so7", "g2"},
            {"so5-so3", "so5", "so3"},
            {"sp2sp1-sp1sp1", "sp2sp1", "sp1sp1"},
            {"su3su2-su2u1", "su3su2", "su2u1"}};
        for (const auto& [sp, gn, hn] : pairs) {
            const RootDatum& g = r->groups.at(gn);
            const RootDatum& h = r->groups.at(hn);
            r->data.emplace(sp, SpaceData{&r->spaces.at(sp), &g, &h, make_branching_map(g, h)});
        }
        return r;
    }();
    return *reg;
}

}  // namespace

const std::vector<std::string>& group_names() {
    static const std::vector<std::string> names = {"g2",     "so3",  "so5",  "so7",    "sp2sp1", "sp1sp1",
                                                   "sp1u",   "sp1d", "su3su2", "su2u1", "su2d",   "u1"};
    return names;
}

const RootDatum& group_datum(const std::string& name) {
    const auto& g = registry().groups;
    auto it = g.find(name);
    if (it == g.end()) throw unknown_group("unknown group '" + name + "'");
    return it->second;
}

const SpaceData& space_data(const std::string& space) {
    const auto& d = registry().data;
    auto it = d.find(space);
    if (it == d.end()) throw unknown_space("no root datum for space '" + space + "'");
    return it->second;
}

Weight BranchingMap::restrict(const Weight& w) const {
    Weight out(matrix.size(), 0);
    for (std::size_t j = 0; j < matrix.size(); ++j)
        for (std::size_t i = 0; i < w.size(); ++i) out[j] += matrix[j][i] * w[i];
    return out;
}

BranchingMap make_branching_map(const RootDatum& g, const RootDatum& h) {
    const SpanCoordinates span(g.coroots);
    BranchingMap m;
    for (const auto& c : h.coroots) {
        const FieldVector x = span.coordinates(c);  // throws if the H Cartan is not inside the G Cartan
        std::vector<long> row;
        for (const auto& e : x) row.push_back(to_long(e.to_rational(), "branching coefficient"));
        m.matrix.push_back(std::move(row));
    }
    return m;
}

// ------------------------------------------------------------ characters

Rational casimir_eigenvalue(const RootDatum& d, const Weight& lambda) {
    return d.inner(lambda, lambda) + 2 * d.inner(d.half_sum(), lambda);
}

long weyl_dimension(const RootDatum& d, const Weight& lambda) {
    const Weight rho = d.half_sum();
    const Weight lr = add(lambda, rho);
    Rational p = 1;
    for (const Weight& a : d.positive_roots) p *= d.inner(lr, a) / d.inner(rho, a);
    return to_long(p, "Weyl dimension");
}

Character weight_multiplicities(const RootDatum& d, const Weight& lambda) {
    if (!d.is_dominant(lambda)) throw std::invalid_argument("highest weight " + weight_str(lambda) + " is not dominant");
    // dominant weights below λ, with their depth in simple-root coordinates
    const std::size_t n = d.positive_roots.size();
    std::vector<long> heights(n);
    {
        // height of each positive root: solve α = Σ c_i α_i via the Cartan rows
        std::vector<Weight> simple;
        for (std::size_t i = 0; i < d.rank; ++i)
            if (!d.abelian[i]) simple.push_back(d.cartan[i]);
        FieldMatrix c(d.rank, simple.size());
        for (std::size_t a = 0; a < simple.size(); ++a)
            for (std::size_t j = 0; j < d.rank; ++j) c(j, a) = simple[a][j];
        for (std::size_t r = 0; r < n; ++r) {
            FieldVector rhs(d.rank);
            for (std::size_t j = 0; j < d.rank; ++j) rhs[j] = d.positive_roots[r][j];
            const auto x = solve(c, rhs);
            long h = 0;
            for (const auto& e : *x) h += to_long(e.to_rational(), "root coordinate");
            heights[r] = h;
        }
    }
    std::map<Weight, long> depth{{lambda, 0}};
    std::deque<Weight> q{lambda};
    while (!q.empty()) {
        const Weight mu = q.front();
        q.pop_front();
        for (std::size_t r = 0; r < n; ++r) {
            Weight nu = add(mu, d.positive_roots[r], -1);
            if (!d.is_dominant(nu) || depth.count(nu)) continue;
            depth[nu] = depth[mu] + heights[r];
            q.push_back(std::move(nu));
        }
    }
    std::vector<Weight> order;
    for (const auto& [w, h] : depth) order.push_back(w);
    std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) { return depth[a] < depth[b]; });

    const Weight rho = d.half_sum();
    const Rational top = d.inner(add(lambda, rho), add(lambda, rho));
    std::map<Weight, long> mult;
    auto lookup = [&](const Weight& w) {
        auto it = mult.find(d.dominant_conjugate(w));
        return it == mult.end() ? 0L : it->second;
    };
    for (const Weight& mu : order) {
        if (mu == lambda) {
            mult[mu] = 1;
            continue;
        }
        Rational num = 0;
        for (const Weight& a : d.positive_roots) {
            Weight v = add(mu, a);
            while (true) {
                const long m = lookup(v);
                if (m == 0) break;
                num += 2 * m * d.inner(v, a);
                v = add(v, a);
            }
        }
        const Rational den = top - d.inner(add(mu, rho), add(mu, rho));
        const long m = to_long(num / den, "Freudenthal multiplicity");
        if (m > 0) mult[mu] = m;
    }
    Character out;
    for (const auto& [w, m] : mult) orbit_fill(d, w, m, out);
    return out;
}

std::vector<Weight> enumerate_casimir_solutions(const RootDatum& d, const Rational& target) {
    if (target < 0) throw std::invalid_argument("Casimir target must be nonnegative");
    const Weight rho = d.half_sum();
    std::vector<long> lo(d.rank), hi(d.rank);
    for (std::size_t i = 0; i < d.rank; ++i) {
        if (d.abelian[i]) {
            // k² G_ii ≤ target
            long k = 0;
            while (Rational((k + 1) * (k + 1)) * d.gram[i][i] <= target) ++k;
            lo[i] = -k;
            hi[i] = k;
            continue;
        }
        for (std::size_t j = 0; j < d.rank; ++j)
            if (!d.abelian[j] && d.gram[i][j] < 0) throw std::logic_error("negative Gram entry breaks the search bound");
        Rational lin = 0;
        for (std::size_t j = 0; j < d.rank; ++j) lin += 2 * d.gram[i][j] * rho[j];
        const Rational b = target / lin;
        lo[i] = 0;
        hi[i] = to_long(Rational(b.get_num() / b.get_den()), "search bound");
    }
    std::vector<Weight> out;
    Weight w = lo;
    while (true) {
        if (casimir_eigenvalue(d, w) == target) out.push_back(w);
        std::size_t i = 0;
        while (i < d.rank && w[i] == hi[i]) w[i] = lo[i], ++i;
        if (i == d.rank) break;
        ++w[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

Character restrict_character(const Character& c, const BranchingMap& map) {
    Character out;
    for (const auto& [w, m] : c) out[map.restrict(w)] += m;
    return out;
}

Character character_of(const RootDatum& d, const IrrepMultiset& irreps) {
    Character out;
    for (const auto& [hw, m] : irreps)
        for (const auto& [w, k] : weight_multiplicities(d, hw)) out[w] += m * k;
    return out;
}

Character tensor_character(const Character& a, const Character& b) {
    Character out;
    for (const auto& [u, m] : a)
        for (const auto& [v, n] : b) out[add(u, v)] += m * n;
    return out;
}

Character adjoint_character(const RootDatum& d) {
    Character out;
    for (const Weight& a : d.positive_roots) {
        out[a] += 1;
        out[add(Weight(d.rank, 0), a, -1)] += 1;
    }
    out[Weight(d.rank, 0)] += static_cast<long>(d.rank);
    return out;
}

IrrepMultiset decompose(const RootDatum& d, Character c) {
    const Weight rho = d.half_sum();
    IrrepMultiset out;
    while (true) {
        for (auto it = c.begin(); it != c.end();)
            if (it->second == 0)
                it = c.erase(it);
            else if (it->second < 0)
                throw inconsistent_character("negative multiplicity at weight " + weight_str(it->first));
            else
                ++it;
        if (c.empty()) break;
        // a weight maximizing (w, ρ) is maximal for the dominance order; ties go to the lexicographic maximum
        auto best = c.begin();
        Rational best_val = d.inner(best->first, rho);
        for (auto it = std::next(c.begin()); it != c.end(); ++it) {
            const Rational v = d.inner(it->first, rho);
            if (v >= best_val) best = it, best_val = v;
        }
        const Weight hw = best->first;
        const long m = best->second;
        if (!d.is_dominant(hw)) throw inconsistent_character("maximal weight " + weight_str(hw) + " is not dominant");
        out[hw] += m;
        for (const auto& [w, k] : weight_multiplicities(d, hw)) c[w] -= m * k;
    }
    return out;
}

IrrepMultiset branch(const RootDatum& g, const Weight& lambda, const BranchingMap& map, const RootDatum& h) {
    return decompose(h, restrict_character(weight_multiplicities(g, lambda), map));
}

IrrepMultiset tensor_decompose(const RootDatum& d, const IrrepMultiset& a, const IrrepMultiset& b) {
    return decompose(d, tensor_character(character_of(d, a), character_of(d, b)));
}

long hom_multiplicity(const RootDatum& g, const Weight& w, const IrrepMultiset& v, const BranchingMap& map,
                      const RootDatum& h) {
    long total = 0;
    for (const auto& [u, m] : branch(g, w, map, h)) {
        auto it = v.find(u);
        if (it != v.end()) total += m * it->second;
    }
    return total;
}

IrrepMultiset isotropy_module(const SpaceData& sd) {
    Character c = restrict_character(adjoint_character(*sd.g), sd.map);
    for (const auto& [w, m] : adjoint_character(*sd.h)) c[w] -= m;
    return decompose(*sd.h, std::move(c));
}

std::string weight_str(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

Weight parse_weight(const std::string& text) {
    std::string t;
    for (char c : text) t += (c == ',' || c == '(' || c == ')') ? ' ' : c;
    std::istringstream in(t);
    Weight w;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw std::invalid_argument("malformed weight '" + text + "'");
        w.push_back(v);
    }
    if (w.empty()) throw std::invalid_argument("empty weight");
    return w;
}

}  // namespace g2d
