#pragma once
// Hand-derived reference values shared by the unit tests and the acceptance runner.

#include "g2d/reps.hpp"

#include <functional>

namespace g2d::oracles {

inline Rational q(long p, long d = 1) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

using ClosedForm = std::function<Rational(const Weight&)>;

// Hand-derived closed forms in Dynkin coordinates, normalized by −B of G.
inline const std::map<std::string, ClosedForm>& closed_forms() {
    static const std::map<std::string, ClosedForm> f = {
        {"so7",
         [](const Weight& w) -> Rational {
             const long a = w[0], b = w[1], c = w[2];
             return q(3 * a * a + 8 * b * b + 4 * c * c + 8 * a * b + 4 * a * c + 8 * b * c + 18 * a + 32 * b + 20 * c, 40);
         }},
        {"g2", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 3 * w[1] * w[1] + 3 * w[0] * w[1] + 5 * w[0] + 9 * w[1], 15); }},
        {"so5", [](const Weight& w) -> Rational { return q(2 * w[0] * w[0] + w[1] * w[1] + 2 * w[0] * w[1] + 6 * w[0] + 4 * w[1], 12); }},
        {"so3", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 120); }},
        {"sp2sp1",
         [](const Weight& w) -> Rational {
             return q(w[0] * w[0] + 2 * w[1] * w[1] + 2 * w[0] * w[1] + 4 * w[0] + 6 * w[1], 12) +
                    q(w[2] * w[2] + 2 * w[2], 8);
         }},
        {"sp1u", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 12); }},
        {"sp1d", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 20); }},
        {"sp1sp1", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 12) + q(w[1] * w[1] + 2 * w[1], 20); }},
        {"su3su2",
         [](const Weight& w) -> Rational {
             return q(w[0] * w[0] + w[1] * w[1] + w[0] * w[1] + 3 * w[0] + 3 * w[1], 9) + q(w[2] * w[2] + 2 * w[2], 8);
         }},
        {"su2d", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 20); }},
        {"u1", [](const Weight& w) -> Rational { return q(w[0] * w[0], 36); }},
        {"su2u1", [](const Weight& w) -> Rational { return q(w[0] * w[0] + 2 * w[0], 20) + q(w[1] * w[1], 36); }},
    };
    return f;
}

// all weights with coordinates in [lo, 4], lo = −4 on u(1) coordinates
inline std::vector<Weight> grid(const RootDatum& d) {
    std::vector<Weight> out;
    Weight w(d.rank);
    for (std::size_t i = 0; i < d.rank; ++i) w[i] = d.abelian[i] ? -4 : 0;
    while (true) {
        out.push_back(w);
        std::size_t i = 0;
        while (i < d.rank && w[i] == 4) w[i] = d.abelian[i] ? -4 : 0, ++i;
        if (i == d.rank) break;
        ++w[i];
    }
    return out;
}

}  // namespace g2d::oracles
