#include "cast/builtins.hpp"

#include <regex>
#include <stdexcept>

namespace cast {

std::optional<Placement> fit_placement(const Prototile& t, const Polygon& target) {
    const size_t m = t.vertices.size();
    if (target.size() != m || m == 0) return std::nullopt;
    const int n = target.front().n();
    for (int f = 0; f < 2; ++f)
        for (int r = 0; r < 2 * n; ++r) {
            Placement p{r, f == 1, CycloInt(n)};
            Polygon img = placed_polygon(t, p);
            for (size_t s = 0; s < m; ++s) {
                CycloInt shift = target[s] - img[0];
                bool ok = true;
                for (size_t i = 1; i < m && ok; ++i) ok = equals(img[i] + shift, target[(s + i) % m]);
                if (ok) {
                    p.t = shift;
                    return p;
                }
            }
        }
    return std::nullopt;
}

namespace {

CycloInt z(int n, long k) { return CycloInt::root(n, k); }
CycloInt one(int n) { return CycloInt::integer(n, 1); }

Child fit(const Prototile& t, const Polygon& target) {
    auto p = fit_placement(t, target);
    if (!p) throw std::logic_error("built-in dataset: no placement of " + t.id);
    return {t.id, *p};
}

}  // namespace

RuleSet penrose_robinson() {
    const int n = 5;
    const CycloInt phi = z(n, 1) + z(n, 9);  // 2 cos(pi/5)
    const CycloInt psi = phi - one(n);        // 1/phi
    RuleSet rs;
    rs.name = "penrose_robinson";
    rs.n = n;
    rs.multiplier = phi;
    // L: legs 1, apex pi/5 at the origin. S: legs 1/phi, apex 3pi/5.
    Prototile L{"L", {CycloInt(n), one(n), z(n, 1)}, {}, {}};
    Prototile S{"S", {CycloInt(n), psi, psi * z(n, 3)}, {}, {}};
    rs.prototiles = {L, S};

    // phi * L = (0, phi, phi z); E = 1 and D = z sit on its legs.
    const CycloInt B = phi, C = phi * z(n, 1), D = z(n, 1), E = one(n);
    rs.rules.push_back({"L", {fit(L, {CycloInt(n), E, D}), fit(L, {B, C, D}), fit(S, {E, B, D})}});
    // phi * S = (0, 1, z^3); P splits the base.
    const CycloInt z3 = z(n, 3);
    const CycloInt P = z3 + psi * (one(n) - z3);
    rs.rules.push_back({"S", {fit(L, {z3, CycloInt(n), P}), fit(S, {P, CycloInt(n), one(n)})}});
    return rs;
}

RuleSet ammann_beenker() {
    const int n = 4;
    auto c = [](long a, long b, long cc, long d) { return CycloInt(4, {a, b, cc, d}); };
    RuleSet rs;
    rs.name = "ammann_beenker";
    rs.n = n;
    rs.multiplier = c(1, 1, 0, -1);  // 1 + sqrt 2
    Prototile R{"R", {CycloInt(n), c(1, 0, 0, 0), c(1, 1, 0, 0), c(0, 1, 0, 0)}, {}, {}};
    Prototile T{"T", {CycloInt(n), c(1, 0, 0, 0), c(0, 0, 1, 0)}, {}, {}};
    rs.prototiles = {R, T};
    // Both dissections are symmetric under the symmetry of the inflated parent.
    rs.rules.push_back({"R",
                        {{"R", {0, false, c(0, 0, 0, 0)}},
                         {"T", {5, false, c(1, 1, 0, 0)}},
                         {"T", {2, false, c(1, 1, 0, 0)}},
                         {"R", {4, false, c(2, 2, 1, -1)}},
                         {"T", {6, false, c(1, 1, 1, -1)}},
                         {"R", {2, false, c(1, 1, 0, -1)}},
                         {"T", {1, false, c(1, 1, 1, -1)}}}});
    rs.rules.push_back({"T",
                        {{"R", {3, false, c(1, 1, 0, -1)}},
                         {"T", {5, false, c(0, 1, 0, 0)}},
                         {"T", {3, false, c(0, 1, 0, 0)}},
                         {"T", {0, false, c(0, 1, 0, 0)}},
                         {"R", {2, false, c(0, 1, 0, 0)}}}});
    return rs;
}

RuleSet lancon_billard(int n) {
    if (n < 4 || n > 8) throw std::invalid_argument("lancon_billard needs 4 <= n <= 8");
    RuleSet rs;
    rs.name = "lancon_billard(" + std::to_string(n) + ")";
    rs.n = n;
    rs.multiplier = one(n) + z(n, 1);
    rs.edge_path = {one(n), z(n, 1)};
    const CycloInt O(n);
    const CycloInt eta = rs.multiplier;

    auto rhomb = [&](int k) {
        return Prototile{"P" + std::to_string(k), {O, one(n), one(n) + z(n, k), z(n, k)}, {}, {false, false, true, true}};
    };
    auto pid = [](int k) { return "P" + std::to_string(k); };
    // Class-j rhomb spanned by zeta^s, zeta^(s+j) at p; the flipped label is the
    // same shape entered from its other acute end.
    auto rhomb_child = [&](int j, int s, const CycloInt& p, bool flipped) {
        if (!flipped) return Child{pid(j), Placement{s, false, p}};
        return Child{pid(n - j), Placement{(s + j) % (2 * n), false, p + z(n, s)}};
    };

    std::vector<int> ks;
    if (n % 2 == 0) {
        for (int k = n - 1; k >= 1; --k) ks.push_back(k);
        Prototile C{"C",
                    {O, one(n), eta, eta + z(n, n - 1), one(n) + z(n, n - 1), z(n, n - 1)},
                    {},
                    {false, false, false, true, true, true}};
        Prototile R = rhomb(n - 1);
        R.id = "R";
        rs.prototiles.push_back(C);
        rs.prototiles.push_back(R);
    } else {
        for (int k = 1; k < n; k += 2) ks.push_back(k);
        std::stable_sort(ks.begin(), ks.end(), [n](int a, int b) { return std::min(a, n - a) > std::min(b, n - b); });
    }
    for (int k : ks) rs.prototiles.push_back(rhomb(k));

    const Child r_child{"R", Placement{1, false, one(n) + z(n, n - 1)}};
    if (n % 2 == 0) {
        rs.rules.push_back({"C",
                            {Child{"C", Placement{0, false, O}}, r_child,
                             Child{pid(2), Placement{n - 1, false, eta + z(n, 1)}},
                             Child{pid(n - 3), Placement{2, false, eta + z(n, 1)}},
                             Child{pid(n - 1), Placement{1, false, eta + z(n, n - 1)}},
                             Child{pid(2), Placement{n, false, eta + z(n, 1) + z(n, n - 1) + z(n, 2)}}}});
        rs.rules.push_back({"R", {Child{"C", Placement{0, false, O}}, r_child}});
    }
    for (int k : ks) {
        SubstRule rule{pid(k), {}};
        if (k == n - 1) {
            rule.children = {Child{"C", Placement{0, false, O}}, r_child};
        } else {
            const bool flip = 2 * k != n;
            rule.children.push_back(Child{pid(k), Placement{0, false, O}});
            if (k >= 2) rule.children.push_back(rhomb_child(k - 1, 1, one(n), flip));
            rule.children.push_back(rhomb_child(k + 1, 0, z(n, k), flip));
            rule.children.push_back(Child{pid(k), Placement{1, false, one(n) + z(n, k)}});
        }
        rs.rules.push_back(rule);
    }
    return rs;
}

RuleSet builtin(const std::string& name) {
    if (name == "penrose_robinson" || name == "penrose") return penrose_robinson();
    if (name == "ammann_beenker") return ammann_beenker();
    static const std::regex lb(R"(lancon_billard[(:_]?([0-9]+)\)?)");
    std::smatch m;
    if (std::regex_match(name, m, lb)) return lancon_billard(std::stoi(m[1]));
    throw std::invalid_argument("unknown built-in '" + name + "'");
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> v = {"penrose_robinson", "ammann_beenker"};
    for (int n = 4; n <= 8; ++n) v.push_back("lancon_billard(" + std::to_string(n) + ")");
    return v;
}

}  // namespace cast
