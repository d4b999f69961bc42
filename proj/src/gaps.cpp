#include "cast/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cast {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

double cross(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

double seg_dist(cd p, cd a, cd b) {
    const cd d = b - a;
    const double L2 = std::norm(d);
    if (L2 == 0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / L2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

int winding(cd p, const FPoly& poly) {
    int wn = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const cd a = poly[i], b = poly[(i + 1) % m];
        if (a.imag() <= p.imag()) {
            if (b.imag() > p.imag() && cross(b - a, p - a) > 0) ++wn;
        } else if (b.imag() <= p.imag() && cross(b - a, p - a) < 0) {
            --wn;
        }
    }
    return wn;
}

bool on_boundary(cd p, const FPoly& poly, double tol) {
    for (size_t i = 0; i < poly.size(); ++i)
        if (seg_dist(p, poly[i], poly[(i + 1) % poly.size()]) < tol) return true;
    return false;
}

// 1 inside, 0 on the boundary, -1 outside (a single polygon).
int locate(cd p, const FPoly& poly, double tol) {
    if (on_boundary(p, poly, tol)) return 0;
    return winding(p, poly) != 0 ? 1 : -1;
}

bool proper_cross(cd a, cd b, cd c, cd d, double tol) {
    const double la = std::abs(b - a), lc = std::abs(d - c);
    const double o1 = cross(b - a, c - a) / la, o2 = cross(b - a, d - a) / la;
    const double o3 = cross(d - c, a - c) / lc, o4 = cross(d - c, b - c) / lc;
    return ((o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol)) &&
           ((o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol));
}

double interior_angle(cd prev, cd v, cd next) {
    double a = std::arg(prev - v) - std::arg(next - v);
    while (a <= 1e-12) a += kTwoPi;
    while (a > kTwoPi + 1e-12) a -= kTwoPi;
    return a;
}

double float_area(const FPoly& p) {
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
    return s / 2;
}

struct GapView {
    std::vector<Polygon> cycles;
    std::vector<FPoly> fcycles;
    double scale = 1;
};

GapView gap_view(const Polygon& region, const std::vector<Polygon>& placed, int n) {
    EdgeLedger ledger(n);
    ledger.add_chain(region, +1);
    for (const auto& p : placed) ledger.add_chain(p, -1);
    GapView g;
    g.cycles = ledger.cycles();
    for (const auto& c : g.cycles) g.fcycles.push_back(to_float(c));
    double s = 1;
    for (auto z : to_float(region)) s = std::max(s, std::abs(z));
    g.scale = s;
    return g;
}

struct Shape {
    const Prototile* t;
    double area;
    // Per reflection: CCW base polygon, and its interior angles.
    Polygon base[2];
    std::vector<double> angle[2];
};

struct Solver {
    const std::vector<Prototile>& shapes;
    std::vector<Shape> info;
    std::vector<int> order;  // shape indices, largest area first
    const Polygon& region;
    FillOptions opt;
    int n;
    double min_area = 1e300;
    double region_area = 0;
    FillResult result;
    std::vector<PlacedShape> current;
    std::vector<Polygon> current_polys;

    Solver(const std::vector<Prototile>& s, const Polygon& r, const FillOptions& o)
        : shapes(s), region(r), opt(o), n(r.front().n()) {
        for (size_t i = 0; i < shapes.size(); ++i) {
            Shape sh;
            sh.t = &shapes[i];
            for (int f = 0; f < 2; ++f) {
                Polygon b = shapes[i].vertices;
                if (f) {
                    for (auto& z : b) z = conj(z);
                    std::reverse(b.begin(), b.end());
                }
                FPoly fb = to_float(b);
                for (size_t k = 0; k < fb.size(); ++k)
                    sh.angle[f].push_back(interior_angle(fb[(k + fb.size() - 1) % fb.size()], fb[k], fb[(k + 1) % fb.size()]));
                sh.base[f] = std::move(b);
            }
            sh.area = float_area(to_float(shapes[i].vertices));
            min_area = std::min(min_area, sh.area);
            info.push_back(std::move(sh));
            order.push_back(static_cast<int>(i));
        }
        region_area = float_area(to_float(region));
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return info[static_cast<size_t>(a)].area > info[static_cast<size_t>(b)].area + 1e-12; });
    }

    bool fits(const FPoly& tile, const GapView& g) const {
        const double tol = 1e-9 * g.scale;
        auto in_gap = [&](cd p) {
            int w = 0;
            for (const auto& c : g.fcycles) {
                if (on_boundary(p, c, tol)) return true;
                w += winding(p, c);
            }
            return w > 0;
        };
        cd centroid = 0;
        for (size_t i = 0; i < tile.size(); ++i) {
            const cd a = tile[i], b = tile[(i + 1) % tile.size()];
            if (!in_gap(a) || !in_gap((a + b) / 2.0)) return false;
            centroid += a;
        }
        for (const auto& tri : triangulate(tile)) {
            cd c = (tri[0] + tri[1] + tri[2]) / 3.0;
            if (!in_gap(c)) return false;
        }
        for (const auto& c : g.fcycles)
            for (size_t i = 0; i < c.size(); ++i) {
                const cd a = c[i], b = c[(i + 1) % c.size()];
                if (locate(a, tile, tol) > 0 || locate((a + b) / 2.0, tile, tol) > 0) return false;
                for (size_t j = 0; j < tile.size(); ++j)
                    if (proper_cross(a, b, tile[j], tile[(j + 1) % tile.size()], tol)) return false;
            }
        return true;
    }

    static std::string poly_key(const Polygon& poly) {
        std::vector<std::string> keys;
        for (const auto& z : poly) keys.push_back(point_key(z));
        std::sort(keys.begin(), keys.end());
        std::string key;
        for (const auto& k : keys) key += k + "|";
        return key;
    }

    // Adds the symmetric images of orbit[0]; false if two distinct images overlap.
    bool complete_orbit(std::vector<PlacedShape>& orbit, std::vector<Polygon>& polys) const {
        if (opt.symmetry.empty()) return true;
        std::set<std::string> seen{poly_key(polys.front())};
        std::vector<FPoly> fl{to_float(polys.front())};
        const PlacedShape base = orbit.front();
        for (const auto& gsym : opt.symmetry) {
            PlacedShape img{base.proto, compose(gsym, base.p)};
            Polygon poly = placed_polygon(*info[static_cast<size_t>(base.proto)].t, img.p);
            if (!seen.insert(poly_key(poly)).second) continue;
            FPoly f = to_float(poly);
            for (const auto& other : fl)
                if (overlap_fp(f, other)) return false;
            fl.push_back(std::move(f));
            orbit.push_back(img);
            polys.push_back(std::move(poly));
        }
        return true;
    }

    bool confirm_exact() const {
        EdgeLedger ledger(n);
        ledger.add_chain(region, +1);
        for (const auto& p : current_polys) ledger.add_chain(p, -1);
        return ledger.residue().empty();
    }

    // Returns true to stop the search.
    bool dfs() {
        if (result.attempts >= opt.budget) {
            result.exhausted = true;
            return true;
        }
        GapView g = gap_view(region, current_polys, n);
        if (g.cycles.empty()) {
            if (confirm_exact()) {
                result.solutions.push_back(current);
                if (result.solutions.size() >= opt.max_solutions) return true;
            }
            return false;
        }
        double total = 0;
        for (const auto& c : g.fcycles) total += float_area(c);
        if (opt.keep_best_partial && region_area - total > result.best_partial_area + 1e-9) {
            result.best_partial_area = region_area - total;
            result.best_partial = current;
        }
        if (total < min_area * (1 - 1e-9)) return false;

        // Sharpest corner, ties by position.
        size_t bc = 0, bv = 0;
        double best = 1e300;
        cd bpos;
        for (size_t ci = 0; ci < g.fcycles.size(); ++ci) {
            const auto& c = g.fcycles[ci];
            for (size_t vi = 0; vi < c.size(); ++vi) {
                double a = interior_angle(c[(vi + c.size() - 1) % c.size()], c[vi], c[(vi + 1) % c.size()]);
                const cd p = c[vi];
                bool better = a < best - 1e-9;
                if (!better && std::abs(a - best) <= 1e-9)
                    better = p.imag() < bpos.imag() - 1e-9 ||
                             (std::abs(p.imag() - bpos.imag()) <= 1e-9 && p.real() < bpos.real() - 1e-9);
                if (better) {
                    best = a;
                    bc = ci;
                    bv = vi;
                    bpos = p;
                }
            }
        }
        const Polygon& cyc = g.cycles[bc];
        const CycloInt& v = cyc[bv];
        const CycloInt gdir = cyc[(bv + 1) % cyc.size()] - v;

        std::set<std::string> seen;
        for (int si : order) {
            const Shape& sh = info[static_cast<size_t>(si)];
            for (int f = 0; f < (opt.allow_reflect ? 2 : 1); ++f) {
                const Polygon& B = sh.base[f];
                for (size_t k = 0; k < B.size(); ++k) {
                    if (sh.angle[f][k] > best + 1e-9) continue;
                    auto r = direction_index(CycloInt(n), gdir * conj(B[(k + 1) % B.size()] - B[k]));
                    if (!r) continue;
                    Placement P{*r, f == 1, v - rotate(B[k], *r)};
                    Polygon poly = placed_polygon(*sh.t, P);
                    if (opt.dedupe_geometry) {
                        std::vector<std::string> keys;
                        for (const auto& z : poly) keys.push_back(point_key(z));
                        std::sort(keys.begin(), keys.end());
                        std::string key = std::to_string(si);
                        for (const auto& s : keys) key += "|" + s;
                        if (!seen.insert(key).second) continue;
                    }
                    ++result.attempts;
                    if (!fits(to_float(poly), g)) {
                        if (result.attempts >= opt.budget) {
                            result.exhausted = true;
                            return true;
                        }
                        continue;
                    }
                    std::vector<PlacedShape> orbit{{si, P}};
                    std::vector<Polygon> orbit_polys{std::move(poly)};
                    if (!complete_orbit(orbit, orbit_polys)) continue;
                    for (size_t o = 0; o < orbit.size(); ++o) {
                        current.push_back(orbit[o]);
                        current_polys.push_back(orbit_polys[o]);
                    }
                    if (dfs()) return true;
                    current.resize(current.size() - orbit.size());
                    current_polys.resize(current_polys.size() - orbit.size());
                }
            }
        }
        return false;
    }
};

}  // namespace

FillResult fill_region(const std::vector<Prototile>& shapes, const Polygon& region,
                       const std::vector<PlacedShape>& fixed, const FillOptions& opt) {
    if (region.size() < 3) throw std::invalid_argument("region needs at least 3 vertices");
    Solver s(shapes, region, opt);
    for (const auto& p : fixed) {
        s.current.push_back(p);
        s.current_polys.push_back(placed_polygon(shapes.at(static_cast<size_t>(p.proto)), p.p));
    }
    s.dfs();
    return s.result;
}

std::vector<Polygon> extract_gaps(const std::vector<Prototile>& shapes, const Polygon& region,
                                  const std::vector<PlacedShape>& placed) {
    EdgeLedger ledger(region.front().n());
    ledger.add_chain(region, +1);
    for (const auto& p : placed) ledger.add_chain(placed_polygon(shapes.at(static_cast<size_t>(p.proto)), p.p), -1);
    return ledger.cycles();
}

Canonical canonicalize(const Polygon& shape) {
    const Polygon poly = drop_collinear(shape);
    const int n = poly.front().n();
    const size_t m = poly.size();
    Canonical best;
    bool have = false;
    std::vector<std::vector<Int>> best_key;
    for (int f = 0; f < 2; ++f)
        for (int r = 0; r < 2 * n; ++r) {
            Polygon img;
            for (const auto& z : poly) img.push_back(rotate(f ? conj(z) : z, r));
            if (f) std::reverse(img.begin(), img.end());
            for (size_t s = 0; s < m; ++s) {
                const CycloInt c = img[s];
                std::vector<std::vector<Int>> key;
                Polygon form;
                for (size_t i = 0; i < m; ++i) {
                    form.push_back(img[(s + i) % m] - c);
                    key.push_back(canonical(form.back()));
                }
                if (have && !(key < best_key)) continue;
                have = true;
                best_key = std::move(key);
                best.form = std::move(form);
                // input = g^{-1}(form + c)
                if (f)
                    best.transform = Placement{r, true, rotate(conj(c), r)};
                else
                    best.transform = Placement{(2 * n - r) % (2 * n), false, rotate(c, -r)};
            }
        }
    return best;
}

bool congruent(const Polygon& a, const Polygon& b) {
    const auto ca = canonicalize(a).form, cb = canonicalize(b).form;
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!equals(ca[i], cb[i])) return false;
    return true;
}

std::string to_string(GapsOutcome::Kind k) {
    switch (k) {
        case GapsOutcome::Kind::Closed: return "closed";
        case GapsOutcome::Kind::Failed: return "failed";
        case GapsOutcome::Kind::LimitReached: return "limit reached";
    }
    return "?";
}

Placement compose(const Placement& outer, const Placement& inner) {
    const int n = inner.t.n();
    Placement r;
    r.rot = ((outer.reflect ? outer.rot - inner.rot : outer.rot + inner.rot) % (2 * n) + 2 * n) % (2 * n);
    r.reflect = outer.reflect != inner.reflect;
    r.t = apply(outer, inner.t);
    return r;
}

CycloInt lift(const CycloInt& x, int factor) {
    if (factor == 1) return x;
    std::vector<Int> c(static_cast<size_t>(x.n() * factor));
    for (int k = 0; k < x.n(); ++k) c[static_cast<size_t>(k * factor)] = x[k];
    return CycloInt(x.n() * factor, std::move(c));
}

std::vector<Placement> polygon_symmetries(const Polygon& poly) {
    const int n = poly.front().n();
    std::set<std::string> target;
    for (const auto& z : poly) target.insert(point_key(z));
    std::vector<Placement> out;
    for (int f = 0; f < 2; ++f)
        for (int r = 0; r < 2 * n; ++r) {
            Placement lin{r, f == 1, CycloInt(n)};
            const CycloInt img0 = apply(lin, poly.front());
            for (const auto& v : poly) {
                Placement g = lin;
                g.t = v - img0;
                bool ok = true;
                for (const auto& z : poly)
                    if (!target.count(point_key(apply(g, z)))) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    out.push_back(g);
                    break;
                }
            }
        }
    return out;
}

std::string to_string(Symmetry s) { return s == Symmetry::D1 ? "d1" : "d2"; }

std::optional<Symmetry> parse_symmetry(const std::string& s) {
    if (s == "d1" || s == "D1") return Symmetry::D1;
    if (s == "d2" || s == "D2") return Symmetry::D2;
    return std::nullopt;
}

namespace {

struct Frame {
    int factor = 1;  // 2 lifts odd configurations to order 2n
    int N = 0;
    CycloInt eta;
    std::vector<int> s;  // per entry: the rhomb's edges leave the edge line at +-s
};

Frame frame_of(const EdgeSequence& e) {
    Frame fr;
    fr.factor = e.even_config() ? 1 : 2;
    fr.N = e.n * fr.factor;
    fr.eta = CycloInt(fr.N);
    for (int k : e.entries) {
        const int sk = k == 0 ? 0 : (fr.factor == 1 ? k / 2 : k);
        fr.s.push_back(sk);
        fr.eta += sk == 0 ? CycloInt::root(fr.N, 0) : CycloInt::root(fr.N, sk) + CycloInt::root(fr.N, 2L * fr.N - sk);
    }
    return fr;
}

std::string poly_key(const Polygon& poly) {
    std::vector<std::string> keys;
    for (const auto& z : poly) keys.push_back(point_key(z));
    std::sort(keys.begin(), keys.end());
    std::string key;
    for (const auto& k : keys) key += k + "|";
    return key;
}

std::string form_key(const Polygon& form) {
    std::string key;
    for (const auto& z : form) key += point_key(z) + ";";
    return key;
}

bool form_less(const Polygon& a, const Polygon& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        auto ca = canonical(a[i]), cb = canonical(b[i]);
        if (ca != cb) return ca < cb;
    }
    return false;
}

struct Search {
    GapsState st;
    GapsLimits lim;
    Frame fr;
    std::map<std::string, std::string> by_form;  // canonical key -> prototile id
    std::map<int, Placement> half_to_edge;       // entry k -> canonical H_k onto its edge frame
    std::map<int, std::string> half_id;

    Prototile& add_prototile(const std::string& id, Polygon form) {
        by_form[form_key(form)] = id;
        st.rules.prototiles.push_back(Prototile{id, std::move(form), {}, {}});
        return st.rules.prototiles.back();
    }

    void init_half_tiles() {
        for (size_t i = 0; i < st.edge.entries.size(); ++i) {
            const int k = st.edge.entries[i], sk = fr.s[i];
            if (k == 0 || half_to_edge.count(k)) continue;
            const Polygon raw{CycloInt(fr.N), CycloInt::root(fr.N, sk) + CycloInt::root(fr.N, 2L * fr.N - sk),
                              CycloInt::root(fr.N, sk)};
            Canonical c = canonicalize(raw);
            half_to_edge[k] = c.transform;
            const std::string key = form_key(c.form);
            if (!by_form.count(key)) add_prototile("H" + std::to_string(k), c.form);
            half_id[k] = by_form.at(key);
        }
    }

    // Edge tiles of the rule for `parent` (shape indices refer to st.rules.prototiles).
    std::vector<PlacedShape> edge_tiles(const Prototile& parent) const {
        std::vector<PlacedShape> out;
        const Polygon& v = parent.vertices;
        for (size_t i = 0; i < v.size(); ++i) {
            const CycloInt& a = v[i];
            const CycloInt& b = v[(i + 1) % v.size()];
            auto j = direction_index(a, b);
            if (!j) continue;
            Int L;
            if (!as_rational_integer((b - a) * CycloInt::root(fr.N, 2L * fr.N - *j), &L) || L <= 0) continue;
            const CycloInt u = CycloInt::root(fr.N, *j);
            for (Int s = 0; s < L; ++s) {
                CycloInt p = fr.eta * (a + s * u);
                for (size_t e = 0; e < st.edge.entries.size(); ++e) {
                    const int k = st.edge.entries[e], sk = fr.s[e];
                    if (k == 0) {
                        p += u;
                        continue;
                    }
                    const Placement onto{*j, false, p};
                    out.push_back({st.rules.index_of(half_id.at(k)), compose(onto, half_to_edge.at(k))});
                    p += u * (CycloInt::root(fr.N, sk) + CycloInt::root(fr.N, 2L * fr.N - sk));
                }
            }
        }
        return out;
    }

    std::vector<Placement> rule_symmetry(const Polygon& region, const std::vector<Polygon>& edge_polys) const {
        std::set<std::string> keys;
        for (const auto& p : edge_polys) keys.insert(poly_key(p));
        std::vector<Placement> kept;
        for (const auto& g : polygon_symmetries(region)) {
            bool ok = true;
            for (const auto& p : edge_polys) {
                Polygon img;
                for (const auto& z : p) img.push_back(apply(g, z));
                if (!keys.count(poly_key(img))) {
                    ok = false;
                    break;
                }
            }
            if (ok) kept.push_back(g);
        }
        // kept[0] is the identity; pick one mirror, and for D2 a perpendicular one.
        std::vector<Placement> group;
        const Placement* m1 = nullptr;
        for (const auto& g : kept)
            if (g.reflect) {
                m1 = &g;
                break;
            }
        if (!m1) return group;
        group.push_back(*m1);
        if (st.symmetry == Symmetry::D2)
            for (const auto& g : kept) {
                if (!g.reflect || &g == m1) continue;
                Placement prod = compose(*m1, g);
                if (!prod.reflect && prod.rot == fr.N) {
                    group.push_back(g);
                    group.push_back(prod);
                    break;
                }
            }
        return group;
    }

    // Shapes ordered by area (largest first), ties by canonical form.
    std::vector<int> fill_order() const {
        std::vector<int> idx(st.rules.prototiles.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::vector<double> area;
        for (const auto& t : st.rules.prototiles) area.push_back(area_ratio(t.vertices).value());
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            const double da = area[static_cast<size_t>(a)], db = area[static_cast<size_t>(b)];
            if (std::abs(da - db) > 1e-9 * std::max(1.0, std::abs(da))) return da > db;
            return form_less(st.rules.prototiles[static_cast<size_t>(a)].vertices,
                             st.rules.prototiles[static_cast<size_t>(b)].vertices);
        });
        return idx;
    }

    // Builds the rule for one prototile; new gap prototiles are appended to
    // `fresh`. Returns a failure reason, or empty on success.
    std::string build_rule(const std::string& id, std::vector<std::string>& fresh) {
        const Prototile parent = st.rules.proto(id);
        Polygon region;
        for (const auto& z : parent.vertices) region.push_back(fr.eta * z);

        std::vector<PlacedShape> edges = edge_tiles(parent);
        std::vector<Polygon> edge_polys;
        std::vector<FPoly> fedge;
        for (const auto& e : edges) {
            edge_polys.push_back(placed_polygon(st.rules.prototiles[static_cast<size_t>(e.proto)], e.p));
            fedge.push_back(to_float(edge_polys.back()));
        }
        for (size_t i = 0; i < edges.size(); ++i) {
            for (const auto& z : edge_polys[i])
                if (point_in_polygon(z, region) < 0)
                    return "overlap: edge tile " + std::to_string(i) + " leaves the inflated " + id;
            for (size_t j = i + 1; j < edges.size(); ++j)
                if (overlap_fp(fedge[i], fedge[j]))
                    return "overlap: edge tiles " + std::to_string(i) + " and " + std::to_string(j) + " in the rule of " + id;
        }

        const std::vector<int> order = fill_order();
        std::vector<int> rank(order.size());
        std::vector<Prototile> shapes;
        for (size_t r = 0; r < order.size(); ++r) {
            rank[static_cast<size_t>(order[r])] = static_cast<int>(r);
            shapes.push_back(st.rules.prototiles[static_cast<size_t>(order[r])]);
        }
        std::vector<PlacedShape> fixed;
        for (const auto& e : edges) fixed.push_back({rank[static_cast<size_t>(e.proto)], e.p});

        FillOptions opt;
        opt.budget = lim.budget;
        opt.keep_best_partial = true;
        opt.symmetry = rule_symmetry(region, edge_polys);
        FillResult fill = fill_region(shapes, region, fixed, opt);
        std::vector<PlacedShape> placed = fill.solutions.empty() ? fill.best_partial : fill.solutions.front();
        if (placed.size() < fixed.size()) placed = fixed;

        SubstRule rule{id, {}};
        for (const auto& p : placed) rule.children.push_back({shapes[static_cast<size_t>(p.proto)].id, p.p});
        if (fill.solutions.empty()) {
            std::vector<Polygon> gaps;
            try {
                gaps = extract_gaps(shapes, region, placed);
            } catch (const std::exception& ex) {
                return std::string("gap extraction failed: ") + ex.what();
            }
            for (const auto& gap : gaps) {
                if (gap.size() < 3 || !is_simple(gap)) return "gap in the rule of " + id + " is not a simple polygon";
                Canonical c = canonicalize(gap);
                try {
                    (void)area_ratio(c.form);
                } catch (const std::exception&) {
                    return "gap in the rule of " + id + " has an area outside the diagonal ring";
                }
                const std::string key = form_key(c.form);
                auto it = by_form.find(key);
                std::string gid;
                if (it != by_form.end()) {
                    gid = it->second;
                } else {
                    gid = "G" + std::to_string(st.rules.prototiles.size());
                    add_prototile(gid, c.form);
                    fresh.push_back(gid);
                }
                rule.children.push_back({gid, c.transform});
            }
        }
        st.rules.rules.push_back(std::move(rule));
        return "";
    }

    GapsOutcome run() {
        GapsOutcome out;
        while (!st.frontier.empty()) {
            if (st.round >= lim.max_rounds) {
                out.kind = GapsOutcome::Kind::LimitReached;
                out.reason = "round limit " + std::to_string(lim.max_rounds) + " reached";
                out.state = st;
                return out;
            }
            std::vector<std::string> fresh;
            std::vector<std::string> todo = st.frontier;
            for (size_t i = 0; i < todo.size(); ++i) {
                std::string why = build_rule(todo[i], fresh);
                if (!why.empty()) {
                    out.kind = GapsOutcome::Kind::Failed;
                    out.reason = why;
                    out.state = st;
                    return out;
                }
                st.frontier.erase(st.frontier.begin());
                if (static_cast<int>(st.rules.prototiles.size()) > lim.max_prototiles) {
                    st.frontier.insert(st.frontier.end(), fresh.begin(), fresh.end());
                    out.kind = GapsOutcome::Kind::LimitReached;
                    out.reason = "prototile limit " + std::to_string(lim.max_prototiles) + " exceeded";
                    out.state = st;
                    return out;
                }
            }
            st.frontier = fresh;
            ++st.round;
        }
        for (const auto& rep : verify_all(st.rules))
            if (!rep.ok()) {
                out.kind = GapsOutcome::Kind::Failed;
                out.reason = "rule for " + rep.parent + " fails verification: " +
                             (rep.problems.empty() ? std::string("?") : rep.problems.front());
                out.state = st;
                return out;
            }
        out.kind = GapsOutcome::Kind::Closed;
        out.reason = std::to_string(st.rules.prototiles.size()) + " prototiles after " + std::to_string(st.round) + " rounds";
        out.state = st;
        return out;
    }
};

std::string describe_multiplier(const EdgeSequence& e) {
    if (e.even_config()) return to_symbolic(multiplier_even_config(e));
    return multiplier_odd_config(e, OddWeighting::Diagonal).symbolic;
}

}  // namespace

GapsOutcome gaps_search(const GapsInput& in, const GapsLimits& limits) {
    if (in.edge.n != in.n) throw std::invalid_argument("edge sequence order differs from n");
    EdgeSequence edge = in.edge;
    {
        EdgeSequence probe = edge;
        probe.case_tag = std::string(edge.even_config() ? "1" : "2") + (edge.n % 2 ? "b" : "a");
        auto errs = validate(probe);
        if (!errs.empty()) throw std::invalid_argument("invalid edge: " + errs.front());
    }
    Search s;
    s.lim = limits;
    s.fr = frame_of(edge);
    s.st.n = in.n;
    s.st.edge = edge;
    s.st.symmetry = in.symmetry;
    s.st.rules.n = s.fr.N;
    s.st.rules.multiplier = s.fr.eta;
    s.st.rules.name = "gaps-n" + std::to_string(in.n) + "-" + format_sequence(edge) + "-" + to_string(in.symmetry);
    std::ostringstream note;
    note << "fill: largest area first, ties by canonical form; backtracking budget " << limits.budget
         << " placements; unfilled remainder becomes new prototiles. eta = " << describe_multiplier(edge);
    if (s.fr.factor == 2) note << "; odd configuration worked at order " << s.fr.N << " (eta real there)";
    s.st.note = note.str();

    Polygon seed;
    if (in.seed) {
        for (const auto& z : in.seed->vertices) {
            if (z.n() != in.n) throw std::invalid_argument("seed vertices must have order n");
            seed.push_back(lift(z, s.fr.factor));
        }
    } else {
        if (in.seed_class < 1 || in.seed_class > in.n - 1) throw std::invalid_argument("seed rhomb class must lie in [1, n-1]");
        const CycloInt w = CycloInt::root(s.fr.N, static_cast<long>(in.seed_class) * s.fr.factor);
        const CycloInt one = CycloInt::root(s.fr.N, 0);
        seed = {CycloInt(s.fr.N), one, one + w, w};
    }
    const std::string seed_id = in.seed ? in.seed->id : "R" + std::to_string(in.seed_class);
    s.add_prototile(seed_id, canonicalize(seed).form);
    s.init_half_tiles();
    for (const auto& t : s.st.rules.prototiles) s.st.frontier.push_back(t.id);
    return s.run();
}

GapsOutcome gaps_resume(const GapsState& state, const GapsLimits& limits) {
    Search s;
    s.lim = limits;
    s.st = state;
    s.fr = frame_of(state.edge);
    if (s.fr.N != state.rules.n || !equals(s.fr.eta, state.rules.multiplier))
        throw std::invalid_argument("state does not match its edge sequence");
    for (const auto& t : state.rules.prototiles) s.by_form[form_key(canonicalize(t.vertices).form)] = t.id;
    s.init_half_tiles();
    return s.run();
}

}  // namespace cast
