#include "cast/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cast {

CycloInt apply(const Placement& p, const CycloInt& z) {
    return rotate(p.reflect ? conj(z) : z, p.rot) + p.t;
}

bool same_placement(const Placement& a, const Placement& b) {
    const int n2 = 2 * a.t.n();
    return ((a.rot - b.rot) % n2 + n2) % n2 == 0 && a.reflect == b.reflect && equals(a.t, b.t);
}

int RuleSet::index_of(const std::string& id) const {
    for (size_t i = 0; i < prototiles.size(); ++i)
        if (prototiles[i].id == id) return static_cast<int>(i);
    return -1;
}

const Prototile& RuleSet::proto(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw std::invalid_argument("unknown prototile '" + id + "'");
    return prototiles[static_cast<size_t>(i)];
}

const SubstRule& RuleSet::rule(const std::string& parent) const {
    for (const auto& r : rules)
        if (r.parent == parent) return r;
    throw std::invalid_argument("no rule for prototile '" + parent + "'");
}

namespace {

// m with eta = zeta^m conj(eta); reflected parents need it.
std::optional<int> reflection_shift(const CycloInt& eta) {
    const int n = eta.n();
    const CycloInt c = conj(eta);
    for (int m = 0; m < 2 * n; ++m)
        if (equals(eta, rotate(c, m))) return m;
    return std::nullopt;
}

int mod2n(long r, int n) {
    const long n2 = 2L * n;
    return static_cast<int>(((r % n2) + n2) % n2);
}

}  // namespace

std::vector<std::string> validate(const RuleSet& rs) {
    std::vector<std::string> errs;
    if (rs.n < 2) errs.push_back("n must be at least 2");
    if (rs.multiplier.n() != rs.n || is_zero(rs.multiplier)) errs.push_back("multiplier must be a nonzero element of order n");
    if (!errs.empty()) return errs;
    for (const auto& t : rs.prototiles) {
        const std::string tag = "prototile '" + t.id + "': ";
        if (t.vertices.size() < 3) {
            errs.push_back(tag + "fewer than 3 vertices");
            continue;
        }
        bool order_ok = true;
        for (const auto& z : t.vertices)
            if (z.n() != rs.n) order_ok = false;
        if (!order_ok) {
            errs.push_back(tag + "vertex of the wrong order");
            continue;
        }
        if (!is_simple(t.vertices)) {
            errs.push_back(tag + "not a simple polygon");
            continue;
        }
        if (area_sign(t.vertices) <= 0) errs.push_back(tag + "not counter-clockwise");
        for (size_t i = 0; i < t.vertices.size(); ++i)
            if (!interior_angle_units(t.vertices, i))
                errs.push_back(tag + "angle at vertex " + std::to_string(i) + " is not a multiple of pi/n");
        if (!t.edge_flip.empty() && t.edge_flip.size() != t.vertices.size())
            errs.push_back(tag + "edge_flip length differs from vertex count");
        if (!t.marks.empty() && t.marks.size() != t.vertices.size())
            errs.push_back(tag + "marks length differs from vertex count");
        if (std::count_if(rs.prototiles.begin(), rs.prototiles.end(), [&](const Prototile& o) { return o.id == t.id; }) > 1)
            errs.push_back(tag + "duplicate id");
        int nrules = static_cast<int>(std::count_if(rs.rules.begin(), rs.rules.end(), [&](const SubstRule& r) { return r.parent == t.id; }));
        if (nrules != 1) errs.push_back(tag + std::to_string(nrules) + " rules (expected 1)");
    }
    bool any_reflect = false;
    for (const auto& r : rs.rules) {
        if (rs.index_of(r.parent) < 0) errs.push_back("rule for unknown prototile '" + r.parent + "'");
        for (const auto& c : r.children) {
            if (rs.index_of(c.id) < 0) errs.push_back("rule '" + r.parent + "': unknown child '" + c.id + "'");
            if (c.p.t.n() != rs.n) errs.push_back("rule '" + r.parent + "': translation of the wrong order");
            any_reflect = any_reflect || c.p.reflect;
        }
    }
    if (any_reflect && !reflection_shift(rs.multiplier))
        errs.push_back("reflected children need a multiplier with eta / conj(eta) a root of unity");
    for (const auto& w : rs.edge_path)
        if (w.n() != rs.n) errs.push_back("edge path step of the wrong order");
    return errs;
}

Polygon placed_polygon(const Prototile& t, const Placement& p) {
    Polygon out;
    out.reserve(t.vertices.size());
    for (const auto& z : t.vertices) out.push_back(apply(p, z));
    if (p.reflect) std::reverse(out.begin(), out.end());
    return out;
}

Polygon inflated_boundary(const RuleSet& rs, const Prototile& t) {
    Polygon out;
    const size_t m = t.vertices.size();
    if (rs.stone()) {
        for (const auto& z : t.vertices) out.push_back(rs.multiplier * z);
        return out;
    }
    for (size_t i = 0; i < m; ++i) {
        const CycloInt e = t.vertices[(i + 1) % m] - t.vertices[i];
        const bool flip = !t.edge_flip.empty() && t.edge_flip[i];
        CycloInt cur = rs.multiplier * t.vertices[i];
        out.push_back(cur);
        const size_t steps = rs.edge_path.size();
        for (size_t s = 0; s + 1 < steps; ++s) {
            const CycloInt& w = rs.edge_path[flip ? steps - 1 - s : s];
            cur += e * w;
            out.push_back(cur);
        }
    }
    return out;
}

std::vector<DiagElem> prototile_areas(const RuleSet& rs) {
    std::vector<DiagElem> a;
    a.reserve(rs.prototiles.size());
    for (const auto& t : rs.prototiles) a.push_back(area_ratio(t.vertices));
    return a;
}

DiagElem inflation_factor(const RuleSet& rs) {
    auto l = from_real_cyclo(norm_sq(rs.multiplier));
    if (!l) throw std::runtime_error("|eta|^2 is not in the diagonal ring");
    return *l;
}

RuleReport verify_rule(const RuleSet& rs, const SubstRule& rule) {
    RuleReport rep;
    rep.parent = rule.parent;
    const int pi = rs.index_of(rule.parent);
    if (pi < 0) {
        rep.problems.push_back("unknown parent '" + rule.parent + "'");
        return rep;
    }
    for (const auto& c : rule.children)
        if (rs.index_of(c.id) < 0) {
            rep.problems.push_back("unknown child '" + c.id + "'");
            return rep;
        }
    const Prototile& parent = rs.prototiles[static_cast<size_t>(pi)];
    const Polygon region = inflated_boundary(rs, parent);

    std::vector<Polygon> kids;
    kids.reserve(rule.children.size());
    for (const auto& c : rule.children) kids.push_back(placed_polygon(rs.proto(c.id), c.p));

    // area
    DiagElem lhs = inflation_factor(rs) * area_ratio(parent.vertices);
    for (const auto& c : rule.children) lhs -= area_ratio(rs.proto(c.id).vertices);
    rep.deficit = lhs;
    if (auto nn = nonneg_representative(lhs)) rep.deficit = *nn;
    rep.area_ok = is_zero(lhs);
    if (!rep.area_ok) rep.problems.push_back("AREA: deficit " + to_symbolic(rep.deficit));

    // boundary
    EdgeLedger ledger(rs.n);
    for (const auto& k : kids) ledger.add_chain(k, +1);
    ledger.add_chain(region, -1);
    auto res = ledger.residue();
    rep.boundary_ok = res.empty();
    for (size_t i = 0; i < res.size() && i < 6; ++i)
        rep.problems.push_back("BOUNDARY: unmatched edge " + embed_string(res[i].a, 4) + " -> " +
                               embed_string(res[i].b, 4) + " x" + std::to_string(res[i].count));

    // containment
    rep.containment_ok = true;
    for (size_t i = 0; i < kids.size(); ++i)
        for (const auto& z : kids[i])
            if (point_in_polygon(z, region) < 0) {
                rep.containment_ok = false;
                rep.problems.push_back("CONTAINMENT: child " + std::to_string(i) + " (" + rule.children[i].id +
                                       ") has vertex " + embed_string(z, 4) + " outside");
                break;
            }
    return rep;
}

std::vector<RuleReport> verify_all(const RuleSet& rs) {
    std::vector<RuleReport> out;
    for (const auto& r : rs.rules) out.push_back(verify_rule(rs, r));
    return out;
}

Patch seed_patch(const RuleSet& rs, const std::string& id) {
    int i = rs.index_of(id);
    if (i < 0) throw std::invalid_argument("unknown prototile '" + id + "'");
    Patch p;
    p.n = rs.n;
    p.tiles.push_back({i, Placement{0, false, CycloInt(rs.n)}});
    return p;
}

namespace {

struct CompiledChild {
    int proto;
    int s;
    bool g;
    CycloInt u, cu;
};

std::vector<std::vector<CompiledChild>> compile(const RuleSet& rs) {
    std::vector<std::vector<CompiledChild>> out(rs.prototiles.size());
    std::vector<bool> seen(rs.prototiles.size(), false);
    for (const auto& r : rs.rules) {
        int pi = rs.index_of(r.parent);
        if (pi < 0) throw std::invalid_argument("rule for unknown prototile '" + r.parent + "'");
        seen[static_cast<size_t>(pi)] = true;
        for (const auto& c : r.children) {
            int ci = rs.index_of(c.id);
            if (ci < 0) throw std::invalid_argument("unknown child '" + c.id + "'");
            out[static_cast<size_t>(pi)].push_back({ci, c.p.rot, c.p.reflect, c.p.t, conj(c.p.t)});
        }
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw std::invalid_argument("missing rule for prototile '" + rs.prototiles[i].id + "'");
    return out;
}

void expand(const RuleSet& rs, const std::vector<std::vector<CompiledChild>>& rules, std::optional<int> m,
            const PlacedTile* first, const PlacedTile* last, std::vector<PlacedTile>& out) {
    for (const PlacedTile* pt = first; pt != last; ++pt) {
        const Placement& P = pt->p;
        if (P.reflect && !m) throw std::runtime_error("reflected tile but eta / conj(eta) is not a root of unity");
        const CycloInt base = rs.multiplier * P.t;
        for (const auto& c : rules[static_cast<size_t>(pt->proto)]) {
            PlacedTile q;
            q.proto = c.proto;
            if (!P.reflect) {
                q.p.rot = mod2n(static_cast<long>(P.rot) + c.s, rs.n);
                q.p.reflect = c.g;
                q.p.t = rotate(c.u, P.rot) + base;
            } else {
                q.p.rot = mod2n(static_cast<long>(P.rot) + *m - c.s, rs.n);
                q.p.reflect = !c.g;
                q.p.t = rotate(c.cu, static_cast<long>(P.rot) + *m) + base;
            }
            out.push_back(std::move(q));
        }
    }
}

}  // namespace

Patch substitute(const RuleSet& rs, const Patch& patch) {
    const auto rules = compile(rs);
    const auto m = reflection_shift(rs.multiplier);
    Patch out;
    out.n = rs.n;
    out.generation = patch.generation + 1;
    const size_t N = patch.tiles.size();
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t chunks = (N < 4096 || hw == 1) ? 1 : std::min<size_t>(hw, N / 1024);
    if (chunks <= 1) {
        expand(rs, rules, m, patch.tiles.data(), patch.tiles.data() + N, out.tiles);
        return out;
    }
    // Chunks run concurrently and are concatenated in input order.
    std::vector<std::future<std::vector<PlacedTile>>> parts;
    for (size_t c = 0; c < chunks; ++c) {
        const size_t lo = N * c / chunks, hi = N * (c + 1) / chunks;
        parts.push_back(std::async(std::launch::async, [&, lo, hi] {
            std::vector<PlacedTile> buf;
            expand(rs, rules, m, patch.tiles.data() + lo, patch.tiles.data() + hi, buf);
            return buf;
        }));
    }
    for (auto& f : parts) {
        auto buf = f.get();
        std::move(buf.begin(), buf.end(), std::back_inserter(out.tiles));
    }
    return out;
}

Patch iterate(const RuleSet& rs, const std::string& seed, int k) {
    if (k < 0) throw std::invalid_argument("steps must be non-negative");
    Patch p = seed_patch(rs, seed);
    for (int i = 0; i < k; ++i) p = substitute(rs, p);
    return p;
}

std::vector<Int> count_tiles(const RuleSet& rs, const Patch& patch) {
    std::vector<Int> c(rs.prototiles.size(), 0);
    for (const auto& t : patch.tiles) c[static_cast<size_t>(t.proto)] += 1;
    return c;
}

std::vector<std::pair<size_t, size_t>> find_overlaps(const RuleSet& rs, const Patch& patch, size_t max_report) {
    struct Box {
        double x0, x1, y0, y1;
        size_t i;
    };
    std::vector<FPoly> polys;
    std::vector<Box> boxes;
    polys.reserve(patch.tiles.size());
    for (size_t i = 0; i < patch.tiles.size(); ++i) {
        const auto& t = patch.tiles[i];
        polys.push_back(to_float(placed_polygon(rs.prototiles[static_cast<size_t>(t.proto)], t.p)));
        Box b{1e300, -1e300, 1e300, -1e300, i};
        for (auto z : polys.back()) {
            b.x0 = std::min(b.x0, z.real());
            b.x1 = std::max(b.x1, z.real());
            b.y0 = std::min(b.y0, z.imag());
            b.y1 = std::max(b.y1, z.imag());
        }
        boxes.push_back(b);
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) { return a.x0 < b.x0 || (a.x0 == b.x0 && a.i < b.i); });
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t a = 0; a < boxes.size(); ++a)
        for (size_t b = a + 1; b < boxes.size() && boxes[b].x0 < boxes[a].x1 - 1e-9; ++b) {
            if (boxes[b].y0 >= boxes[a].y1 - 1e-9 || boxes[a].y0 >= boxes[b].y1 - 1e-9) continue;
            if (overlap_fp(polys[boxes[a].i], polys[boxes[b].i])) {
                out.push_back({std::min(boxes[a].i, boxes[b].i), std::max(boxes[a].i, boxes[b].i)});
                if (out.size() >= max_report) return out;
            }
        }
    return out;
}

SubstMatrix extract_matrix(const RuleSet& rs) {
    const int l = static_cast<int>(rs.prototiles.size());
    SubstMatrix M(rs.n, l);
    for (const auto& r : rs.rules) {
        const int i = rs.index_of(r.parent);
        if (i < 0) throw std::invalid_argument("rule for unknown prototile '" + r.parent + "'");
        for (const auto& c : r.children) {
            const int j = rs.index_of(c.id);
            if (j < 0) throw std::invalid_argument("unknown child '" + c.id + "'");
            M.at(i, j) += 1;
        }
    }
    const auto areas = prototile_areas(rs);
    const DiagElem lambda = inflation_factor(rs);
    for (int i = 0; i < l; ++i) {
        DiagElem row(rs.n);
        for (int j = 0; j < l; ++j) row += M.at(i, j) * areas[static_cast<size_t>(j)];
        if (!same_value(row, lambda * areas[static_cast<size_t>(i)]))
            throw std::runtime_error("inconsistent rule set: area eigen-relation fails for '" +
                                     rs.prototiles[static_cast<size_t>(i)].id + "'");
    }
    return M;
}

MergedMatrix merge_equal_area(const RuleSet& rs) {
    const SubstMatrix M = extract_matrix(rs);
    const auto areas = prototile_areas(rs);
    MergedMatrix out;
    for (int i = 0; i < static_cast<int>(areas.size()); ++i) {
        bool placed = false;
        for (size_t g = 0; g < out.groups.size(); ++g)
            if (same_value(out.areas[g], areas[static_cast<size_t>(i)])) {
                out.groups[g].push_back(i);
                placed = true;
                break;
            }
        if (!placed) {
            out.groups.push_back({i});
            out.areas.push_back(areas[static_cast<size_t>(i)]);
        }
    }
    std::vector<size_t> order(out.groups.size());
    for (size_t g = 0; g < order.size(); ++g) order[g] = g;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return out.areas[a].value() > out.areas[b].value(); });
    std::vector<std::vector<int>> groups;
    std::vector<DiagElem> gareas;
    for (size_t g : order) {
        groups.push_back(out.groups[g]);
        gareas.push_back(out.areas[g]);
    }
    out.groups = groups;
    out.areas = gareas;

    const int d = static_cast<int>(groups.size());
    out.m = SubstMatrix(rs.n, d);
    out.lumpable = true;
    for (int I = 0; I < d; ++I)
        for (int J = 0; J < d; ++J) {
            std::optional<Int> common;
            for (int i : groups[static_cast<size_t>(I)]) {
                Int s = 0;
                for (int j : groups[static_cast<size_t>(J)]) s += M.at(i, j);
                if (!common)
                    common = s;
                else if (*common != s)
                    out.lumpable = false;
            }
            out.m.at(I, J) = *common;
        }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Aperiodic: return "aperiodic";
        case Verdict::NotShown: return "not shown";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

double frequency_ratio(int n) {
    if (n < 4) throw std::invalid_argument("frequency ratio needs n >= 4");
    const double s = std::sin(2 * std::numbers::pi / n);
    return n == 4 ? s / 2 : s;
}

bool looks_irrational(double x, long max_den, double tol) {
    // Continued-fraction convergents up to the denominator bound.
    double r = x;
    long h0 = 1, h1 = static_cast<long>(std::floor(r)), k0 = 0, k1 = 1;
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return false;
        double frac = r - std::floor(r);
        if (frac < 1e-15) return false;
        r = 1.0 / frac;
        const long a = static_cast<long>(std::floor(r));
        const long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) return true;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    return true;
}

AperiodicityReport aperiodicity_check(const RuleSet& rs) {
    AperiodicityReport rep;
    const int n = rs.n;
    for (const auto& r : rs.rules) {
        for (size_t a = 0; a < r.children.size() && rep.witness.empty(); ++a)
            for (size_t b = a + 1; b < r.children.size(); ++b) {
                const auto& x = r.children[a];
                const auto& y = r.children[b];
                if (x.id != y.id || x.p.reflect != y.p.reflect) continue;
                const int d = mod2n(static_cast<long>(y.p.rot) - x.p.rot, n);
                if (d == 0) continue;
                std::ostringstream os;
                os << "rule " << r.parent << ": children #" << a << " and #" << b << " (" << x.id
                   << ") differ by rotation " << d << "*pi/" << n;
                rep.witness = os.str();
                break;
            }
        if (!rep.witness.empty()) break;
    }
    rep.primitive = is_primitive(extract_matrix(rs)).primitive;
    if (n < 4) {
        rep.verdict = Verdict::Undecided;
        rep.detail = "n < 4: the rotation criterion does not apply";
        return rep;
    }
    rep.frequency_ratio = frequency_ratio(n);
    rep.ratio_irrational = looks_irrational(rep.frequency_ratio);
    rep.verdict = (!rep.witness.empty() && rep.primitive) ? Verdict::Aperiodic : Verdict::NotShown;
    std::ostringstream os;
    os << "primitive=" << (rep.primitive ? "yes" : "no") << " witness=" << (rep.witness.empty() ? "none" : "found")
       << " frequency_ratio=" << rep.frequency_ratio << (rep.ratio_irrational ? " (irrational)" : " (rational)");
    rep.detail = os.str();
    return rep;
}

GirihReport girih_validate(int n, const Prototile& p) {
    GirihReport rep;
    const size_t m = p.vertices.size();
    if (m < 3) {
        rep.problems.push_back("fewer than 3 vertices");
        return rep;
    }
    for (const auto& z : p.vertices)
        if (z.n() != n) {
            rep.problems.push_back("vertex of the wrong order");
            return rep;
        }
    const CycloInt len0 = norm_sq(p.vertices[1] - p.vertices[0]);
    for (size_t i = 1; i < m; ++i)
        if (!equals(norm_sq(p.vertices[(i + 1) % m] - p.vertices[i]), len0))
            rep.problems.push_back("edge " + std::to_string(i) + " differs in length from edge 0");
    for (size_t i = 0; i < m; ++i) {
        auto k = interior_angle_units(p.vertices, i);
        if (!k)
            rep.problems.push_back("angle at vertex " + std::to_string(i) + " is not a multiple of pi/" + std::to_string(n));
        else if (*k == 1)
            rep.problems.push_back("angle at vertex " + std::to_string(i) + " is pi/" + std::to_string(n));
    }
    rep.ok = rep.problems.empty();
    return rep;
}

std::vector<std::vector<long>> orientation_counts(const RuleSet& rs, const Patch& patch) {
    std::vector<std::vector<long>> out(rs.prototiles.size(), std::vector<long>(static_cast<size_t>(4 * rs.n), 0));
    for (const auto& t : patch.tiles)
        out[static_cast<size_t>(t.proto)][static_cast<size_t>(mod2n(t.p.rot, rs.n) + (t.p.reflect ? 2 * rs.n : 0))]++;
    return out;
}

double orientation_chi_square(const std::vector<long>& counts) {
    long total = 0;
    int used = 0;
    for (long c : counts)
        if (c > 0) {
            total += c;
            ++used;
        }
    if (used == 0) return 0;
    const double e = static_cast<double>(total) / used;
    double chi = 0;
    for (long c : counts)
        if (c > 0) chi += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
    return chi / static_cast<double>(total);
}

}  // namespace cast
