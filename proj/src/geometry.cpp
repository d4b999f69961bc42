#include "cast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace cast {

int orient(const CycloInt& a, const CycloInt& b, const CycloInt& c) {
    return sign_imag(conj(b - a) * (c - a));
}

int dot_sign(const CycloInt& a, const CycloInt& b, const CycloInt& c) {
    return sign_real(conj(b - a) * (c - a));
}

bool strictly_inside_segment(const CycloInt& p, const CycloInt& a, const CycloInt& b) {
    if (orient(a, b, p) != 0) return false;
    return dot_sign(a, b, p) > 0 && dot_sign(b, a, p) > 0;
}

CycloInt twice_area_i(const Polygon& poly) {
    if (poly.empty()) throw std::invalid_argument("empty polygon");
    const int n = poly.front().n();
    CycloInt acc(n);
    for (size_t i = 0; i < poly.size(); ++i) {
        const CycloInt& z = poly[i];
        const CycloInt& w = poly[(i + 1) % poly.size()];
        CycloInt cz = conj(z) * w;
        acc += cz;
        acc -= conj(cz);
    }
    return acc;
}

int area_sign(const Polygon& poly) { return sign_imag(twice_area_i(poly)); }

DiagElem area_ratio(const Polygon& poly) {
    const int n = poly.front().n();
    // zeta - zeta^{-1} = 2i sin(pi/n), so the quotient is 2A / sin(pi/n).
    CycloInt denom = CycloInt::root(n, 1) - CycloInt::root(n, 2L * n - 1);
    auto q = exact_div(twice_area_i(poly), denom);
    if (!q) throw std::runtime_error("polygon area is not in the diagonal ring");
    auto d = from_real_cyclo(*q);
    if (!d) throw std::runtime_error("polygon area is not in the diagonal ring");
    return *d;
}

int point_in_polygon(const CycloInt& p, const Polygon& poly) {
    int wn = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const CycloInt& a = poly[i];
        const CycloInt& b = poly[(i + 1) % m];
        if (equals(p, a) || strictly_inside_segment(p, a, b)) return 0;
        const int ya = sign_imag(a - p), yb = sign_imag(b - p);
        if (ya <= 0) {
            if (yb > 0 && orient(a, b, p) > 0) ++wn;
        } else if (yb <= 0 && orient(a, b, p) < 0) {
            --wn;
        }
    }
    return wn != 0 ? 1 : -1;
}

std::optional<int> direction_index(const CycloInt& a, const CycloInt& b) {
    const CycloInt d = b - a;
    const int n = d.n();
    if (is_zero(d)) return std::nullopt;
    const auto f = embed_fast(d);
    const double step = std::numbers::pi / n;
    long guess = std::lround(std::arg(f) / step);
    auto test = [&](long j) {
        CycloInt r = rotate(d, -j);
        return is_real(r) && sign_real(r) > 0;
    };
    for (long off : {0L, 1L, -1L}) {
        long j = ((guess + off) % (2L * n) + 2L * n) % (2L * n);
        if (test(j)) return static_cast<int>(j);
    }
    return std::nullopt;
}

std::optional<int> interior_angle_units(const Polygon& poly, size_t i) {
    const size_t m = poly.size();
    const CycloInt& prev = poly[(i + m - 1) % m];
    const CycloInt& cur = poly[i];
    const CycloInt& next = poly[(i + 1) % m];
    auto din = direction_index(prev, cur);
    auto dout = direction_index(cur, next);
    if (din && dout) {
        const int n = cur.n();
        int turn = ((*dout - *din) % (2 * n) + 2 * n) % (2 * n);
        int units = ((n - turn) % (2 * n) + 2 * n) % (2 * n);
        if (units == 0) return std::nullopt;
        return units;
    }
    // Edges need not point along roots of unity; test the turn itself.
    const CycloInt w = (next - cur) * conj(cur - prev);
    auto j = direction_index(CycloInt(cur.n()), w);
    if (!j) return std::nullopt;
    const int n = cur.n();
    int units = ((n - *j) % (2 * n) + 2 * n) % (2 * n);
    if (units == 0) return std::nullopt;
    return units;
}

namespace {

bool segments_touch(const CycloInt& a, const CycloInt& b, const CycloInt& c, const CycloInt& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    auto on = [](const CycloInt& p, const CycloInt& s, const CycloInt& t) {
        return equals(p, s) || equals(p, t) || strictly_inside_segment(p, s, t);
    };
    return (o1 == 0 && on(c, a, b)) || (o2 == 0 && on(d, a, b)) || (o3 == 0 && on(a, c, d)) ||
           (o4 == 0 && on(b, c, d));
}

}  // namespace

bool is_simple(const Polygon& poly) {
    const size_t m = poly.size();
    if (m < 3) return false;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (equals(poly[i], poly[j])) return false;
    for (size_t i = 0; i < m; ++i) {
        const CycloInt& a = poly[i];
        const CycloInt& b = poly[(i + 1) % m];
        // adjacent edges: reject a fold back along the same line
        const CycloInt& c = poly[(i + 2) % m];
        if (orient(a, b, c) == 0 && dot_sign(b, a, c) > 0) return false;
        for (size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            if (segments_touch(a, b, poly[j], poly[(j + 1) % m])) return false;
        }
    }
    return true;
}

Polygon drop_collinear(const Polygon& poly) {
    Polygon out = poly;
    bool changed = true;
    while (changed && out.size() > 3) {
        changed = false;
        for (size_t i = 0; i < out.size() && out.size() > 3; ++i) {
            const size_t m = out.size();
            const CycloInt& prev = out[(i + m - 1) % m];
            const CycloInt& next = out[(i + 1) % m];
            if (orient(prev, out[i], next) == 0 && dot_sign(out[i], prev, next) < 0) {
                out.erase(out.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

int EdgeLedger::intern(const CycloInt& z) {
    auto [it, fresh] = index_.try_emplace(point_key(z), static_cast<int>(pts_.size()));
    if (fresh) pts_.push_back({z, embed_fast(z)});
    return it->second;
}

void EdgeLedger::add_point(const CycloInt& p) { intern(p); }

void EdgeLedger::add_chain(const Polygon& closed, int weight) {
    const size_t m = closed.size();
    std::vector<int> ids;
    ids.reserve(m);
    for (const auto& z : closed) ids.push_back(intern(z));
    for (size_t i = 0; i < m; ++i) {
        int a = ids[i], b = ids[(i + 1) % m];
        if (a != b) segs_.push_back({a, b, weight});
    }
}

std::vector<std::pair<std::pair<int, int>, int>> EdgeLedger::atomic() const {
    std::map<std::pair<int, int>, int> net;
    for (const auto& s : segs_) {
        const Pt& A = pts_[static_cast<size_t>(s.a)];
        const Pt& B = pts_[static_cast<size_t>(s.b)];
        const std::complex<double> d = B.f - A.f;
        const double len = std::abs(d);
        const double tol = 1e-9 * (1.0 + len + std::abs(A.f));
        std::vector<int> inner;
        for (size_t k = 0; k < pts_.size(); ++k) {
            const int ki = static_cast<int>(k);
            if (ki == s.a || ki == s.b) continue;
            const std::complex<double> q = pts_[k].f - A.f;
            const double cross = d.real() * q.imag() - d.imag() * q.real();
            const double along = d.real() * q.real() + d.imag() * q.imag();
            if (std::abs(cross) > tol * len || along < -tol * len || along > len * len + tol * len) continue;
            if (strictly_inside_segment(pts_[k].z, A.z, B.z)) inner.push_back(ki);
        }
        const CycloInt dir = conj(B.z - A.z);
        std::sort(inner.begin(), inner.end(), [&](int p, int q) {
            return sign_real(dir * (pts_[static_cast<size_t>(q)].z - pts_[static_cast<size_t>(p)].z)) > 0;
        });
        std::vector<int> chain;
        chain.push_back(s.a);
        chain.insert(chain.end(), inner.begin(), inner.end());
        chain.push_back(s.b);
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            int u = chain[i], v = chain[i + 1];
            if (u < v)
                net[{u, v}] += s.w;
            else
                net[{v, u}] -= s.w;
        }
    }
    std::vector<std::pair<std::pair<int, int>, int>> out;
    for (const auto& [k, c] : net)
        if (c != 0) out.push_back({k, c});
    return out;
}

std::vector<EdgeLedger::Residue> EdgeLedger::residue() const {
    std::vector<Residue> out;
    for (const auto& [k, c] : atomic()) {
        Residue r;
        if (c > 0) {
            r.a = pts_[static_cast<size_t>(k.first)].z;
            r.b = pts_[static_cast<size_t>(k.second)].z;
            r.count = c;
        } else {
            r.a = pts_[static_cast<size_t>(k.second)].z;
            r.b = pts_[static_cast<size_t>(k.first)].z;
            r.count = -c;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Polygon> EdgeLedger::cycles() const {
    struct E {
        int a, b;
        bool used = false;
    };
    std::vector<E> edges;
    for (const auto& [k, c] : atomic()) {
        const int a = c > 0 ? k.first : k.second;
        const int b = c > 0 ? k.second : k.first;
        for (int t = 0; t < std::abs(c); ++t) edges.push_back({a, b});
    }
    std::unordered_map<int, std::vector<size_t>> out_of;
    for (size_t i = 0; i < edges.size(); ++i) out_of[edges[i].a].push_back(i);

    std::vector<Polygon> result;
    for (size_t s = 0; s < edges.size(); ++s) {
        if (edges[s].used) continue;
        std::vector<int> verts;
        const int start = edges[s].a;
        size_t cur = s;
        while (true) {
            edges[cur].used = true;
            verts.push_back(edges[cur].a);
            const int v = edges[cur].b;
            if (v == start) break;
            const auto back = pts_[static_cast<size_t>(edges[cur].a)].f - pts_[static_cast<size_t>(v)].f;
            const double th_back = std::arg(back);
            double best = 1e9;
            size_t pick = edges.size();
            for (size_t cand : out_of[v]) {
                if (edges[cand].used) continue;
                const auto dir = pts_[static_cast<size_t>(edges[cand].b)].f - pts_[static_cast<size_t>(v)].f;
                double delta = th_back - std::arg(dir);
                while (delta <= 1e-12) delta += 2 * std::numbers::pi;
                while (delta > 2 * std::numbers::pi + 1e-12) delta -= 2 * std::numbers::pi;
                if (delta < best) {
                    best = delta;
                    pick = cand;
                }
            }
            if (pick == edges.size()) throw std::runtime_error("open boundary chain");
            cur = pick;
        }
        Polygon poly;
        for (int v : verts) poly.push_back(pts_[static_cast<size_t>(v)].z);
        result.push_back(drop_collinear(poly));
    }
    return result;
}

}  // namespace cast

namespace cast {

FPoly to_float(const Polygon& poly) {
    FPoly out;
    out.reserve(poly.size());
    for (const auto& z : poly) out.push_back(embed_fast(z));
    return out;
}

namespace {

double cross2(std::complex<double> a, std::complex<double> b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool inside_tri(std::complex<double> p, const std::complex<double>* t) {
    for (int i = 0; i < 3; ++i)
        if (cross2(t[(i + 1) % 3] - t[i], p - t[i]) < -1e-12) return false;
    return true;
}

bool separated(const FPoly& a, const FPoly& b, double eps) {
    for (const FPoly* p : {&a, &b}) {
        const size_t m = p->size();
        for (size_t i = 0; i < m; ++i) {
            const auto e = (*p)[(i + 1) % m] - (*p)[i];
            const auto nrm = std::complex<double>(e.imag(), -e.real()) / std::abs(e);
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (auto z : a) {
                double v = z.real() * nrm.real() + z.imag() * nrm.imag();
                amin = std::min(amin, v);
                amax = std::max(amax, v);
            }
            for (auto z : b) {
                double v = z.real() * nrm.real() + z.imag() * nrm.imag();
                bmin = std::min(bmin, v);
                bmax = std::max(bmax, v);
            }
            if (amax <= bmin + eps || bmax <= amin + eps) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<FPoly> triangulate(const FPoly& poly) {
    std::vector<FPoly> out;
    std::vector<std::complex<double>> v = poly;
    while (v.size() > 3) {
        bool cut = false;
        const size_t m = v.size();
        for (size_t i = 0; i < m; ++i) {
            const auto a = v[(i + m - 1) % m], b = v[i], c = v[(i + 1) % m];
            const double turn = cross2(b - a, c - b);
            if (turn < 0) continue;
            if (turn <= 1e-14 * (std::abs(b - a) * std::abs(c - b))) {
                v.erase(v.begin() + static_cast<long>(i));  // straight vertex
                cut = true;
                break;
            }
            const std::complex<double> tri[3] = {a, b, c};
            bool blocked = false;
            for (size_t k = 0; k < m && !blocked; ++k) {
                if (k == i || k == (i + 1) % m || k == (i + m - 1) % m) continue;
                if (std::abs(v[k] - a) < 1e-12 || std::abs(v[k] - b) < 1e-12 || std::abs(v[k] - c) < 1e-12) continue;
                blocked = inside_tri(v[k], tri);
            }
            if (blocked) continue;
            out.push_back({a, b, c});
            v.erase(v.begin() + static_cast<long>(i));
            cut = true;
            break;
        }
        if (!cut) break;  // degenerate input; return what we have
    }
    if (v.size() == 3 && std::abs(cross2(v[1] - v[0], v[2] - v[0])) > 1e-14) out.push_back(v);
    return out;
}

bool overlap_fp(const FPoly& a, const FPoly& b, double eps) {
    auto ta = triangulate(a), tb = triangulate(b);
    for (const auto& x : ta)
        for (const auto& y : tb)
            if (!separated(x, y, eps)) return true;
    return false;
}

}  // namespace cast
