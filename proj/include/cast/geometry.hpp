#pragma once

#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cast/diag.hpp"

namespace cast {

using Polygon = std::vector<CycloInt>;

// Exact sign of cross(b - a, c - a).
int orient(const CycloInt& a, const CycloInt& b, const CycloInt& c);
// Exact sign of dot(b - a, c - a).
int dot_sign(const CycloInt& a, const CycloInt& b, const CycloInt& c);
// p lies on segment ab, strictly between the endpoints.
bool strictly_inside_segment(const CycloInt& p, const CycloInt& a, const CycloInt& b);

// Sum of conj(z_i) z_{i+1} - z_i conj(z_{i+1}); equals 4i times the signed area.
CycloInt twice_area_i(const Polygon& poly);
int area_sign(const Polygon& poly);
// Area divided by sin(pi/n)/2 as an element of Z[mu_n].
DiagElem area_ratio(const Polygon& poly);

// -1 outside, 0 on the boundary, 1 inside. The polygon may be non-simple
// (e.g. with zero-width spikes); the winding number decides.
int point_in_polygon(const CycloInt& p, const Polygon& poly);

// Direction index j with b - a = zeta^j * r for real r > 0, if any.
std::optional<int> direction_index(const CycloInt& a, const CycloInt& b);
// Interior angle at vertex i of a counter-clockwise polygon, in units of pi/n
// (k with angle k*pi/n), if it is such a multiple.
std::optional<int> interior_angle_units(const Polygon& poly, size_t i);

bool is_simple(const Polygon& poly);
Polygon drop_collinear(const Polygon& poly);

// Floating-point helpers for heuristics (overlap spot checks, search pruning).
using FPoly = std::vector<std::complex<double>>;
FPoly to_float(const Polygon& poly);
std::vector<FPoly> triangulate(const FPoly& poly);  // ear clipping, CCW input
// Positive-area intersection; contacts thinner than eps do not count.
bool overlap_fp(const FPoly& a, const FPoly& b, double eps = 1e-9);

// Directed segment multiset with splitting at interior points and signed
// cancellation. Chains are added with a weight of +1 or -1.
class EdgeLedger {
public:
    explicit EdgeLedger(int n) : n_(n) {}
    void add_chain(const Polygon& closed, int weight);
    void add_point(const CycloInt& p);

    struct Residue {
        CycloInt a, b;  // directed segment with positive net count
        int count = 0;
    };
    std::vector<Residue> residue() const;
    // Residue chained into closed counter-clockwise cycles.
    std::vector<Polygon> cycles() const;

private:
    struct Pt {
        CycloInt z;
        std::complex<double> f;
    };
    int n_;
    std::vector<Pt> pts_;
    std::unordered_map<std::string, int> index_;
    struct Seg {
        int a, b, w;
    };
    std::vector<Seg> segs_;
    int intern(const CycloInt& z);
    std::vector<std::pair<std::pair<int, int>, int>> atomic() const;
};

}  // namespace cast
