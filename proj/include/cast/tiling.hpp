#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cast/geometry.hpp"
#include "cast/matrix.hpp"

namespace cast {

// z -> zeta^rot * (reflect ? conj(z) : z) + t
struct Placement {
    int rot = 0;
    bool reflect = false;
    CycloInt t;
};

CycloInt apply(const Placement& p, const CycloInt& z);
bool same_placement(const Placement& a, const Placement& b);

struct Prototile {
    std::string id;
    Polygon vertices;            // counter-clockwise
    std::vector<int> marks;      // optional per-vertex labels
    std::vector<bool> edge_flip; // per edge; orientation of the edge path
};

struct Child {
    std::string id;
    Placement p;
};

struct SubstRule {
    std::string parent;
    std::vector<Child> children;
};

struct RuleSet {
    std::string name;
    int n = 0;
    CycloInt multiplier;
    std::vector<Prototile> prototiles;
    std::vector<SubstRule> rules;
    // Unit path replacing each inflated edge e by e*w_0, e*w_1, ... (empty = straight).
    std::vector<CycloInt> edge_path;
    bool stone() const { return edge_path.empty(); }

    int index_of(const std::string& id) const;  // -1 if absent
    const Prototile& proto(const std::string& id) const;
    const SubstRule& rule(const std::string& parent) const;
};

// Structural validation: simple CCW prototiles with angles in pi/n units,
// one rule per prototile, children referencing known prototiles.
std::vector<std::string> validate(const RuleSet& rs);

Polygon placed_polygon(const Prototile& t, const Placement& p);  // CCW order
// Boundary of the inflated prototile (jagged when an edge path is set).
Polygon inflated_boundary(const RuleSet& rs, const Prototile& t);

struct RuleReport {
    std::string parent;
    bool area_ok = false, boundary_ok = false, containment_ok = false;
    DiagElem deficit;  // lambda * area(parent) - sum area(children)
    std::vector<std::string> problems;
    bool ok() const { return area_ok && boundary_ok && containment_ok; }
};
RuleReport verify_rule(const RuleSet& rs, const SubstRule& rule);
std::vector<RuleReport> verify_all(const RuleSet& rs);

struct PlacedTile {
    int proto = 0;
    Placement p;
};

struct Patch {
    int n = 0;
    int generation = 0;
    std::vector<PlacedTile> tiles;
};

Patch seed_patch(const RuleSet& rs, const std::string& id);
Patch substitute(const RuleSet& rs, const Patch& patch);
Patch iterate(const RuleSet& rs, const std::string& seed, int k);
std::vector<Int> count_tiles(const RuleSet& rs, const Patch& patch);
// Tiles of the patch that overlap with positive area (pairs of indices),
// tested in floating point for tiles whose bounding boxes meet.
std::vector<std::pair<size_t, size_t>> find_overlaps(const RuleSet& rs, const Patch& patch,
                                                     size_t max_report = 8);

// Rows are parents: M[i][j] counts prototile j in the rule of prototile i.
SubstMatrix extract_matrix(const RuleSet& rs);
std::vector<DiagElem> prototile_areas(const RuleSet& rs);
DiagElem inflation_factor(const RuleSet& rs);  // |eta|^2 in the diagonal ring

struct MergedMatrix {
    SubstMatrix m;
    std::vector<std::vector<int>> groups;  // prototile indices per merged class
    std::vector<DiagElem> areas;
    bool lumpable = false;
};
// Classes of equal area ordered by decreasing area.
MergedMatrix merge_equal_area(const RuleSet& rs);

enum class Verdict { Aperiodic, NotShown, Undecided };
std::string to_string(Verdict v);

struct AperiodicityReport {
    Verdict verdict = Verdict::Undecided;
    bool primitive = false;
    std::string witness;  // description of the rotated-copy witness, if any
    double frequency_ratio = 0;
    bool ratio_irrational = false;
    std::string detail;
};
AperiodicityReport aperiodicity_check(const RuleSet& rs);

// Relative frequency of the two orientations distinguishing a tile pair;
// sin(2 pi / n), halved for n = 4.
double frequency_ratio(int n);
// No p/q with q <= max_den approximates x within tol.
bool looks_irrational(double x, long max_den = 1000000, double tol = 1e-14);

struct GirihReport {
    bool ok = false;
    std::vector<std::string> problems;
};
// All edges of equal length, every inner angle k*pi/n with k >= 2.
GirihReport girih_validate(int n, const Prototile& p);

// Tile counts per prototile split by orientation: index rot + 2n * reflect.
std::vector<std::vector<long>> orientation_counts(const RuleSet& rs, const Patch& patch);
// Chi-square statistic of the orientation counts of one prototile against
// the uniform distribution over the orientations that occur.
double orientation_chi_square(const std::vector<long>& counts);

}  // namespace cast
