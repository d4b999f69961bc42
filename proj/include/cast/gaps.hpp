#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cast/edge.hpp"
#include "cast/tiling.hpp"

namespace cast {

struct PlacedShape {
    int proto = 0;  // index into the shape list handed to the solver
    Placement p;
};

struct FillOptions {
    size_t budget = 10000;      // placement attempts
    size_t max_solutions = 1;
    bool allow_reflect = true;
    // Drop candidates whose polygon coincides with an earlier candidate of the
    // same shape (symmetric shapes).
    bool dedupe_geometry = true;
    // Isometries of the region (identity excluded); every placement is
    // completed to its orbit, and orbits that self-overlap are rejected.
    std::vector<Placement> symmetry;
    // Remember the deepest partial tiling (largest covered area).
    bool keep_best_partial = false;
};

struct FillResult {
    std::vector<std::vector<PlacedShape>> solutions;
    size_t attempts = 0;
    bool exhausted = false;  // budget ran out before the search finished
    std::vector<PlacedShape> best_partial;
    double best_partial_area = 0;
};

// Exact tilings of region (CCW) by copies of the shapes, extending `fixed`.
// Candidates anchor at the sharpest corner of the uncovered part with one
// edge aligned; fit tests run in floating point, and every reported solution
// is confirmed exactly by edge cancellation.
FillResult fill_region(const std::vector<Prototile>& shapes, const Polygon& region,
                       const std::vector<PlacedShape>& fixed, const FillOptions& opt);

// Uncovered parts of region after the placements, as closed CCW polygons.
std::vector<Polygon> extract_gaps(const std::vector<Prototile>& shapes, const Polygon& region,
                                  const std::vector<PlacedShape>& placed);

struct Canonical {
    Polygon form;         // vertices, least over the 4n symmetries, first vertex at 0
    Placement transform;  // maps form onto the input polygon
};
Canonical canonicalize(const Polygon& shape);
bool congruent(const Polygon& a, const Polygon& b);

// Isometries z -> zeta^r (conj z) + t mapping the polygon onto itself,
// identity first.
std::vector<Placement> polygon_symmetries(const Polygon& poly);
Placement compose(const Placement& outer, const Placement& inner);  // outer after inner
// Z[zeta_2n] inside Z[zeta_2n*factor].
CycloInt lift(const CycloInt& x, int factor);

enum class Symmetry { D1, D2 };

struct GapsLimits {
    int max_rounds = 12;
    int max_prototiles = 64;
    size_t budget = 10000;
};

struct GapsState {
    int n = 0;           // order of the edge data
    EdgeSequence edge;
    Symmetry symmetry = Symmetry::D2;
    RuleSet rules;       // working frame: order n, or 2n for odd configurations
    std::vector<std::string> frontier;  // prototiles still lacking a rule
    int round = 0;
    std::string note;
};

struct GapsOutcome {
    enum class Kind { Closed, Failed, LimitReached } kind = Kind::Failed;
    std::string reason;
    GapsState state;
};
std::string to_string(GapsOutcome::Kind k);

struct GapsInput {
    int n = 0;
    // The edge shared by every supertile, as a unit-step path from 0 to the
    // inflated edge vector eta, with the rhombs sitting on it.
    EdgeSequence edge;
    Symmetry symmetry = Symmetry::D2;
    // Initial prototile (order n); a unit rhomb of class `seed_class` when empty.
    std::optional<Prototile> seed;
    int seed_class = 1;
};

// Every unit edge of a prototile carries the edge sequence: a segment for R_0,
// and for R_k the half of the rhomb lying inside the supertile ("H<k>" edge
// tiles), so each rule is a plain dissection of the inflated prototile.
GapsOutcome gaps_search(const GapsInput& in, const GapsLimits& limits);
GapsOutcome gaps_resume(const GapsState& state, const GapsLimits& limits);
std::string to_string(Symmetry s);
std::optional<Symmetry> parse_symmetry(const std::string& s);

}  // namespace cast
