#include "cast/builtins.hpp"
#include "cast/gaps.hpp"
#include "cast/json_io.hpp"
#include "doctest.h"

using namespace cast;

namespace {
Polygon rhomb(int n, int k) {
    return {CycloInt(n), CycloInt::root(n, 0), CycloInt::root(n, 0) + CycloInt::root(n, k), CycloInt::root(n, k)};
}
Polygon moved(const Polygon& poly, const Placement& p) {
    Polygon out;
    for (const auto& z : poly) out.push_back(apply(p, z));
    if (p.reflect) std::reverse(out.begin(), out.end());
    return out;
}
bool same_cycle(const Polygon& a, const Polygon& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!equals(a[i], b[i])) return false;
    return true;
}
GapsInput n4_input(const std::string& tag, const std::string& seq) {
    GapsInput in;
    in.n = 4;
    in.edge = parse_sequence(4, tag, seq);
    in.symmetry = Symmetry::D2;
    return in;
}
}  // namespace

TEST_CASE("canonical form ignores position and orientation") {
    const int n = 7;
    Polygon tri = {CycloInt(n), CycloInt::root(n, 0) * CycloInt::integer(n, 2), CycloInt::root(n, 3)};
    Canonical c0 = canonicalize(tri);
    for (int r = 0; r < 2 * n; ++r)
        for (bool f : {false, true}) {
            Placement p{r, f, CycloInt::root(n, 5) + CycloInt::integer(n, 3)};
            Polygon img = moved(tri, p);
            Canonical c = canonicalize(img);
            CHECK(same_cycle(c.form, c0.form));
            // the transform carries the form back onto the input
            CHECK(same_cycle(canonicalize(moved(c.form, c.transform)).form, c0.form));
            Polygon back = moved(c.form, c.transform);
            CHECK(congruent(back, img));
        }
    CHECK(same_cycle(canonicalize(c0.form).form, c0.form));  // idempotent
}

TEST_CASE("mirrored chiral triangle records a reflection") {
    const int n = 7;
    Polygon tri = {CycloInt(n), CycloInt::integer(n, 2), CycloInt::root(n, 2)};
    Polygon mirror = moved(tri, Placement{0, true, CycloInt(n)});
    Canonical a = canonicalize(tri), b = canonicalize(mirror);
    CHECK(same_cycle(a.form, b.form));
    CHECK(a.transform.reflect != b.transform.reflect);
}

TEST_CASE("distinct rhombs stay distinct") {
    CHECK_FALSE(congruent(rhomb(7, 1), rhomb(7, 2)));
    CHECK(congruent(rhomb(7, 2), rhomb(7, 5)));  // supplementary angles, same rhomb
    CHECK(congruent(rhomb(8, 3), moved(rhomb(8, 3), Placement{5, true, CycloInt::root(8, 1)})));
}

TEST_CASE("symmetries of a rhomb") {
    auto sym = polygon_symmetries(rhomb(6, 2));
    REQUIRE(!sym.empty());
    CHECK(sym.front().rot == 0);
    CHECK_FALSE(sym.front().reflect);
    CHECK(sym.size() == 4);  // D2
}

TEST_CASE("complete placements leave no gaps, one removal leaves one") {
    RuleSet rs = penrose_robinson();
    for (const auto& rule : rs.rules) {
        const Prototile& parent = rs.proto(rule.parent);
        Polygon region = inflated_boundary(rs, parent);
        std::vector<PlacedShape> placed;
        for (const auto& ch : rule.children) placed.push_back({rs.index_of(ch.id), ch.p});
        CHECK(extract_gaps(rs.prototiles, region, placed).empty());
        for (size_t i = 0; i < placed.size(); ++i) {
            auto rest = placed;
            rest.erase(rest.begin() + static_cast<long>(i));
            auto gaps = extract_gaps(rs.prototiles, region, rest);
            REQUIRE(gaps.size() == 1);
            CHECK(congruent(gaps.front(), placed_polygon(rs.prototiles[static_cast<size_t>(placed[i].proto)], placed[i].p)));
        }
    }
}

TEST_CASE("fill_region tiles a doubled rhomb") {
    const int n = 5;
    Prototile r{"R", rhomb(n, 2), {}, {}};
    Polygon big;
    for (const auto& z : rhomb(n, 2)) big.push_back(CycloInt::integer(n, 2) * z);
    FillOptions opt;
    FillResult res = fill_region({r}, big, {}, opt);
    REQUIRE(res.solutions.size() == 1);
    CHECK(res.solutions.front().size() == 4);
}

TEST_CASE("lifting into the doubled order") {
    CycloInt z = CycloInt::root(5, 3);
    CycloInt w = lift(z, 2);
    CHECK(w.n() == 10);
    CHECK(equals(w, CycloInt::root(10, 6)));
}

TEST_CASE("n = 4 edge of one R_1 closes with D2 symmetry") {
    GapsLimits lim;
    GapsOutcome out = gaps_search(n4_input("2a", "1"), lim);
    REQUIRE(out.kind == GapsOutcome::Kind::Closed);
    const RuleSet& rs = out.state.rules;
    for (const auto& rep : verify_all(rs)) CHECK(rep.ok());
    // worked at order 8, where mu(4,2) + 2 reads mu(8,3) + 1
    CHECK(rs.n == 8);
    CHECK(same_value(inflation_factor(rs), mu(8, 3) + DiagElem::integer(8, 1)));
    CHECK(out.state.frontier.empty());

    // identical inputs, identical outcome
    GapsOutcome again = gaps_search(n4_input("2a", "1"), lim);
    CHECK(to_json(again.state).dump() == to_json(out.state).dump());
}

TEST_CASE("two R_2 at one tip overlap") {
    GapsOutcome out = gaps_search(n4_input("1a", "2,0,2"), GapsLimits{});
    CHECK(out.kind == GapsOutcome::Kind::Failed);
    CHECK(out.reason.find("overlap") != std::string::npos);
}

TEST_CASE("limits stop the search and the state resumes") {
    GapsLimits tight;
    tight.max_rounds = 1;
    GapsOutcome part = gaps_search(n4_input("2a", "1"), tight);
    REQUIRE(part.kind == GapsOutcome::Kind::LimitReached);
    CHECK_FALSE(part.state.frontier.empty());

    Json j = to_json(part.state);
    GapsState back = gaps_state_from_json(j);
    CHECK(to_json(back).dump() == j.dump());

    GapsOutcome done = gaps_resume(back, GapsLimits{});
    CHECK(done.kind == GapsOutcome::Kind::Closed);
    GapsOutcome direct = gaps_search(n4_input("2a", "1"), GapsLimits{});
    CHECK(to_json(done.state.rules).dump() == to_json(direct.state.rules).dump());
}

TEST_CASE("symmetry names") {
    CHECK(to_string(Symmetry::D1) == "d1");
    CHECK(parse_symmetry("d2") == Symmetry::D2);
    CHECK_FALSE(parse_symmetry("d3").has_value());
}
