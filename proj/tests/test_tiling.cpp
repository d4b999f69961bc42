#include <cmath>

#include "cast/builtins.hpp"
#include "cast/json_io.hpp"
#include "cast/tiling.hpp"
#include "doctest.h"

using namespace cast;

namespace {
std::vector<RuleSet> all_builtins() {
    std::vector<RuleSet> out;
    for (const auto& name : builtin_names()) out.push_back(builtin(name));
    return out;
}
}  // namespace

TEST_CASE("built-in rule sets verify") {
    for (const auto& rs : all_builtins()) {
        CAPTURE(rs.name);
        CHECK(validate(rs).empty());
        for (const auto& rep : verify_all(rs)) {
            CAPTURE(rep.parent);
            CHECK(rep.area_ok);
            CHECK(rep.boundary_ok);
            CHECK(rep.containment_ok);
        }
    }
}

TEST_CASE("a missing child shows up as an area deficit") {
    RuleSet rs = penrose_robinson();
    SubstRule rule = rs.rule("L");
    int s_index = -1;
    for (size_t i = 0; i < rule.children.size(); ++i)
        if (rule.children[i].id == "S") s_index = static_cast<int>(i);
    REQUIRE(s_index >= 0);
    rule.children.erase(rule.children.begin() + s_index);
    RuleReport rep = verify_rule(rs, rule);
    CHECK_FALSE(rep.area_ok);
    CHECK_FALSE(rep.boundary_ok);
    auto areas = prototile_areas(rs);
    const DiagElem& aL = areas[static_cast<size_t>(rs.index_of("L"))];
    const DiagElem& aS = areas[static_cast<size_t>(rs.index_of("S"))];
    CHECK(same_value(rep.deficit, aS));
    // golden triangles: legs 1 vs 1/phi, apex pi/5 vs 3pi/5
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(aL.value() / aS.value() - phi) < 1e-12);
}

TEST_CASE("iterated patches count like matrix powers") {
    for (const auto& rs : {penrose_robinson(), ammann_beenker(), lancon_billard(6)}) {
        CAPTURE(rs.name);
        SubstMatrix m = extract_matrix(rs);
        for (size_t s = 0; s < rs.prototiles.size(); ++s)
            for (int k = 0; k <= 3; ++k) {
                Patch p = iterate(rs, rs.prototiles[s].id, k);
                auto counts = count_tiles(rs, p);
                SubstMatrix mk = matrix_pow(m, static_cast<unsigned>(k));
                for (int j = 0; j < m.dim(); ++j) CHECK(counts[static_cast<size_t>(j)] == mk.at(static_cast<int>(s), j));
            }
    }
}

TEST_CASE("substituted patches do not overlap") {
    RuleSet rs = penrose_robinson();
    CHECK(find_overlaps(rs, iterate(rs, "L", 4)).empty());
    RuleSet ab = ammann_beenker();
    CHECK(find_overlaps(ab, iterate(ab, ab.prototiles.front().id, 3)).empty());
}

TEST_CASE("inflation factor is |eta|^2") {
    CHECK(same_value(inflation_factor(penrose_robinson()), mu(5, 2) + DiagElem::integer(5, 1)));
    CHECK(std::abs(inflation_factor(ammann_beenker()).value() - std::pow(1 + std::sqrt(2.0), 2)) < 1e-12);
    for (int n = 4; n <= 8; ++n)
        CHECK(same_value(inflation_factor(lancon_billard(n)), mu(n, 2) + DiagElem::integer(n, 2)));
}

TEST_CASE("merged matrix of the Ammann-Beenker set") {
    MergedMatrix mm = merge_equal_area(ammann_beenker());
    CHECK(mm.lumpable);
    CHECK(compact_matrix(mm.m) == "[[3,4],[2,3]]");
}

TEST_CASE("aperiodicity verdicts") {
    auto pen = aperiodicity_check(penrose_robinson());
    CHECK(pen.primitive);
    CHECK(pen.verdict == Verdict::Aperiodic);
    CHECK(looks_irrational(std::sqrt(2.0)));
    CHECK_FALSE(looks_irrational(0.75));
    CHECK_FALSE(looks_irrational(0.5));
}

TEST_CASE("json round trip of rules and patches") {
    for (const auto& rs : all_builtins()) {
        CAPTURE(rs.name);
        Json j = to_json(rs);
        RuleSet back = ruleset_from_json(j);
        CHECK(to_json(back).dump() == j.dump());
        Patch p = iterate(rs, rs.prototiles.back().id, 2);
        Json jp = to_json(rs, p);
        Patch q = patch_from_json(jp, back);
        CHECK(to_json(back, q).dump() == jp.dump());
    }
}

TEST_CASE("malformed rule sets are rejected") {
    RuleSet rs = penrose_robinson();
    rs.rules.front().children.front().id = "nope";
    CHECK_FALSE(validate(rs).empty());
    CHECK_THROWS(ruleset_from_json(Json::parse(R"({"name":"x"})")));
}

TEST_CASE("girih validation") {
    const int n = 5;
    auto z = [](long k) { return CycloInt::root(5, k); };
    CycloInt o(n);
    Prototile rhomb{"R", {o, z(0), z(0) + z(2), z(2)}, {}, {}};
    CHECK(girih_validate(n, rhomb).ok);
    Prototile thin{"T", {o, z(0), z(0) + z(1), z(1)}, {}, {}};
    CHECK_FALSE(girih_validate(n, thin).ok);  // angle pi/5
}
