#include <string>

#include "cast/builtins.hpp"
#include "cast/render.hpp"
#include "doctest.h"

using namespace cast;

namespace {
size_t count_of(const std::string& text, const std::string& needle) {
    size_t c = 0;
    for (size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++c;
    return c;
}
}  // namespace

TEST_CASE("empty patch gives a valid document") {
    RuleSet rs = penrose_robinson();
    Patch empty;
    empty.n = 5;
    std::string svg = render_svg(rs, empty);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_of(svg, "<path") == 0);
}

TEST_CASE("one path per tile, matching the matrix power") {
    RuleSet rs = penrose_robinson();
    SubstMatrix m4 = matrix_pow(extract_matrix(rs), 4);
    for (int s = 0; s < 2; ++s) {
        Patch p = iterate(rs, rs.prototiles[static_cast<size_t>(s)].id, 4);
        Int expected = 0;
        for (int j = 0; j < m4.dim(); ++j) expected += m4.at(s, j);
        CHECK(Int(static_cast<long>(count_of(render_svg(rs, p), "<path"))) == expected);
    }
}

TEST_CASE("rendering is deterministic") {
    RuleSet rs = ammann_beenker();
    Patch p = iterate(rs, rs.prototiles.front().id, 2);
    CHECK(render_svg(rs, p) == render_svg(rs, p));
    RenderSpec coarse;
    coarse.decimals = 2;
    std::string a = render_svg(rs, p, coarse);
    CHECK(a == render_svg(rs, p, coarse));
    CHECK(a != render_svg(rs, p));
}

TEST_CASE("palette overrides and stable default colours") {
    CHECK(default_colour("L") == default_colour("L"));
    CHECK(default_colour("L") != default_colour("S"));
    RuleSet rs = penrose_robinson();
    RenderSpec spec;
    spec.palette["L"] = "#123456";
    std::string svg = render_svg(rs, seed_patch(rs, "L"), spec);
    CHECK(svg.find("#123456") != std::string::npos);
}
