#pragma once

#include <map>
#include <string>

#include "cast/tiling.hpp"

namespace cast {

struct RenderSpec {
    std::map<std::string, std::string> palette;  // prototile id -> CSS colour
    double stroke_width = 0.02;
    int decimals = 6;
    double margin = 0.05;  // fraction of the larger extent added on each side
    bool marks = true;     // dots on marked vertices
};

// Stable colour for a prototile id (FNV-1a hash mapped to a hue).
std::string default_colour(const std::string& id);

// One <path> per tile in patch order; vertex coordinates are rounded half to
// even at spec.decimals. Identical inputs give identical bytes.
std::string render_svg(const RuleSet& rs, const Patch& patch, const RenderSpec& spec = {});

}  // namespace cast
