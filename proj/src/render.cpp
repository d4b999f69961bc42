#include "cast/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace cast {

std::string default_colour(const std::string& id) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : id) {
        h ^= c;
        h *= 16777619u;
    }
    // HSL with fixed saturation and lightness; integer arithmetic keeps it portable.
    const int hue = static_cast<int>(h % 360u);
    const double s = 0.55, l = 0.62;
    const double c = (1 - std::abs(2 * l - 1)) * s;
    const double hp = hue / 60.0;
    const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
    }
    const double m = l - c / 2;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)), static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

namespace {

std::string negate(const std::string& s) {
    if (s.empty()) return s;
    if (s[0] == '-') return s.substr(1);
    if (s.find_first_not_of("0.") == std::string::npos) return s;  // zero keeps no sign
    return "-" + s;
}

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

}  // namespace

std::string render_svg(const RuleSet& rs, const Patch& patch, const RenderSpec& spec) {
    struct Pt {
        std::string x, y;
    };
    std::unordered_map<std::string, Pt> cache;
    auto point = [&](const CycloInt& z) -> const Pt& {
        const std::string key = point_key(z);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto [re, im] = embed_fixed(z, spec.decimals);
        return cache.emplace(key, Pt{re, negate(im)}).first->second;  // SVG y grows downwards
    };

    std::ostringstream body;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    std::vector<std::pair<std::string, std::string>> dots;
    for (const auto& tile : patch.tiles) {
        const Prototile& proto = rs.prototiles.at(static_cast<size_t>(tile.proto));
        const Polygon poly = placed_polygon(proto, tile.p);
        auto colour = spec.palette.find(proto.id);
        body << "<path class=\"" << proto.id << "\" fill=\""
             << (colour != spec.palette.end() ? colour->second : default_colour(proto.id)) << "\" d=\"";
        for (size_t i = 0; i < poly.size(); ++i) {
            const Pt& p = point(poly[i]);
            body << (i ? " L" : "M") << p.x << ' ' << p.y;
            const double x = std::stod(p.x), y = std::stod(p.y);
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x), xmax = std::max(xmax, x);
            ymin = std::min(ymin, y), ymax = std::max(ymax, y);
        }
        body << " Z\"/>\n";
        if (spec.marks && !proto.marks.empty())
            for (size_t i = 0; i < proto.vertices.size(); ++i)
                if (proto.marks[i]) {
                    const Pt& p = point(apply(tile.p, proto.vertices[i]));
                    dots.push_back({p.x, p.y});
                }
    }
    const double pad = spec.margin * std::max({xmax - xmin, ymax - ymin, 1e-9});
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(xmin - pad, spec.decimals) << ' '
        << fmt(ymin - pad, spec.decimals) << ' ' << fmt(xmax - xmin + 2 * pad, spec.decimals) << ' '
        << fmt(ymax - ymin + 2 * pad, spec.decimals) << "\">\n"
        << "<g stroke=\"#202020\" stroke-width=\"" << fmt(spec.stroke_width, spec.decimals)
        << "\" stroke-linejoin=\"round\">\n"
        << body.str() << "</g>\n";
    if (!dots.empty()) {
        out << "<g fill=\"#000000\">\n";
        for (const auto& [x, y] : dots)
            out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << fmt(3 * spec.stroke_width, spec.decimals) << "\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cast
