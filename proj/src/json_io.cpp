#include "cast/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cast {

Json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
    return Json(v.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("malformed integer '" + j.get<std::string>() + "'");
        return v;
    }
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json to_json(const CycloInt& x) {
    Json c = Json::array();
    for (const auto& v : x.coeffs()) c.push_back(int_to_json(v));
    return Json{{"n", x.n()}, {"coeffs", c}};
}

CycloInt cyclo_from_json(const Json& j, int n_hint) {
    if (j.is_array()) {  // bare coefficient list
        if (n_hint < 2) throw std::invalid_argument("coefficient list without n");
        std::vector<Int> c;
        for (const auto& v : j) c.push_back(int_from_json(v));
        return CycloInt(n_hint, c);
    }
    if (!j.is_object() || !j.contains("coeffs")) throw std::invalid_argument("expected {\"n\", \"coeffs\"}");
    const int n = j.contains("n") ? j.at("n").get<int>() : n_hint;
    if (n_hint && n != n_hint) throw std::invalid_argument("order mismatch: " + std::to_string(n) + " vs " + std::to_string(n_hint));
    std::vector<Int> c;
    for (const auto& v : j.at("coeffs")) c.push_back(int_from_json(v));
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("coeffs must have length n");
    return CycloInt(n, c);
}

Json to_json(const DiagElem& x) {
    Json c = Json::array();
    for (const auto& v : x.c()) c.push_back(int_to_json(v));
    return Json{{"n", x.n()}, {"c", c}, {"symbolic", to_symbolic(x)}};
}

DiagElem diag_from_json(const Json& j, int n_hint) {
    if (j.is_string()) {
        auto d = parse_symbolic(j.get<std::string>(), n_hint);
        if (!d) throw std::invalid_argument("cannot parse '" + j.get<std::string>() + "'");
        return *d;
    }
    const int n = j.contains("n") ? j.at("n").get<int>() : n_hint;
    std::vector<Int> c;
    for (const auto& v : j.at("c")) c.push_back(int_from_json(v));
    return DiagElem(n, c);
}

Json to_json(const SubstMatrix& m) {
    Json rows = Json::array();
    for (const auto& r : m.entries()) {
        Json row = Json::array();
        for (const auto& v : r) row.push_back(int_to_json(v));
        rows.push_back(row);
    }
    return rows;
}

SubstMatrix matrix_from_json(const Json& j, int n) {
    std::vector<std::vector<Int>> e;
    for (const auto& r : j) {
        std::vector<Int> row;
        for (const auto& v : r) row.push_back(int_from_json(v));
        e.push_back(row);
    }
    return SubstMatrix(n, e);
}

namespace {

Json placement_json(const std::string& id, const Placement& p) {
    return Json{{"id", id}, {"rot", p.rot}, {"reflect", p.reflect}, {"t", to_json(p.t)}};
}

Placement placement_from(const Json& j, int n) {
    Placement p;
    p.rot = j.value("rot", 0);
    p.reflect = j.value("reflect", false);
    p.t = j.contains("t") ? cyclo_from_json(j.at("t"), n) : CycloInt(n);
    return p;
}

}  // namespace

Json to_json(const RuleSet& rs) {
    Json j;
    j["name"] = rs.name;
    j["n"] = rs.n;
    j["multiplier"] = to_json(rs.multiplier);
    if (!rs.edge_path.empty()) {
        Json ep = Json::array();
        for (const auto& w : rs.edge_path) ep.push_back(to_json(w));
        j["edge_path"] = ep;
    }
    Json protos = Json::array();
    for (const auto& t : rs.prototiles) {
        Json pj;
        pj["id"] = t.id;
        Json vs = Json::array();
        for (const auto& v : t.vertices) vs.push_back(to_json(v));
        pj["vertices"] = vs;
        if (!t.marks.empty()) pj["marks"] = t.marks;
        if (!t.edge_flip.empty()) pj["edge_flip"] = t.edge_flip;
        protos.push_back(pj);
    }
    j["prototiles"] = protos;
    Json rules = Json::array();
    for (const auto& r : rs.rules) {
        Json kids = Json::array();
        for (const auto& c : r.children) kids.push_back(placement_json(c.id, c.p));
        rules.push_back(Json{{"parent", r.parent}, {"children", kids}});
    }
    j["rules"] = rules;
    return j;
}

RuleSet ruleset_from_json(const Json& j) {
    RuleSet rs;
    rs.name = j.value("name", std::string("unnamed"));
    rs.n = j.at("n").get<int>();
    if (rs.n < 2) throw std::invalid_argument("n must be at least 2");
    rs.multiplier = cyclo_from_json(j.at("multiplier"), rs.n);
    if (j.contains("edge_path"))
        for (const auto& w : j.at("edge_path")) rs.edge_path.push_back(cyclo_from_json(w, rs.n));
    for (const auto& pj : j.at("prototiles")) {
        Prototile t;
        t.id = pj.at("id").get<std::string>();
        for (const auto& v : pj.at("vertices")) t.vertices.push_back(cyclo_from_json(v, rs.n));
        if (pj.contains("marks")) t.marks = pj.at("marks").get<std::vector<int>>();
        if (pj.contains("edge_flip")) t.edge_flip = pj.at("edge_flip").get<std::vector<bool>>();
        rs.prototiles.push_back(std::move(t));
    }
    for (const auto& rj : j.at("rules")) {
        SubstRule r;
        r.parent = rj.at("parent").get<std::string>();
        for (const auto& cj : rj.at("children")) r.children.push_back({cj.at("id").get<std::string>(), placement_from(cj, rs.n)});
        rs.rules.push_back(std::move(r));
    }
    return rs;
}

Json to_json(const RuleSet& rs, const Patch& p) {
    Json tiles = Json::array();
    for (const auto& t : p.tiles) tiles.push_back(placement_json(rs.prototiles.at(static_cast<size_t>(t.proto)).id, t.p));
    return Json{{"ruleset", rs.name}, {"n", p.n}, {"generation", p.generation}, {"tiles", tiles}};
}

Patch patch_from_json(const Json& j, const RuleSet& rs) {
    Patch p;
    p.n = j.at("n").get<int>();
    if (p.n != rs.n) throw std::invalid_argument("patch order differs from rule set order");
    p.generation = j.value("generation", 0);
    for (const auto& tj : j.at("tiles")) {
        const std::string id = tj.at("id").get<std::string>();
        const int i = rs.index_of(id);
        if (i < 0) throw std::invalid_argument("patch references unknown prototile '" + id + "'");
        p.tiles.push_back({i, placement_from(tj, rs.n)});
    }
    return p;
}

Json to_json(const RuleReport& r) {
    return Json{{"parent", r.parent},       {"ok", r.ok()},
                {"area", r.area_ok},        {"boundary", r.boundary_ok},
                {"containment", r.containment_ok}, {"deficit", to_symbolic(r.deficit)},
                {"problems", r.problems}};
}

Json to_json(const GapsState& s) {
    return Json{{"n", s.n},
                {"edge", Json{{"case", s.edge.case_tag}, {"entries", s.edge.entries}}},
                {"symmetry", to_string(s.symmetry)},
                {"round", s.round},
                {"frontier", s.frontier},
                {"note", s.note},
                {"rules", to_json(s.rules)}};
}

GapsState gaps_state_from_json(const Json& j) {
    GapsState s;
    s.n = j.at("n").get<int>();
    s.edge.n = s.n;
    s.edge.case_tag = j.at("edge").value("case", std::string());
    s.edge.entries = j.at("edge").at("entries").get<std::vector<int>>();
    auto sym = parse_symmetry(j.value("symmetry", std::string("d2")));
    if (!sym) throw std::invalid_argument("unknown symmetry in gaps state");
    s.symmetry = *sym;
    s.round = j.value("round", 0);
    s.frontier = j.value("frontier", std::vector<std::string>{});
    s.note = j.value("note", std::string());
    s.rules = ruleset_from_json(j.at("rules"));
    return s;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace cast
