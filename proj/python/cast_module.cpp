#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cast/builtins.hpp"
#include "cast/edge.hpp"
#include "cast/gaps.hpp"
#include "cast/json_io.hpp"
#include "cast/matrix.hpp"
#include "cast/render.hpp"

namespace py = pybind11;
using namespace cast;

namespace {

py::int_ to_py(const Int& v) { return py::int_(py::str(v.get_str())); }

Int from_py(const py::handle& h) { return Int(py::str(h).cast<std::string>()); }

py::list matrix_rows(const SubstMatrix& m) {
    py::list rows;
    for (const auto& r : m.entries()) {
        py::list row;
        for (const auto& v : r) row.append(to_py(v));
        rows.append(row);
    }
    return rows;
}

py::tuple diag_pair(const DiagElem& x) { return py::make_tuple(to_symbolic(x), x.value()); }

std::string full_tag(std::string tag, int n) {
    if (tag.size() == 1) tag += n % 2 ? "b" : "a";
    return tag;
}

py::dict min_report(int n) {
    MinReport r = verify_min(n);
    py::list cands;
    for (const auto& c : r.candidates) {
        py::dict d;
        d["lambda"] = to_symbolic(c.lambda);
        d["value"] = c.value;
        d["minimum"] = c.is_minimum;
        d["reasons"] = c.reasons;
        cands.append(d);
    }
    py::dict out;
    out["n"] = n;
    out["lambda_min"] = to_symbolic(r.lambda_min);
    out["ok"] = r.ok;
    out["candidates"] = cands;
    return out;
}

py::list verify_builtin(const std::string& name) {
    RuleSet rs = builtin(name);
    py::list out;
    for (const auto& rep : verify_all(rs)) {
        py::dict d;
        d["parent"] = rep.parent;
        d["area"] = rep.area_ok;
        d["boundary"] = rep.boundary_ok;
        d["containment"] = rep.containment_ok;
        d["problems"] = rep.problems;
        out.append(d);
    }
    return out;
}

py::list tile_counts(const std::string& name, const std::string& seed, int depth) {
    RuleSet rs = builtin(name);
    py::list out;
    for (const auto& v : count_tiles(rs, iterate(rs, seed.empty() ? rs.prototiles.front().id : seed, depth)))
        out.append(to_py(v));
    return out;
}

std::string render(const std::string& name, const std::string& seed, int depth, int decimals) {
    RuleSet rs = builtin(name);
    RenderSpec spec;
    spec.decimals = decimals;
    return render_svg(rs, iterate(rs, seed.empty() ? rs.prototiles.front().id : seed, depth), spec);
}

py::dict edge_table(const std::string& tag, int n) {
    TableRow row = minimal_sequence(full_tag(tag, n), n);
    py::dict d;
    d["case"] = row.seq.case_tag;
    d["sequence"] = row.has_sequence ? py::object(py::str(format_sequence(row.seq))) : py::object(py::none());
    d["inner"] = to_symbolic(row.inner);
    d["sqrt_factor"] = row.sqrt_factor;
    d["value"] = table_value(row);
    d["extrapolated"] = row.extrapolated;
    return d;
}

py::dict edge_multiplier(int n, const std::string& tag, const std::string& seq_text) {
    EdgeSequence seq = parse_sequence(n, full_tag(tag, n), seq_text);
    auto errs = validate(seq);
    if (!errs.empty()) throw py::value_error(errs.front());
    py::dict d;
    if (seq.even_config()) {
        DiagElem eta = multiplier_even_config(seq);
        d["symbolic"] = to_symbolic(eta);
        d["value"] = eta.value();
    } else {
        OddMultiplier om = multiplier_odd_config(seq);
        d["symbolic"] = om.symbolic;
        d["value"] = om.value;
    }
    py::list checks;
    for (const auto& c : alpha_constraints(seq).checks) checks.append(py::make_tuple(c.name, c.ok));
    d["constraints"] = checks;
    return d;
}

bool ksk_rhomb(int n, const std::string& tag, const std::string& seq_text, int m) {
    return ksk_rhomb_feasible(parse_sequence(n, full_tag(tag, n), seq_text), m).ok;
}

bool ksk_boundary(int n, const std::vector<int>& steps) {
    return ksk_find_pairing(KskBoundary{n, steps, {}}).has_value();
}

py::dict gaps(int n, const std::string& seq_text, const std::string& sym, int seed_class, int max_rounds,
              int max_prototiles, size_t budget) {
    auto s = parse_symmetry(sym);
    if (!s) throw py::value_error("symmetry must be d1 or d2");
    GapsInput in;
    in.n = n;
    EdgeSequence probe = parse_sequence(n, "1a", seq_text);
    bool even = true;
    for (int e : probe.entries) even = even && e % 2 == 0;
    in.edge = parse_sequence(n, full_tag(even ? "1" : "2", n), seq_text);
    in.symmetry = *s;
    in.seed_class = seed_class;
    GapsLimits lim;
    lim.max_rounds = max_rounds;
    lim.max_prototiles = max_prototiles;
    lim.budget = budget;
    GapsOutcome o = gaps_search(in, lim);
    py::dict d;
    d["outcome"] = to_string(o.kind);
    d["reason"] = o.reason;
    d["prototiles"] = o.state.rules.prototiles.size();
    d["rounds"] = o.state.round;
    d["state_json"] = to_json(o.state).dump();
    if (o.kind == GapsOutcome::Kind::Closed) d["lambda"] = diag_pair(inflation_factor(o.state.rules));
    return d;
}

}  // namespace

PYBIND11_MODULE(_cast, m) {
    m.doc() = "Exact cyclotomic substitution tilings (C++ core)";

    m.def("mu", [](int n, int k) { return mu(n, k).value(); }, py::arg("n"), py::arg("k"));
    m.def("min_lambda", [](int n) { return diag_pair(min_lambda(n)); }, py::arg("n"),
          "smallest admissible area eigenvalue as (symbolic, value)");
    m.def("verify_min", &min_report, py::arg("n"));
    m.def(
        "compose_matrix",
        [](int n, const py::sequence& coeffs) {
            std::vector<Int> c;
            for (const auto& h : coeffs) c.push_back(from_py(h));
            return matrix_rows(compose(n, c));
        },
        py::arg("n"), py::arg("coeffs"));
    m.def("basis_matrix", [](int n, int k) { return matrix_rows(basis_matrix(n, k)); }, py::arg("n"), py::arg("k"));

    m.def("builtin_names", &builtin_names);
    m.def("builtin_matrix", [](const std::string& name) { return matrix_rows(extract_matrix(builtin(name))); },
          py::arg("name"));
    m.def("verify_builtin", &verify_builtin, py::arg("name"));
    m.def("tile_counts", &tile_counts, py::arg("name"), py::arg("seed") = "", py::arg("depth") = 1);
    m.def("render_builtin", &render, py::arg("name"), py::arg("seed") = "", py::arg("depth") = 3,
          py::arg("decimals") = 6);
    m.def("builtin_json", [](const std::string& name) { return to_json(builtin(name)).dump(); }, py::arg("name"));

    m.def("edge_table", &edge_table, py::arg("case"), py::arg("n"));
    m.def("edge_multiplier", &edge_multiplier, py::arg("n"), py::arg("case"), py::arg("sequence"));
    m.def("ksk_rhomb", &ksk_rhomb, py::arg("n"), py::arg("case"), py::arg("sequence"), py::arg("m"));
    m.def("ksk_boundary", &ksk_boundary, py::arg("n"), py::arg("steps"));
    m.def("gaps", &gaps, py::arg("n"), py::arg("edge"), py::arg("symmetry") = "d2", py::arg("seed_class") = 1,
          py::arg("max_rounds") = 12, py::arg("max_prototiles") = 64, py::arg("budget") = 10000);
}
