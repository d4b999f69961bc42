#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cast/builtins.hpp"
#include "cast/edge.hpp"
#include "cast/gaps.hpp"
#include "cast/json_io.hpp"
#include "cast/matrix.hpp"
#include "cast/render.hpp"
#include "cast/tiling.hpp"

using namespace cast;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string approx(const DiagElem& x) { return to_symbolic(x) + " ≈ " + num(x.value()); }

std::vector<Int> parse_coeffs(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Int v;
        if (tok.empty() || v.set_str(tok, 10) != 0) throw UsageError("bad coefficient '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

struct RulesSource {
    std::string file, name;
    void attach(CLI::App* app) {
        app->add_option("--rules", file, "rule set JSON file");
        app->add_option("--builtin", name, "built-in rule set name");
    }
    // A patch file names its rule set; built-in names need no flag.
    RuleSet load(const std::string& patch_file = "") const {
        if (file.empty() && name.empty() && !patch_file.empty()) {
            const Json j = read_json(patch_file);
            const std::string named = j.value("ruleset", "");
            const auto names = builtin_names();
            for (const auto& b : names)
                if (b == named) return builtin(named);
            throw UsageError("patch uses rule set '" + named + "'; pass it with --rules");
        }
        if (file.empty() == name.empty()) throw UsageError("give exactly one of --rules and --builtin");
        if (!name.empty()) return builtin(name);
        return ruleset_from_json(read_json(file));
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_text(path, text);
}

int cmd_matrix(int n, const std::string& coeffs, const RulesSource& src, bool merged) {
    SubstMatrix m;
    if (!coeffs.empty()) {
        if (n < 2) throw UsageError("--coeffs needs --n");
        auto c = parse_coeffs(coeffs);
        try {
            m = compose(n, c);
        } catch (const std::domain_error& ex) {
            throw UsageError(ex.what());
        }
        DiagElem lambda(n);
        for (size_t k = 0; k < c.size(); ++k) lambda += c[k] * mu(n, static_cast<int>(k) + 1);
        std::cout << compact_matrix(m) << "\n";
        std::cout << "lambda = " << approx(lambda) << "\n";
        auto eig = eigen_check(m, lambda);
        std::cout << "eigen-relation: " << (eig.ok ? "ok" : "FAILED " + eig.detail) << "\n";
        auto pr = is_primitive(m);
        std::cout << "primitive: " << (pr.primitive ? "yes (power " + std::to_string(pr.power) + ")" : "no") << "\n";
        return eig.ok ? kOk : kFailed;
    }
    RuleSet rs = src.load();
    m = merged ? merge_equal_area(rs).m : extract_matrix(rs);
    std::cout << compact_matrix(m) << "\n";
    std::cout << "lambda = " << approx(inflation_factor(rs)) << "\n";
    return kOk;
}

int cmd_min_lambda(int n, bool verify) {
    if (n < 2) throw UsageError("--n must be at least 2");
    const DiagElem l = min_lambda(n);
    std::cout << approx(l) << "\n";
    if (!verify) return kOk;
    MinReport rep = verify_min(n);
    std::cout << rep.summary << "\n";
    for (const auto& c : rep.candidates) {
        std::cout << "  " << to_symbolic(c.lambda) << " ≈ " << num(c.value) << (c.is_minimum ? "  minimum" : "");
        for (const auto& r : c.reasons) std::cout << "  [" << r << "]";
        std::cout << "\n";
    }
    return rep.ok ? kOk : kFailed;
}

int cmd_verify(const RulesSource& src) {
    RuleSet rs = src.load();
    int status = kOk;
    for (const auto& e : validate(rs)) {
        std::cout << "INVALID: " << e << "\n";
        status = kFailed;
    }
    if (status != kOk) return status;
    for (const auto& r : verify_all(rs)) {
        std::cout << r.parent << ": area " << (r.area_ok ? "ok" : "FAIL") << ", boundary " << (r.boundary_ok ? "ok" : "FAIL")
                  << ", containment " << (r.containment_ok ? "ok" : "FAIL") << "\n";
        for (const auto& p : r.problems) std::cout << "  " << p << "\n";
        if (!r.ok()) status = kFailed;
    }
    if (status == kOk) {
        try {
            auto ap = aperiodicity_check(rs);
            std::cout << "aperiodicity: " << to_string(ap.verdict) << " (" << ap.detail << ")\n";
        } catch (const std::exception& ex) {
            std::cout << "aperiodicity: not evaluated (" << ex.what() << ")\n";
        }
    }
    std::cout << (status == kOk ? "PASS" : "FAIL") << "\n";
    return status;
}

Patch make_patch(const RuleSet& rs, const std::string& patch_file, const std::string& seed, int depth) {
    Patch p;
    if (!patch_file.empty()) p = patch_from_json(read_json(patch_file), rs);
    else p = seed_patch(rs, seed.empty() ? rs.prototiles.front().id : seed);
    for (int i = 0; i < depth; ++i) p = substitute(rs, p);
    return p;
}

int cmd_substitute(const RulesSource& src, const std::string& in, const std::string& seed, int depth, const std::string& out) {
    if (depth < 0) throw UsageError("--depth must be non-negative");
    RuleSet rs = src.load(in);
    Patch p = make_patch(rs, in, seed, depth);
    const auto counts = count_tiles(rs, p);
    std::cerr << "generation " << p.generation << ", " << p.tiles.size() << " tiles:";
    for (size_t i = 0; i < counts.size(); ++i) std::cerr << " " << rs.prototiles[i].id << "=" << counts[i].get_str();
    std::cerr << "\n";
    emit(out, to_json(rs, p).dump(1) + "\n");
    return kOk;
}

int cmd_render(const RulesSource& src, const std::string& in, const std::string& seed, int depth, const std::string& out,
               int decimals, double stroke) {
    if (decimals < 0 || decimals > 15) throw UsageError("--decimals must lie in [0, 15]");
    RuleSet rs = src.load(in);
    Patch p = make_patch(rs, in, seed, depth);
    RenderSpec spec;
    spec.decimals = decimals;
    spec.stroke_width = stroke;
    emit(out, render_svg(rs, p, spec));
    return kOk;
}

std::string resolve_case(std::string tag, int n) {
    if (tag.size() == 1) tag += n % 2 ? "b" : "a";
    return tag;
}

int cmd_edge(const std::string& tag_in, int n, const std::string& seq_text, bool naive) {
    if (n < 3) throw UsageError("--n must be at least 3");
    const std::string tag = resolve_case(tag_in, n);
    EdgeSequence seq;
    if (seq_text.empty()) {
        TableRow row;
        try {
            row = minimal_sequence(tag, n);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
        std::cout << "case " << tag << ", n = " << n << (row.extrapolated ? " (extrapolated beyond the tabulated rows)" : "") << "\n";
        if (row.has_sequence) std::cout << "sequence: " << format_sequence(row.seq) << "\n";
        std::cout << "eta_min = " << (row.sqrt_factor ? "sqrt(mu(" + std::to_string(n) + ",2)+2)*(" + to_symbolic(row.inner) + ")"
                                                       : to_symbolic(row.inner))
                  << " ≈ " << num(row.value) << "\n";
        if (!row.has_sequence) return kOk;
        seq = row.seq;
    } else {
        seq = parse_sequence(n, tag, seq_text);
        std::cout << "case " << tag << ", n = " << n << "\nsequence: " << format_sequence(seq) << "\n";
    }
    auto errs = validate(seq);
    for (const auto& e : errs) std::cout << "INVALID: " << e << "\n";
    if (!errs.empty()) return kFailed;
    if (seq.even_config()) {
        const DiagElem eta = multiplier_even_config(seq);
        std::cout << "eta = " << approx(eta) << "\n";
    } else {
        auto o = multiplier_odd_config(seq, naive ? OddWeighting::Diagonal : OddWeighting::Paired);
        std::cout << "eta = " << o.symbolic << " ≈ " << num(o.value) << (naive ? " (own diagonals)" : "") << "\n";
    }
    auto rep = alpha_constraints(seq);
    for (const auto& c : rep.checks)
        std::cout << "  " << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    std::cout << "tips:";
    for (char t : tip_configurations(tag, n)) std::cout << " (" << t << ")";
    std::cout << "\n";
    return rep.ok ? kOk : kFailed;
}

int cmd_ksk(const std::string& file, int rhomb, const std::string& tag_in, int n, const std::string& seq_text) {
    if (!file.empty()) {
        Json j = read_json(file);
        KskBoundary b;
        b.n = j.at("n").get<int>();
        b.steps = j.at("steps").get<std::vector<int>>();
        if (j.contains("pairs")) {
            for (const auto& p : j.at("pairs")) b.pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
            auto r = ksk_check(b);
            std::cout << (r.ok ? "KSK satisfied" : "KSK violated: " + r.violation) << "\n";
            return r.ok ? kOk : kFailed;
        }
        auto found = ksk_find_pairing(b);
        if (!found) {
            std::cout << "KSK violated: no pairing of the nodes passes\n";
            return kFailed;
        }
        std::cout << "KSK satisfied; pairing:";
        for (auto [a, c] : *found) std::cout << " (" << a << "," << c << ")";
        std::cout << "\n";
        return kOk;
    }
    if (rhomb < 1 || n < 3 || seq_text.empty()) throw UsageError("give --file, or --rhomb with --n, --case and --seq");
    EdgeSequence seq = parse_sequence(n, resolve_case(tag_in, n), seq_text);
    auto f = ksk_rhomb_feasible(seq, rhomb);
    std::cout << "inflated R_" << rhomb << " with edge " << format_sequence(seq) << ": "
              << (f.ok ? "KSK satisfied" : "KSK violated for every edge orientation") << "\n";
    if (f.ok) {
        std::cout << "edge orientations:";
        for (bool r : f.reversed) std::cout << (r ? " reversed" : " forward");
        std::cout << "\n";
    }
    return f.ok ? kOk : kFailed;
}

int cmd_gaps(int n, const std::string& edge_text, const std::string& sym_text, int seed_class, const GapsLimits& lim,
             const std::string& out, const std::string& state_out, const std::string& resume) {
    GapsOutcome o;
    if (!resume.empty()) {
        o = gaps_resume(gaps_state_from_json(read_json(resume)), lim);
    } else {
        if (n < 3 || edge_text.empty()) throw UsageError("gaps needs --n and --edge (or --resume)");
        auto sym = parse_symmetry(sym_text);
        if (!sym) throw UsageError("--sym must be d1 or d2");
        GapsInput in;
        in.n = n;
        in.edge = parse_sequence(n, "", edge_text);
        const bool even = !in.edge.entries.empty() && in.edge.entries.front() % 2 == 0;
        const bool pal = std::equal(in.edge.entries.begin(), in.edge.entries.end(), in.edge.entries.rbegin());
        in.edge.case_tag = std::string(even ? (pal ? "3" : "1") : (pal ? "4" : "2")) + (n % 2 ? "b" : "a");
        in.symmetry = *sym;
        in.seed_class = seed_class;
        o = gaps_search(in, lim);
    }
    std::cout << "outcome: " << to_string(o.kind) << " (" << o.reason << ")\n";
    std::cout << "note: " << o.state.note << "\n";
    std::cout << "prototiles: " << o.state.rules.prototiles.size() << ", rules: " << o.state.rules.rules.size()
              << ", rounds: " << o.state.round << "\n";
    if (!state_out.empty()) write_text(state_out, to_json(o.state).dump(1) + "\n");
    if (o.kind == GapsOutcome::Kind::Closed) {
        std::cout << "lambda = " << approx(inflation_factor(o.state.rules)) << "\n";
        if (!out.empty()) write_text(out, to_json(o.state.rules).dump(1) + "\n");
        return kOk;
    }
    return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclotomic aperiodic substitution tilings"};
    app.require_subcommand(1);

    int n = 0, depth = 0, decimals = 6, rhomb = 0, seed_class = 1;
    double stroke = 0.02;
    bool merged = false, verify = false, naive = false;
    std::string coeffs, in, out, seed, tag = "1", seq, file, sym = "d2", state_out, resume;
    RulesSource src;
    GapsLimits lim;

    auto* m = app.add_subcommand("matrix", "substitution matrix from diagonal coefficients or a rule set");
    m->add_option("--n", n, "order n");
    m->add_option("--coeffs", coeffs, "c_1,...,c_k of lambda = sum c_k mu(n,k)");
    m->add_flag("--merged", merged, "merge prototiles of equal area");
    src.attach(m);

    auto* ml = app.add_subcommand("min-lambda", "minimal area multiplier");
    ml->add_option("--n", n, "order n")->required();
    ml->add_flag("--verify", verify, "reject every smaller candidate explicitly");

    auto* v = app.add_subcommand("verify", "check every substitution rule");
    src.attach(v);

    auto* su = app.add_subcommand("substitute", "iterate a rule set and write the patch as JSON");
    src.attach(su);
    su->add_option("--patch", in, "start from this patch file instead of a seed");
    su->add_option("--seed", seed, "seed prototile id (default: the first)");
    su->add_option("--depth", depth, "substitution steps");
    su->add_option("--out", out, "output file (default stdout)");

    auto* re = app.add_subcommand("render", "draw a patch as SVG");
    src.attach(re);
    re->add_option("--patch", in, "patch file");
    re->add_option("--seed", seed, "seed prototile id when no patch is given");
    re->add_option("--depth", depth, "substitution steps applied before drawing");
    re->add_option("--out", out, "output file (default stdout)");
    re->add_option("--decimals", decimals, "coordinate decimals");
    re->add_option("--stroke", stroke, "stroke width");

    auto* ed = app.add_subcommand("edge", "minimal edge sequence and inflation multiplier");
    ed->add_option("--case", tag, "1a..4b, or 1..4 with the letter taken from n");
    ed->add_option("--n", n, "order n")->required();
    ed->add_option("--seq", seq, "explicit sequence such as 0,2,4,0,2");
    ed->add_flag("--own-diagonals", naive, "odd configurations: weigh each rhomb by its own diagonal");

    auto* ks = app.add_subcommand("ksk", "parallelogram tileability criterion");
    ks->add_option("--file", file, "boundary JSON {n, steps, pairs?}");
    ks->add_option("--rhomb", rhomb, "check the inflated rhomb R_m");
    ks->add_option("--n", n, "order n");
    ks->add_option("--case", tag, "case tag");
    ks->add_option("--seq", seq, "edge sequence");

    auto* ga = app.add_subcommand("gaps", "construct substitution rules from an edge");
    ga->add_option("--n", n, "order n");
    ga->add_option("--edge", seq, "edge sequence such as 0,2,4,0,2");
    ga->add_option("--sym", sym, "d1 or d2");
    ga->add_option("--seed-class", seed_class, "class k of the seed rhomb R_k");
    ga->add_option("--max-rounds", lim.max_rounds, "round limit");
    ga->add_option("--max-prototiles", lim.max_prototiles, "prototile limit");
    ga->add_option("--budget", lim.budget, "placements tried per rule");
    ga->add_option("--out", out, "rule set file for a closed outcome");
    ga->add_option("--state", state_out, "write the final search state here");
    ga->add_option("--resume", resume, "continue from a saved state");

    auto* bl = app.add_subcommand("builtin-list", "names of the built-in rule sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kUsage;
    }

    try {
        if (*m) return cmd_matrix(n, coeffs, src, merged);
        if (*ml) return cmd_min_lambda(n, verify);
        if (*v) return cmd_verify(src);
        if (*su) return cmd_substitute(src, in, seed, depth, out);
        if (*re) return cmd_render(src, in, seed, depth, out, decimals, stroke);
        if (*ed) return cmd_edge(tag, n, seq, naive);
        if (*ks) return cmd_ksk(file, rhomb, tag, n, seq);
        if (*ga) return cmd_gaps(n, seq, sym, seed_class, lim, out, state_out, resume);
        if (*bl) {
            for (const auto& name : builtin_names()) std::cout << name << "\n";
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
