// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Optional argument: path to the cast CLI, used by the determinism check.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cast/builtins.hpp"
#include "cast/edge.hpp"
#include "cast/gaps.hpp"
#include "cast/json_io.hpp"
#include "cast/matrix.hpp"
#include "cast/render.hpp"

using namespace cast;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Tally {
public:
    void fail(const std::string& why) {
        ++bad_;
        if (first_.empty()) first_ = why;
    }
    bool expect(bool cond, const std::string& why) {
        ++checks_;
        if (!cond) fail(why);
        return cond;
    }
    Outcome outcome(const std::string& extra = "") const {
        std::ostringstream os;
        os << checks_ << " checks";
        if (bad_) os << ", " << bad_ << " failed; first: " << first_;
        if (!extra.empty()) os << "; " << extra;
        return {bad_ == 0, os.str()};
    }

private:
    size_t checks_ = 0, bad_ = 0;
    std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << s << " s";
    return os.str();
}

DiagElem lit(int n, std::vector<std::pair<int, int>> terms) {  // (coefficient, k)
    DiagElem x(n);
    for (auto [c, k] : terms) x += Int(c) * mu(n, k);
    return x;
}

// 1 ---------------------------------------------------------------------------
Outcome diagonal_values() {
    Tally t;
    double worst = 0;
    for (int n = 3; n <= 50; ++n)
        for (int k = 1; k <= n / 2; ++k) {
            auto z = embed(to_cyclo(mu(n, k)));
            const double want = std::sin(k * M_PI / n) / std::sin(M_PI / n);
            const double err = std::max(std::abs(z.real() - want), std::abs(z.imag()));
            worst = std::max(worst, err);
            t.expect(err < 1e-12, "n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    std::ostringstream os;
    os << "max error " << worst;
    return t.outcome(os.str());
}

// 2 ---------------------------------------------------------------------------
Outcome dpf_equivalence() {
    Tally t;
    for (int n = 3; n <= 30; ++n)
        for (int h = 1; h <= n / 2; ++h)
            for (int k = 1; k <= n / 2; ++k)
                t.expect(equals(to_cyclo(dpf_mul(mu(n, h), mu(n, k))), mul(to_cyclo(mu(n, h)), to_cyclo(mu(n, k)))),
                         "n=" + std::to_string(n) + " h=" + std::to_string(h) + " k=" + std::to_string(k));
    return t.outcome();
}

// 3 ---------------------------------------------------------------------------
Outcome eigen_relations() {
    Tally t;
    for (int n = 4; n <= 30; ++n)
        for (int k = 1; k <= n / 2; ++k) {
            EigenReport r = eigen_check(basis_matrix(n, k), mu(n, k));
            const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
            t.expect(r.right_ok, tag + " right");
            if (n % 2 == 0) t.expect(r.left_ok, tag + " left");
            t.expect(r.ok, tag + " " + r.detail);
        }
    return t.outcome();
}

// 4 ---------------------------------------------------------------------------
// Candidates listed in the minimality argument; each applies when its
// diagonals exist and it lies below lambda_min.
std::vector<DiagElem> listed_candidates(int n) {
    std::vector<DiagElem> out;
    const int m = n / 2;
    auto add = [&](std::vector<std::pair<int, int>> terms) {
        for (auto [c, k] : terms)
            if (k > m) return;
        out.push_back(lit(n, terms));
    };
    if (n % 2) {
        add({{1, 5}});
        if (n == 11) add({{1, 4}});
        add({{1, 3}});
        add({{1, 2}});
        if (n > 5) add({{1, 1}, {1, 2}});
        add({{2, 1}});
        add({{1, 1}});
    } else {
        if (n == 12) add({{1, 6}});
        if (n == 10 || n == 12) add({{1, 5}});
        add({{1, 4}});
        add({{1, 3}});
        add({{1, 2}});
        add({{1, 3}, {1, 1}});
        add({{3, 1}});
        add({{2, 1}});
        add({{1, 1}});
        add({{1, 1}, {1, 2}});
    }
    return out;
}

Outcome minimal_multipliers() {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    size_t listed_checked = 0;
    for (int n = 4; n <= 15; ++n) {
        const std::string tag = "n=" + std::to_string(n);
        const DiagElem want = n % 2 ? lit(n, {{1, 3}, {1, 1}}) : lit(n, {{1, 2}, {2, 1}});
        t.expect(same_value(min_lambda(n), want), tag + " min_lambda " + to_symbolic(min_lambda(n)));
        MinReport r = verify_min(n);
        t.expect(r.ok, tag + " verify_min " + r.summary);
        int minima = 0;
        for (const auto& c : r.candidates) {
            if (c.is_minimum) {
                ++minima;
                t.expect(c.reasons.empty(), tag + " minimum carries a rejection");
                t.expect(same_value(c.lambda, want), tag + " wrong minimum");
            } else {
                t.expect(!c.reasons.empty(), tag + " candidate " + to_symbolic(c.lambda) + " not rejected");
                t.expect(c.value < want.value(), tag + " candidate above lambda_min");
            }
        }
        // composite n may write lambda_min in more than one basis form
        t.expect(minima >= 1, tag + " minimum found");
        for (const auto& cand : listed_candidates(n)) {
            if (!(cand.value() < want.value())) continue;
            bool found = false;
            for (const auto& c : r.candidates)
                if (same_value(c.lambda, cand)) found = !c.is_minimum && !c.reasons.empty();
            ++listed_checked;
            t.expect(found, tag + " listed candidate " + to_symbolic(cand) + " missing or accepted");
        }
    }
    const double secs = seconds_since(t0);
    t.expect(secs < 10, "runtime " + fmt_time(secs));
    return t.outcome(std::to_string(listed_checked) + " listed candidates rejected");
}

// 5 ---------------------------------------------------------------------------
SubstMatrix tabulated_scheme(int n) {
    const int m = n / 2;
    SubstMatrix M(n, m);
    if (n % 2) {
        for (int i = 0; i < m; ++i) M.at(i, i) = i == m - 1 ? 1 : 2;
        if (m > 1) M.at(0, 1) = M.at(1, 0) = 1;
        for (int i = 0; i + 2 < m; ++i) M.at(i, i + 2) = M.at(i + 2, i) = 1;
    } else {
        for (int i = 0; i < m; ++i) M.at(i, i) = 2;
        for (int i = 0; i + 1 < m; ++i) M.at(i, i + 1) = M.at(i + 1, i) = 1;
        M.at(0, 1) = 2;
    }
    return M;
}

Outcome tabulated_matrices() {
    Tally t;
    const std::vector<std::pair<int, std::string>> tabulated = {
        {5, "[[2,1],[1,1]]"},
        {7, "[[2,1,1],[1,2,0],[1,0,1]]"},
        {9, "[[2,1,1,0],[1,2,0,1],[1,0,2,0],[0,1,0,1]]"},
        {4, "[[2,2],[1,2]]"},
        {6, "[[2,2,0],[1,2,1],[0,1,2]]"},
        {8, "[[2,2,0,0],[1,2,1,0],[0,1,2,1],[0,0,1,2]]"},
    };
    auto min_coeffs = [](int n) {
        std::vector<Int> c(static_cast<size_t>(n / 2), 0);
        if (n % 2) {
            c[0] += 1;
            c[static_cast<size_t>(reduce_index(n, 3) - 1)] += 1;  // mu(5,3) folds onto mu(5,2)
        } else {
            c[0] = 2;
            c[1] = 1;
        }
        return c;
    };
    for (const auto& [n, text] : tabulated) {
        SubstMatrix got = compose(n, min_coeffs(n));
        t.expect(compact_matrix(got) == text, "M_" + std::to_string(n) + ",min = " + compact_matrix(got));
    }
    for (int n = 5; n <= 30; ++n)
        t.expect(compose(n, min_coeffs(n)) == tabulated_scheme(n), "scheme n=" + std::to_string(n));

    SubstMatrix m7 = parse_matrix(7, "[[1,1,1,0],[1,2,0,0],[3,1,0,2],[0,0,1,0]]");
    std::vector<std::vector<Int>> T = {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 0, 1}};
    ConjugateReport cr = conjugate_check(m7, T, 7);
    t.expect(cr.ok, "M_7* conjugation: " + cr.detail);
    if (cr.lambda) t.expect(same_value(*cr.lambda, lit(7, {{1, 3}, {1, 1}})), "M_7* eigenvalue");
    // tabulated area vector (mu3, mu2, mu3 + mu1, mu1)
    const std::vector<DiagElem> xs = {mu(7, 3), mu(7, 2), lit(7, {{1, 3}, {1, 1}}), mu(7, 1)};
    if (t.expect(cr.x_star.size() == xs.size(), "M_7* area vector size"))
        for (size_t i = 0; i < xs.size(); ++i) {
            const double ratio = cr.x_star[i].value() / cr.x_star.back().value();
            t.expect(std::abs(ratio - xs[i].value()) < 1e-12, "M_7* area entry " + std::to_string(i));
        }

    for (int n = 5; n <= 15; n += 2) {
        SubstMatrix sum(n, n / 2);
        for (int i = 1; i <= n / 2; ++i) sum = sum + basis_matrix(n, i);
        t.expect(longest_diag_matrix(n) == sum, "longest diagonal n=" + std::to_string(n));
    }
    return t.outcome();
}

// 6 ---------------------------------------------------------------------------
Outcome builtin_rule_sets(std::string& info) {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<int, std::string>> tabulated = {
        {4, "[[1,1,1,2,1],[1,1,0,0,0],[1,1,0,0,0],[0,0,1,2,1],[0,0,0,1,2]]"},
        {6, "[[1,1,1,0,1,2,0],[1,1,0,0,0,0,0],[1,1,0,0,0,0,0],[0,0,0,2,1,0,1],[0,0,0,1,2,1,0],[0,0,1,0,1,2,0],"
            "[0,0,0,1,0,0,2]]"},
        {8, "[[1,1,1,0,1,0,0,2,0],[1,1,0,0,0,0,0,0,0],[1,1,0,0,0,0,0,0,0],[0,0,0,2,0,0,1,0,1],[0,0,0,0,2,1,0,1,0],"
            "[0,0,0,0,1,2,1,0,0],[0,0,0,1,0,1,2,0,0],[0,0,1,0,1,0,0,2,0],[0,0,0,1,0,0,0,0,2]]"},
    };
    for (const auto& [n, text] : tabulated) {
        SubstMatrix got = extract_matrix(lancon_billard(n));
        t.expect(compact_matrix(got) == text, "M_" + std::to_string(n) + "* = " + compact_matrix(got));
    }
    size_t tiles = 0;
    std::ostringstream overl;
    for (const auto& name : builtin_names()) {
        RuleSet rs = builtin(name);
        for (const auto& rep : verify_all(rs)) {
            t.expect(rep.area_ok, name + " " + rep.parent + " area");
            t.expect(rep.boundary_ok, name + " " + rep.parent + " boundary");
            t.expect(rep.containment_ok, name + " " + rep.parent + " containment");
        }
        SubstMatrix M = extract_matrix(rs);
        for (size_t s = 0; s < rs.prototiles.size(); ++s) {
            Patch p = seed_patch(rs, rs.prototiles[s].id);
            for (int k = 1; k <= 4; ++k) {
                p = substitute(rs, p);
                auto counts = count_tiles(rs, p);
                SubstMatrix Mk = matrix_pow(M, static_cast<unsigned>(k));
                bool same = true;
                for (int j = 0; j < M.dim(); ++j) same = same && counts[static_cast<size_t>(j)] == Mk.at(static_cast<int>(s), j);
                t.expect(same, name + " seed " + rs.prototiles[s].id + " depth " + std::to_string(k));
                tiles += p.tiles.size();
            }
        }
        // Overlaps are reported, not judged: every rule verifies on its own,
        // yet the jagged-edge rhomb sets do not stay consistent under iteration.
        int first_gen = 0;
        for (const auto& proto : rs.prototiles)
            for (int k = 1; k <= 3; ++k)
                if (!find_overlaps(rs, iterate(rs, proto.id, k), 1).empty()) {
                    if (!first_gen || k < first_gen) first_gen = k;
                    break;
                }
        if (first_gen) overl << (overl.tellp() ? ", " : "") << name << " from generation " << first_gen;
    }
    const double secs = seconds_since(t0);
    t.expect(secs < 30, "runtime " + fmt_time(secs));
    info = overl.str();
    return t.outcome(std::to_string(tiles) + " tiles generated");
}

// 7 ---------------------------------------------------------------------------
Outcome primitivity_cross_check() {
    Tally t;
    size_t cases = 0, primitive = 0;
    for (int n = 4; n <= 14; ++n) {
        const int m = n / 2;
        std::vector<Int> c(static_cast<size_t>(m), 0);
        std::function<void(int, int)> walk = [&](int pos, int left) {
            if (pos == m) {
                bool any = false;
                for (const auto& v : c) any = any || v > 0;
                if (!any) return;
                DiagElem lambda(n, c);
                const bool by_power = is_primitive(compose(n, c)).primitive;
                const bool by_lambda = lambda_criterion(n, lambda);
                ++cases;
                primitive += by_power;
                t.expect(by_power == by_lambda, "n=" + std::to_string(n) + " " + to_symbolic(lambda));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                c[static_cast<size_t>(pos)] = v;
                walk(pos + 1, left - v);
            }
            c[static_cast<size_t>(pos)] = 0;
        };
        walk(0, 4);
    }
    return t.outcome(std::to_string(cases) + " coefficient vectors, " + std::to_string(primitive) + " primitive");
}

// 8 ---------------------------------------------------------------------------
struct TabulatedRow {
    int case_number;
    int n_even;  // row covers n_even and n_even + 1
    std::string sequence;
    std::vector<std::pair<int, int>> inner;  // eta, or eta / sqrt(mu_2 + 2)
};

std::vector<TabulatedRow> tabulated_rows() {
    return {
        {1, 4, "0-2", {{1, 2}, {1, 1}}},
        {1, 6, "0-2-4-0-2", {{1, 3}, {2, 2}, {1, 1}}},
        {1, 8, "0-2-4-0-2-6-4-0-2", {{1, 4}, {2, 3}, {2, 2}, {1, 1}}},
        {1, 10, "0-2-4-6-8-0-2-4-0-2-6-4-0-2", {{1, 5}, {2, 4}, {2, 3}, {2, 2}, {1, 1}}},
        {2, 4, "1-3-1", {{1, 2}, {2, 1}}},
        {2, 6, "1-3-1-5-3-1", {{1, 3}, {2, 2}, {2, 1}}},
        {2, 8, "1-3-5-1-3-7-1-5-3-1", {{1, 4}, {2, 3}, {2, 2}, {2, 1}}},
        {2, 10, "1-3-5-7-1-3-1-5-9-3-1-7-5-3-1", {{1, 5}, {2, 4}, {2, 3}, {2, 2}, {2, 1}}},
        {3, 4, "0-2-0-2-0", {{2, 2}, {3, 1}}},
        {3, 6, "0-2-4-0-2-0-2-0-4-2-0", {{2, 3}, {4, 2}, {3, 1}}},
        {3, 8, "0-2-4-6-0-2-4-0-2-0-2-0-4-2-0-6-4-2-0", {{2, 4}, {4, 3}, {4, 2}, {3, 1}}},
        {4, 4, "1-3-1-1-3-1", {{2, 2}, {4, 1}}},
        {4, 6, "1-3-5-1-3-1-1-3-1-5-3-1", {{2, 3}, {4, 2}, {4, 1}}},
        {4, 8, "1-3-5-7-1-3-5-1-3-1-1-3-1-5-3-1-7-5-3-1", {{2, 4}, {4, 3}, {4, 2}, {4, 1}}},
    };
}

Outcome edge_tables() {
    Tally t;
    size_t rows = 0;
    for (const auto& row : tabulated_rows())
        for (int n : {row.n_even, row.n_even + 1}) {
            ++rows;
            const std::string tag = std::to_string(row.case_number) + (n % 2 ? "b" : "a");
            const std::string where = "case " + tag + " n=" + std::to_string(n);
            const DiagElem want = lit(n, row.inner);
            const bool odd_config = row.case_number % 2 == 0;
            const double scale = odd_config ? std::sqrt(mu(n, 2).value() + 2) : 1.0;

            TableRow tr = minimal_sequence(tag, n);
            t.expect(tr.has_sequence && !tr.extrapolated, where + " tabulated row missing");
            t.expect(format_sequence(tr.seq) == row.sequence, where + " sequence " + format_sequence(tr.seq));
            t.expect(same_value(tr.inner, want), where + " table formula " + to_symbolic(tr.inner));
            t.expect(std::abs(table_value(tr) - scale * want.value()) < 1e-9, where + " numeric");
            t.expect(alpha_constraints(tr.seq).ok, where + " constraints");

            EdgeSequence seq = parse_sequence(n, tag, row.sequence);
            if (odd_config) {
                OddMultiplier om = multiplier_odd_config(seq);
                t.expect(same_value(om.inner, want), where + " paired weighting " + to_symbolic(om.inner));
                t.expect(std::abs(om.value - scale * want.value()) < 1e-9, where + " odd numeric");
            } else {
                t.expect(same_value(multiplier_even_config(seq), want), where + " even multiplier");
            }
        }
    return t.outcome(std::to_string(rows) + " tabulated rows; odd rows via the paired weighting");
}

// 9 ---------------------------------------------------------------------------
Outcome ksk_pattern() {
    Tally t;
    const int n = 7;
    auto passes = [&](const std::string& s, std::string& bad) {
        EdgeSequence seq = parse_sequence(n, "1b", s);
        for (int m = 1; m < n; ++m)
            if (!ksk_rhomb_feasible(seq, m).ok) {
                bad += (bad.empty() ? "R_" : ",R_") + std::to_string(m);
            }
        return bad.empty();
    };
    std::string bad;
    // R_0 without R_{n-1}: every inflated rhomb admits a parallelogram tiling.
    t.expect(passes("0,2,4,0,2", bad), "0-2-4-0-2 fails at " + bad);
    bad.clear();
    // R_2 without R_{n-3}
    t.expect(!passes("0,2", bad), "0-2 passes");
    std::string summary = "0-2 blocked at " + bad;
    bad.clear();
    t.expect(!passes("0,2,0,2,0", bad), "0-2-0-2-0 passes");
    bad.clear();
    t.expect(!passes("0,2,4,0,2,6", bad), "0-2-4-0-2-6 passes");
    return t.outcome(summary);
}

// 10 --------------------------------------------------------------------------
Outcome removal_oracle() {
    Tally t;
    size_t removals = 0;
    for (const auto& name : builtin_names()) {
        RuleSet rs = builtin(name);
        for (const auto& rule : rs.rules) {
            const Polygon region = inflated_boundary(rs, rs.proto(rule.parent));
            std::vector<PlacedShape> placed;
            for (const auto& ch : rule.children) placed.push_back({rs.index_of(ch.id), ch.p});
            const std::string where = name + " " + rule.parent;
            t.expect(extract_gaps(rs.prototiles, region, placed).empty(), where + " complete rule has gaps");
            for (size_t i = 0; i < placed.size(); ++i) {
                auto rest = placed;
                rest.erase(rest.begin() + static_cast<long>(i));
                auto gaps = extract_gaps(rs.prototiles, region, rest);
                ++removals;
                const Polygon removed = placed_polygon(rs.prototiles[static_cast<size_t>(placed[i].proto)], placed[i].p);
                t.expect(gaps.size() == 1 && congruent(gaps.front(), removed),
                         where + " child " + std::to_string(i) + ": " + std::to_string(gaps.size()) + " gaps");
            }
        }
    }
    return t.outcome(std::to_string(removals) + " removals");
}

// 11 --------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism(const std::string& cli) {
    Tally t;
    // library pipelines
    auto pipeline = [] {
        std::string out;
        RuleSet rs = penrose_robinson();
        Patch p = iterate(rs, "L", 5);
        out += to_json(rs, p).dump();
        out += render_svg(rs, p);
        RuleSet ab = ammann_beenker();
        out += render_svg(ab, iterate(ab, ab.prototiles.front().id, 3));
        GapsInput in;
        in.n = 4;
        in.edge = parse_sequence(4, "2a", "1");
        out += to_json(gaps_search(in, GapsLimits{}).state).dump();
        return out;
    };
    t.expect(pipeline() == pipeline(), "library pipeline differs between runs");
    {
        RuleSet rs = penrose_robinson();
        Patch p = iterate(rs, "S", 4);
        const std::string saved = to_json(rs, p).dump(1);
        RuleSet rs2 = ruleset_from_json(to_json(rs));
        Patch back = patch_from_json(Json::parse(saved), rs2);
        t.expect(render_svg(rs2, back) == render_svg(rs, p), "save/load/render differs from direct render");
    }

    std::string extra = "CLI not given";
    if (!cli.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("cast_accept_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::vector<std::string> runs = {
            "substitute --builtin penrose_robinson --seed L --depth 5 --out {d}/p.json",
            "render --patch {d}/p.json --out {d}/p.svg",
            "render --builtin ammann_beenker --seed R --depth 3 --out {d}/ab.svg",
            "gaps --n 4 --edge 1 --sym d2 --out {d}/g.json",
            "matrix --builtin lancon_billard6",
            "min-lambda --n 12 --verify",
            "edge --case 3 --n 9",
            "ksk --rhomb 3 --n 7 --case 1b --seq 0,2,4,0,2",
        };
        std::vector<std::string> files = {"p.json", "p.svg", "ab.svg", "g.json"};
        std::vector<std::string> first;
        bool ran = true;
        for (int pass = 0; pass < 2 && ran; ++pass) {
            std::vector<std::string> outputs;
            for (size_t i = 0; i < runs.size(); ++i) {
                std::string cmd = runs[i];
                for (size_t pos; (pos = cmd.find("{d}")) != std::string::npos;) cmd.replace(pos, 3, dir.string());
                const fs::path log = dir / ("out" + std::to_string(i) + ".txt");
                const int rc = std::system(("\"" + cli + "\" " + cmd + " > \"" + log.string() + "\" 2>&1").c_str());
                if (!t.expect(rc == 0, "cli failed: " + cmd)) ran = false;
                outputs.push_back(slurp(log));
            }
            for (const auto& f : files) outputs.push_back(slurp(dir / f));
            if (pass == 0)
                first = outputs;
            else
                for (size_t i = 0; i < outputs.size(); ++i)
                    t.expect(outputs[i] == first[i], "cli output " + std::to_string(i) + " differs between runs");
        }
        fs::remove_all(dir);
        extra = std::to_string(runs.size()) + " CLI commands run twice";
    }
    return t.outcome(extra);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    std::string overlap_info;
    struct Item {
        int id;
        std::string title;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items = {
        {1, "diagonal values", diagonal_values},
        {2, "product formula vs ring product", dpf_equivalence},
        {3, "eigen-relations of basis matrices", eigen_relations},
        {4, "minimal multipliers", minimal_multipliers},
        {5, "tabulated matrices and conjugation", tabulated_matrices},
        {6, "built-in rule sets", [&] { return builtin_rule_sets(overlap_info); }},
        {7, "primitivity cross-validation", primitivity_cross_check},
        {8, "edge tables", edge_tables},
        {9, "KSK rhomb pattern, n = 7", ksk_pattern},
        {10, "gap removal oracle", removal_oracle},
        {11, "determinism", [&] { return determinism(cli); }},
    };
    int failed = 0;
    for (const auto& item : items) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = item.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << item.id << ": " << item.title << " (" << o.detail
                  << ", " << fmt_time(seconds_since(t0)) << ")" << std::endl;
    }
    if (!overlap_info.empty())
        std::cout << "info: patches with overlapping tiles (not judged): " << overlap_info << std::endl;
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
