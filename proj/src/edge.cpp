#include "cast/edge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cast {

namespace {

bool known_tag(const std::string& t) {
    static const char* tags[] = {"1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b"};
    return std::find(std::begin(tags), std::end(tags), t) != std::end(tags);
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// zeta^i + conj(zeta^i) in the diagonal basis: 1 for i = 0 is handled by callers.
DiagElem two_cos(int n, int i) {
    DiagElem r = mu(n, i + 1);
    if (i >= 2) r -= mu(n, i - 1);
    return r;
}

DiagElem settle_nonneg(const DiagElem& x, const std::string& what) {
    if (is_nonneg(x)) return x;
    if (auto r = nonneg_representative(x)) return *r;
    throw std::invalid_argument(what + " has no non-negative diagonal form: " + to_symbolic(x));
}

std::string with_root(const DiagElem& inner) {
    const int n = inner.n();
    return "sqrt(mu(" + std::to_string(n) + ",2)+2)*(" + to_symbolic(inner) + ")";
}

double root_factor(int n) { return std::sqrt(mu(n, 2).value() + 2); }

}  // namespace

int EdgeSequence::case_number() const {
    if (!known_tag(case_tag)) throw std::invalid_argument("unknown case '" + case_tag + "'");
    return case_tag[0] - '0';
}
bool EdgeSequence::even_config() const { return case_number() % 2 == 1; }
bool EdgeSequence::d2() const { return case_number() >= 3; }
int EdgeSequence::alpha(int k) const { return static_cast<int>(std::count(entries.begin(), entries.end(), k)); }

std::vector<std::string> validate(const EdgeSequence& seq) {
    std::vector<std::string> errs;
    if (!known_tag(seq.case_tag)) {
        errs.push_back("unknown case '" + seq.case_tag + "' (expected 1a..4b)");
        return errs;
    }
    if (seq.n < 3) errs.push_back("n must be at least 3");
    const bool want_even_n = seq.case_tag[1] == 'a';
    if ((seq.n % 2 == 0) != want_even_n)
        errs.push_back("case " + seq.case_tag + " requires " + (want_even_n ? "even" : "odd") + " n");
    if (seq.entries.empty()) errs.push_back("empty sequence");
    const int parity = seq.even_config() ? 0 : 1;
    for (int k : seq.entries) {
        if (k < 0 || k > seq.n - 1) errs.push_back("entry " + std::to_string(k) + " outside [0, n-1]");
        else if (k % 2 != parity)
            errs.push_back("entry " + std::to_string(k) + (parity ? " is even; odd configuration" : " is odd; even configuration") +
                           " admits no mixed entries");
    }
    if (seq.d2() && !std::equal(seq.entries.begin(), seq.entries.end(), seq.entries.rbegin()))
        errs.push_back("case " + seq.case_tag + " edges carry D2 symmetry; sequence is not a palindrome");
    return errs;
}

EdgeSequence parse_sequence(int n, const std::string& tag, const std::string& text) {
    EdgeSequence s{n, tag, {}};
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw std::invalid_argument("bad sequence entry '" + tok + "'");
        s.entries.push_back(v);
        tok.clear();
    };
    for (char c : text) {
        if (c == ',' || c == '-' || c == ' ' || c == '\t') flush();
        else tok += c;
    }
    flush();
    return s;
}

std::string format_sequence(const EdgeSequence& seq) {
    std::string out;
    for (size_t i = 0; i < seq.entries.size(); ++i) out += (i ? "-" : "") + std::to_string(seq.entries[i]);
    return out;
}

double diagonal_length(int n, int k) {
    if (k == 0) return 1.0;
    return 2 * std::cos(k * std::numbers::pi / (2.0 * n));
}

DiagElem multiplier_even_config(const EdgeSequence& seq) {
    auto errs = validate(seq);
    if (!errs.empty()) throw std::invalid_argument("invalid sequence: " + errs.front());
    if (!seq.even_config()) throw std::invalid_argument("case " + seq.case_tag + " is an odd configuration");
    const int n = seq.n;
    DiagElem eta(n);
    for (int k : seq.entries) eta += k == 0 ? mu(n, 1) : two_cos(n, k / 2);
    return settle_nonneg(eta, "sequence " + format_sequence(seq));
}

OddMultiplier multiplier_odd_config(const EdgeSequence& seq, const std::vector<DiagElem>& weights) {
    auto errs = validate(seq);
    if (!errs.empty()) throw std::invalid_argument("invalid sequence: " + errs.front());
    if (seq.even_config()) throw std::invalid_argument("case " + seq.case_tag + " is an even configuration");
    const int n = seq.n;
    DiagElem inner(n);
    for (int k : seq.entries) {
        const size_t i = static_cast<size_t>(k / 2);
        if (i >= weights.size()) throw std::invalid_argument("no weight for R_" + std::to_string(k));
        inner += weights[i];
    }
    OddMultiplier r;
    r.inner = settle_nonneg(inner, "sequence " + format_sequence(seq));
    r.value = root_factor(n) * r.inner.value();
    r.symbolic = with_root(r.inner);
    return r;
}

OddMultiplier multiplier_odd_config(const EdgeSequence& seq, OddWeighting w) {
    const int n = seq.n;
    std::vector<DiagElem> weights;
    for (int i = 0; 2 * i + 1 <= n - 1; ++i) {
        if (w == OddWeighting::Paired) {
            weights.push_back(i == 0 ? mu(n, 1) : two_cos(n, i));
        } else {
            // cos((2i+1)x)/cos(x) = sum_j (-1)^(i-j) c_j with c_0 = 1, c_j = 2 cos(2jx)
            DiagElem acc(n);
            for (int j = 0; j <= i; ++j) {
                DiagElem c = j == 0 ? mu(n, 1) : two_cos(n, j);
                if ((i - j) % 2) acc -= c;
                else acc += c;
            }
            weights.push_back(acc);
        }
    }
    return multiplier_odd_config(seq, weights);
}

namespace {

const std::map<std::string, std::vector<std::vector<int>>>& tabulated_rows() {
    // Index m - 2 for n in {2m, 2m+1}.
    static const std::map<std::string, std::vector<std::vector<int>>> rows = {
        {"1", {{0, 2}, {0, 2, 4, 0, 2}, {0, 2, 4, 0, 2, 6, 4, 0, 2}, {0, 2, 4, 6, 8, 0, 2, 4, 0, 2, 6, 4, 0, 2}}},
        {"2", {{1, 3, 1}, {1, 3, 1, 5, 3, 1}, {1, 3, 5, 1, 3, 7, 1, 5, 3, 1}, {1, 3, 5, 7, 1, 3, 1, 5, 9, 3, 1, 7, 5, 3, 1}}},
        {"3", {{0, 2, 0, 2, 0}, {0, 2, 4, 0, 2, 0, 2, 0, 4, 2, 0}, {0, 2, 4, 6, 0, 2, 4, 0, 2, 0, 2, 0, 4, 2, 0, 6, 4, 2, 0}}},
        {"4", {{1, 3, 1, 1, 3, 1}, {1, 3, 5, 1, 3, 1, 1, 3, 1, 5, 3, 1}, {1, 3, 5, 7, 1, 3, 5, 1, 3, 1, 1, 3, 1, 5, 3, 1, 7, 5, 3, 1}}},
    };
    return rows;
}

}  // namespace

TableRow minimal_sequence(const std::string& case_tag, int n) {
    if (!known_tag(case_tag)) throw std::invalid_argument("unknown case '" + case_tag + "'");
    if (n < 4) throw std::invalid_argument("minimal sequences are tabulated from n = 4");
    if ((n % 2 == 0) != (case_tag[1] == 'a'))
        throw std::invalid_argument("case " + case_tag + " requires " + (case_tag[1] == 'a' ? "even" : "odd") + " n");
    const int c = case_tag[0] - '0';
    const int m = n / 2;
    // Column pattern: lead * mu_m + mid * (mu_2 + ... + mu_{m-1}) + tail.
    const int lead = c <= 2 ? 1 : 2, mid = c <= 2 ? 2 : 4;
    const int tail = c;
    TableRow row;
    row.seq = EdgeSequence{n, case_tag, {}};
    row.sqrt_factor = c % 2 == 0;
    DiagElem eta = Int(lead) * mu(n, m) + DiagElem::integer(n, Int(tail));
    for (int k = 2; k < m; ++k) eta += Int(mid) * mu(n, k);
    row.inner = eta;
    const auto& tabulated = tabulated_rows().at(std::string(1, case_tag[0]));
    if (static_cast<size_t>(m - 2) < tabulated.size()) {
        row.seq.entries = tabulated[static_cast<size_t>(m - 2)];
        row.has_sequence = true;
    } else {
        row.extrapolated = true;
    }
    row.value = table_value(row);
    return row;
}

double table_value(const TableRow& row) {
    return row.inner.value() * (row.sqrt_factor ? root_factor(row.inner.n()) : 1.0);
}

ConstraintReport alpha_constraints(const EdgeSequence& seq) {
    ConstraintReport rep;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto errs = validate(seq);
    add("well-formed", errs.empty(), errs.empty() ? "" : errs.front());
    if (!errs.empty()) return rep;
    const int n = seq.n, c = seq.case_number();
    const char side = seq.case_tag[1];
    auto a = [&](int k) { return seq.alpha(k); };
    auto cnt = [&](int k) { return "alpha_" + std::to_string(k) + "=" + std::to_string(a(k)); };

    {
        const int first = seq.even_config() ? 0 : 1;
        const int last = seq.even_config() ? 2 * ((n - 1) / 2) : 2 * (n / 2) - 1;
        bool ok = true;
        std::string detail;
        for (int k = first; k + 2 <= last; k += 2)
            if (a(k) < a(k + 2)) {
                ok = false;
                detail = cnt(k) + " < " + cnt(k + 2);
                break;
            }
        add(seq.even_config() ? "non-increasing even counts" : "non-increasing odd counts", ok, detail);
    }
    if ((c == 1 || c == 3) && side == 'b')
        add("R_{n-3} outnumbers R_{n-1}", a(n - 3) > a(n - 1), cnt(n - 3) + ", " + cnt(n - 1));
    if ((c == 1 || c == 3) && side == 'a') add("R_{n-2} present", a(n - 2) >= 1, cnt(n - 2));
    if ((c == 2 || c == 4) && side == 'b') add("R_{n-2} present", a(n - 2) >= 1, cnt(n - 2));
    if ((c == 2 || c == 4) && side == 'a') add("R_{n-1} present", a(n - 1) >= 1, cnt(n - 1));
    if (c == 1) {
        add("R_0 at least as frequent as R_2", a(0) >= a(2), cnt(0) + ", " + cnt(2));
        bool ok = true;
        std::string detail;
        for (int k = 1; 2 * k + 2 <= n - 1; ++k)
            if (a(2 * k) <= a(2 * k + 2)) {
                ok = false;
                detail = cnt(2 * k) + " <= " + cnt(2 * k + 2);
                break;
            }
        add("strictly decreasing beyond R_2", ok, detail);
    }
    rep.ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const ConstraintCheck& x) { return x.ok; });
    return rep;
}

std::vector<char> tip_configurations(const std::string& case_tag, int n) {
    EdgeSequence probe{n, case_tag, {}};
    switch (probe.case_number()) {
        case 1: return {'a', 'b'};
        case 3: return {'b'};  // a tip of type (a) joins the two different ends of one edge
        default: return {'c'};
    }
}

namespace {

struct Normalized {
    std::vector<int> steps;
    std::vector<int> partner;  // step index -> paired index
    std::vector<int> label;    // normalized index -> original index
};

Normalized normalize(const KskBoundary& b) {
    const int n = b.n, full = 4 * n;
    if (n < 2) throw std::invalid_argument("ksk: n must be at least 2");
    const int m = static_cast<int>(b.steps.size());
    if (m == 0) throw std::invalid_argument("ksk: empty boundary");
    // Closure, exactly: steps are powers of zeta_4n.
    CycloInt sum(2 * n);
    for (int d : b.steps) sum += CycloInt::root(2 * n, mod(d, full));
    if (!is_zero(sum)) throw std::invalid_argument("ksk: boundary does not close");
    std::vector<int> partner(static_cast<size_t>(m), -1);
    for (auto [i, j] : b.pairs) {
        if (i < 0 || j < 0 || i >= m || j >= m || i == j) throw std::invalid_argument("ksk: pair index out of range");
        if (partner[static_cast<size_t>(i)] >= 0 || partner[static_cast<size_t>(j)] >= 0)
            throw std::invalid_argument("ksk: node " + std::to_string(partner[static_cast<size_t>(i)] >= 0 ? i : j) + " paired twice");
        if (mod(b.steps[static_cast<size_t>(j)] - b.steps[static_cast<size_t>(i)], full) != 2 * n)
            throw std::invalid_argument("ksk: nodes " + std::to_string(i) + " and " + std::to_string(j) + " are not antiparallel");
        partner[static_cast<size_t>(i)] = j;
        partner[static_cast<size_t>(j)] = i;
    }
    for (int i = 0; i < m; ++i)
        if (partner[static_cast<size_t>(i)] < 0) throw std::invalid_argument("ksk: node " + std::to_string(i) + " is unpaired");

    double area = 0;
    std::complex<double> p = 0;
    for (int d : b.steps) {
        const std::complex<double> q = p + std::polar(1.0, d * std::numbers::pi / (2.0 * n));
        area += p.real() * q.imag() - p.imag() * q.real();
        p = q;
    }
    Normalized out;
    out.label.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) out.label[static_cast<size_t>(i)] = area >= 0 ? i : m - 1 - i;
    std::vector<int> inv(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) inv[static_cast<size_t>(out.label[static_cast<size_t>(i)])] = i;
    for (int i = 0; i < m; ++i) {
        const int o = out.label[static_cast<size_t>(i)];
        out.steps.push_back(mod(b.steps[static_cast<size_t>(o)] + (area >= 0 ? 0 : 2 * n), full));
        out.partner.push_back(inv[static_cast<size_t>(partner[static_cast<size_t>(o)])]);
    }
    return out;
}

// Chords (a, pa) and (c, pc) with a < c: interleaving ones must cross at an
// angle strictly between 0 and pi, measured from a's node to c's node.
bool crossing_ok(const std::vector<int>& steps, int n, int a, int pa, int c, int pc) {
    int lo1 = std::min(a, pa), hi1 = std::max(a, pa), lo2 = std::min(c, pc), hi2 = std::max(c, pc);
    if (lo2 < lo1) {
        std::swap(lo1, lo2);
        std::swap(hi1, hi2);
    }
    const bool interleave = lo1 < lo2 && lo2 < hi1 && hi1 < hi2;
    if (!interleave) return true;
    const int turn = mod(steps[static_cast<size_t>(lo2)] - steps[static_cast<size_t>(lo1)], 4 * n);
    return turn >= 1 && turn <= 2 * n - 1;
}

}  // namespace

KskResult ksk_check(const KskBoundary& b) {
    const Normalized nb = normalize(b);
    const int m = static_cast<int>(nb.steps.size());
    for (int i = 0; i < m; ++i) {
        const int pi = nb.partner[static_cast<size_t>(i)];
        if (pi < i) continue;
        for (int j = i + 1; j < m; ++j) {
            const int pj = nb.partner[static_cast<size_t>(j)];
            if (pj < j) continue;
            if (!crossing_ok(nb.steps, b.n, i, pi, j, pj)) {
                std::ostringstream os;
                os << "chords (" << nb.label[static_cast<size_t>(i)] << "," << nb.label[static_cast<size_t>(pi)] << ") and ("
                   << nb.label[static_cast<size_t>(j)] << "," << nb.label[static_cast<size_t>(pj)]
                   << ") cross outside the open angle (0, pi)";
                return {false, os.str()};
            }
        }
    }
    return {true, ""};
}

std::vector<std::pair<int, int>> ksk_pairing(const KskBoundary& b) {
    const int full = 4 * b.n;
    std::map<int, std::vector<int>> open;  // direction -> waiting step indices
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(b.steps.size()); ++i) {
        const int d = mod(b.steps[static_cast<size_t>(i)], full);
        auto& waiting = open[mod(d + 2 * b.n, full)];
        if (!waiting.empty()) {
            pairs.push_back({waiting.back(), i});
            waiting.pop_back();
        } else {
            open[d].push_back(i);
        }
    }
    for (const auto& [d, w] : open)
        if (!w.empty()) throw std::invalid_argument("ksk: direction " + std::to_string(d) + " has no antiparallel partner");
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::optional<std::vector<std::pair<int, int>>> ksk_find_pairing(const KskBoundary& b, size_t budget) {
    KskBoundary probe = b;
    try {
        probe.pairs = ksk_pairing(b);
    } catch (const std::invalid_argument&) {
        // Unbalanced directions rule out any parallelogram tiling, but an
        // open boundary is still an input error.
        CycloInt sum(2 * b.n);
        for (int d : b.steps) sum += CycloInt::root(2 * b.n, mod(d, 4 * b.n));
        if (!is_zero(sum)) throw std::invalid_argument("ksk: boundary does not close");
        return std::nullopt;
    }
    const Normalized nb = normalize(probe);
    const int m = static_cast<int>(nb.steps.size()), full = 4 * b.n;
    std::vector<int> partner(static_cast<size_t>(m), -1);
    size_t spent = 0;
    bool out_of_budget = false;
    std::function<bool(int)> go = [&](int i) -> bool {
        while (i < m && partner[static_cast<size_t>(i)] >= 0) ++i;
        if (i == m) return true;
        for (int j = i + 1; j < m; ++j) {
            if (partner[static_cast<size_t>(j)] >= 0) continue;
            if (mod(nb.steps[static_cast<size_t>(j)] - nb.steps[static_cast<size_t>(i)], full) != 2 * b.n) continue;
            if (++spent > budget) {
                out_of_budget = true;
                return false;
            }
            bool ok = true;
            for (int k = 0; k < m && ok; ++k) {
                const int pk = partner[static_cast<size_t>(k)];
                if (pk > k) ok = crossing_ok(nb.steps, b.n, i, j, k, pk);
            }
            if (!ok) continue;
            partner[static_cast<size_t>(i)] = j;
            partner[static_cast<size_t>(j)] = i;
            if (go(i + 1)) return true;
            partner[static_cast<size_t>(i)] = partner[static_cast<size_t>(j)] = -1;
            if (out_of_budget) return false;
        }
        return false;
    };
    if (!go(0)) {
        if (out_of_budget) throw std::runtime_error("ksk: pairing search exceeded its budget");
        return std::nullopt;
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i) {
        const int j = partner[static_cast<size_t>(i)];
        if (j > i) {
            int a = nb.label[static_cast<size_t>(i)], c = nb.label[static_cast<size_t>(j)];
            pairs.push_back({std::min(a, c), std::max(a, c)});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

KskBoundary ksk_rhomb_boundary(const EdgeSequence& seq, int m, const std::vector<bool>& reversed) {
    auto errs = validate(seq);
    if (!errs.empty()) throw std::invalid_argument("invalid sequence: " + errs.front());
    const int n = seq.n;
    if (m < 1 || m > n - 1) throw std::invalid_argument("rhomb class must lie in [1, n-1]");
    if (reversed.size() != 4) throw std::invalid_argument("need one orientation flag per rhomb edge");
    KskBoundary b;
    b.n = n;
    const int shift = seq.even_config() ? 0 : 1;
    const int dirs[4] = {0, m, n, n + m};  // edge directions in units of pi/n
    for (int e = 0; e < 4; ++e) {
        const int D = 2 * dirs[e] + shift;
        std::vector<int> entries = seq.entries;
        if (reversed[static_cast<size_t>(e)]) std::reverse(entries.begin(), entries.end());
        for (int k : entries) {
            if (k == 0) {
                b.steps.push_back(mod(D, 4 * n));
            } else {
                b.steps.push_back(mod(D + k, 4 * n));
                b.steps.push_back(mod(D - k, 4 * n));
            }
        }
    }
    return b;
}

KskFeasibility ksk_rhomb_feasible(const EdgeSequence& seq, int m) {
    KskFeasibility out;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<bool> rev(4);
        for (int e = 0; e < 4; ++e) rev[static_cast<size_t>(e)] = (mask >> e) & 1;
        KskBoundary b = ksk_rhomb_boundary(seq, m, rev);
        if (auto p = ksk_find_pairing(b)) {
            out.ok = true;
            out.reversed = rev;
            out.pairs = *p;
            return out;
        }
    }
    return out;
}

}  // namespace cast
