#include "cast/diag.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <regex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace cast {

namespace {

void check_same(const DiagElem& a, const DiagElem& b) {
    if (a.n() != b.n()) throw std::domain_error("mismatched diagonal ring orders");
}

// Column echelon data for the basis images of mu_{n,1..m} in canonical form.
struct BasisSolver {
    int rows = 0, cols = 0, rank = 0;
    std::vector<std::vector<Int>> H;  // rows x cols, H = B * V
    std::vector<std::vector<Int>> V;  // cols x cols, unimodular
    std::vector<int> pivot_row;       // pivot row of column p < rank
};

void col_axpy(std::vector<std::vector<Int>>& M, int dst, int src, const Int& f) {
    for (auto& row : M) row[dst] += f * row[src];
}

void col_swap(std::vector<std::vector<Int>>& M, int a, int b) {
    for (auto& row : M) std::swap(row[a], row[b]);
}

// Replace columns (a, b) by (s*a + t*b, -(y/g)*a + (x/g)*b) where g = s*x + t*y.
void col_gcd(std::vector<std::vector<Int>>& M, int a, int b, const Int& s, const Int& t,
             const Int& u, const Int& v) {
    for (auto& row : M) {
        Int na = s * row[a] + t * row[b];
        Int nb = u * row[a] + v * row[b];
        row[a] = na;
        row[b] = nb;
    }
}

BasisSolver build_solver(int n) {
    const int m = n / 2;
    BasisSolver S;
    std::vector<std::vector<Int>> img;
    for (int k = 1; k <= m; ++k) img.push_back(canonical(to_cyclo(mu(n, k))));
    S.rows = static_cast<int>(img[0].size());
    S.cols = m;
    S.H.assign(static_cast<size_t>(S.rows), std::vector<Int>(static_cast<size_t>(m)));
    for (int r = 0; r < S.rows; ++r)
        for (int k = 0; k < m; ++k) S.H[r][k] = img[k][r];
    S.V.assign(static_cast<size_t>(m), std::vector<Int>(static_cast<size_t>(m)));
    for (int k = 0; k < m; ++k) S.V[k][k] = 1;

    int p = 0;
    for (int r = 0; r < S.rows && p < m; ++r) {
        for (int q = p + 1; q < m; ++q) {
            if (S.H[r][q] == 0) continue;
            if (S.H[r][p] == 0) {
                col_swap(S.H, p, q);
                col_swap(S.V, p, q);
                continue;
            }
            Int x = S.H[r][p], y = S.H[r][q], g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Int u = -y / g, v = x / g;
            col_gcd(S.H, p, q, s, t, u, v);
            col_gcd(S.V, p, q, s, t, u, v);
        }
        if (S.H[r][p] != 0) {
            if (S.H[r][p] < 0) {
                for (auto& row : S.H) row[p] = -row[p];
                for (auto& row : S.V) row[p] = -row[p];
            }
            // Reduce earlier pivot columns to keep entries small.
            for (int q = 0; q < p; ++q) {
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), S.H[r][q].get_mpz_t(), S.H[r][p].get_mpz_t());
                if (f != 0) {
                    col_axpy(S.H, q, p, -f);
                    col_axpy(S.V, q, p, -f);
                }
            }
            S.pivot_row.push_back(r);
            ++p;
        }
    }
    S.rank = p;
    return S;
}

std::shared_mutex g_solver_mutex;
std::map<int, BasisSolver> g_solvers;

const BasisSolver& solver(int n) {
    {
        std::shared_lock lk(g_solver_mutex);
        auto it = g_solvers.find(n);
        if (it != g_solvers.end()) return it->second;
    }
    BasisSolver s = build_solver(n);
    std::unique_lock lk(g_solver_mutex);
    auto [it, inserted] = g_solvers.emplace(n, std::move(s));
    return it->second;
}

}  // namespace

DiagElem::DiagElem(int n) : n_(n), c_(static_cast<size_t>(std::max(1, n / 2))) {
    if (n < 2) throw std::domain_error("diagonal ring order must be >= 2");
}

DiagElem::DiagElem(int n, std::vector<Int> c) : DiagElem(n) {
    if (c.size() != c_.size())
        throw std::domain_error("DiagElem coefficient vector must have length floor(n/2)");
    c_ = std::move(c);
}

DiagElem DiagElem::integer(int n, const Int& v) {
    DiagElem d(n);
    d.c_[0] = v;
    return d;
}

DiagElem& DiagElem::operator+=(const DiagElem& o) {
    check_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

DiagElem& DiagElem::operator-=(const DiagElem& o) {
    check_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

double DiagElem::value() const {
    long double s1 = std::sin(static_cast<long double>(M_PI) / n_);
    long double v = 0;
    for (int k = 1; k <= dim(); ++k) {
        if (coeff(k) == 0) continue;
        v += static_cast<long double>(coeff(k).get_d()) *
             std::sin(static_cast<long double>(M_PI) * k / n_) / s1;
    }
    return static_cast<double>(v);
}

DiagElem operator+(DiagElem a, const DiagElem& b) { return a += b; }
DiagElem operator-(DiagElem a, const DiagElem& b) { return a -= b; }
DiagElem operator*(const Int& s, const DiagElem& a) {
    std::vector<Int> c(a.c());
    for (auto& v : c) v *= s;
    return DiagElem(a.n(), std::move(c));
}
DiagElem operator*(const DiagElem& a, const DiagElem& b) { return dpf_mul(a, b); }

int reduce_index(int n, int k) {
    if (k < 1 || k > n - 1) throw std::domain_error("diagonal index must lie in [1, n-1]");
    return k <= n / 2 ? k : n - k;
}

DiagElem mu(int n, int k) {
    DiagElem d(n);
    std::vector<Int> c(d.c());
    c[static_cast<size_t>(reduce_index(n, k) - 1)] = 1;
    return DiagElem(n, std::move(c));
}

DiagElem dpf_mul(const DiagElem& x, const DiagElem& y) {
    check_same(x, y);
    const int n = x.n(), m = x.dim();
    std::vector<Int> r(static_cast<size_t>(m));
    Int t;
    for (int h = 1; h <= m; ++h) {
        if (x.coeff(h) == 0) continue;
        for (int k = 1; k <= m; ++k) {
            if (y.coeff(k) == 0) continue;
            t = x.coeff(h) * y.coeff(k);
            int a = std::min(h, k), b = std::max(h, k);
            for (int i = 1; i <= a; ++i) {
                int j = b - a - 1 + 2 * i;
                if (j == n) continue;  // mu_{n,n} = 0
                r[static_cast<size_t>(reduce_index(n, j) - 1)] += t;
            }
        }
    }
    return DiagElem(n, std::move(r));
}

DiagElem dpf_pow(const DiagElem& x, unsigned p) {
    DiagElem r = DiagElem::integer(x.n(), 1);
    for (unsigned i = 0; i < p; ++i) r = dpf_mul(r, x);
    return r;
}

CycloInt to_cyclo(const DiagElem& x) {
    const int n = x.n();
    CycloInt r(n);
    for (int k = 1; k <= x.dim(); ++k) {
        if (x.coeff(k) == 0) continue;
        CycloInt b(n);
        for (int i = 0; i < k; ++i) b += CycloInt::root(n, 2 * i - k + 1);
        r += x.coeff(k) * b;
    }
    return r;
}

std::optional<DiagElem> from_real_cyclo(const CycloInt& x) {
    if (!is_real(x)) throw std::domain_error("from_real_cyclo: input is not real");
    const int n = x.n();
    const BasisSolver& S = solver(n);
    std::vector<Int> t = canonical(x);
    std::vector<Int> y(static_cast<size_t>(S.cols));
    for (int p = 0; p < S.rank; ++p) {
        int r = S.pivot_row[p];
        Int acc = t[r];
        for (int q = 0; q < p; ++q) acc -= S.H[r][q] * y[q];
        if (acc % S.H[r][p] != 0) return std::nullopt;
        y[p] = acc / S.H[r][p];
    }
    for (int r = 0; r < S.rows; ++r) {
        Int acc = 0;
        for (int q = 0; q < S.rank; ++q) acc += S.H[r][q] * y[q];
        if (acc != t[r]) return std::nullopt;
    }
    std::vector<Int> c(static_cast<size_t>(S.cols));
    for (int i = 0; i < S.cols; ++i)
        for (int q = 0; q < S.rank; ++q) c[i] += S.V[i][q] * y[q];
    return DiagElem(n, std::move(c));
}

std::optional<DiagElem> nonneg_representative(const DiagElem& x) {
    if (is_nonneg(x)) return x;
    const BasisSolver& S = solver(x.n());
    const int kdim = S.cols - S.rank;
    if (kdim == 0) return std::nullopt;
    Int maxabs = 0;
    for (const auto& v : x.c()) maxabs = std::max(maxabs, Int(abs(v)));
    long box = 1 + maxabs.get_si();
    // Keep the enumeration bounded.
    while (box > 1 && std::pow(2.0 * box + 1, kdim) > 2e6) --box;
    std::vector<long> mult(static_cast<size_t>(kdim), -box);
    std::optional<DiagElem> best;
    Int best_sum;
    for (;;) {
        std::vector<Int> c(x.c());
        for (int j = 0; j < kdim; ++j)
            if (mult[j] != 0)
                for (int i = 0; i < S.cols; ++i) c[i] += Int(mult[j]) * S.V[i][S.rank + j];
        bool ok = true;
        Int sum = 0;
        for (const auto& v : c) {
            if (v < 0) { ok = false; break; }
            sum += v;
        }
        if (ok) {
            DiagElem cand(x.n(), c);
            if (!best || sum < best_sum || (sum == best_sum && cand.c() < best->c())) {
                best = cand;
                best_sum = sum;
            }
        }
        int j = 0;
        while (j < kdim && mult[j] == box) mult[j++] = -box;
        if (j == kdim) break;
        ++mult[j];
    }
    return best;
}

bool same_value(const DiagElem& x, const DiagElem& y) {
    check_same(x, y);
    return is_zero(to_cyclo(x - y));
}

bool is_rational_integer(const DiagElem& x, Int* out) {
    return as_rational_integer(to_cyclo(x), out);
}

bool is_nonneg(const DiagElem& x) {
    for (const auto& v : x.c())
        if (v < 0) return false;
    return true;
}

bool is_zero(const DiagElem& x) { return is_zero(to_cyclo(x)); }

ParityTag classify(const DiagElem& x) {
    bool any_odd = false, any_even = false, all_pos = true, any = false;
    for (int k = 1; k <= x.dim(); ++k) {
        const Int& v = x.coeff(k);
        if (v < 0) throw std::domain_error("classify: negative coefficient");
        if (v > 0) {
            any = true;
            (k % 2 ? any_odd : any_even) = true;
        } else {
            all_pos = false;
        }
    }
    if (!any) throw std::domain_error("classify: zero element");
    ParityTag tag;
    tag.set = any_odd && any_even ? Parity::Mixed : (any_odd ? Parity::Odd : Parity::Even);
    tag.full = all_pos;
    return tag;
}

std::string to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "EVEN";
        case Parity::Odd: return "ODD";
        default: return "MIXED";
    }
}

FullWitness eventually_full(const DiagElem& x, unsigned max_power) {
    classify(x);
    if (max_power == 0) max_power = 2u * static_cast<unsigned>(x.dim() * x.dim());
    DiagElem p = x;
    for (unsigned e = 1; e <= max_power; ++e) {
        bool full = true;
        for (const auto& v : p.c())
            if (v <= 0) { full = false; break; }
        if (full) return {true, e};
        p = dpf_mul(p, x);
    }
    return {false, 0};
}

bool parity_condition(const DiagElem& x) {
    Int max_odd = 0, max_even = 0;
    for (int k = 1; k <= x.dim(); ++k) {
        Int& slot = k % 2 ? max_odd : max_even;
        if (x.coeff(k) > slot) slot = x.coeff(k);
    }
    return std::min(max_odd, max_even) >= 1;
}

Int b0(const DiagElem& x) {
    // mu_k contributes a constant 1 exactly when k is odd.
    Int s = 0;
    for (int k = 1; k <= x.dim(); k += 2) s += x.coeff(k);
    return s;
}

std::string to_symbolic(const DiagElem& x) {
    std::ostringstream os;
    bool first = true;
    for (int k = x.dim(); k >= 1; --k) {
        Int v = x.coeff(k);
        if (v == 0) continue;
        bool neg = v < 0;
        Int a = neg ? Int(-v) : v;
        if (neg) os << "-";
        else if (!first) os << "+";
        if (k == 1) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "mu(" << x.n() << "," << k << ")";
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::optional<DiagElem> parse_symbolic(const std::string& text, int n_hint) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) return std::nullopt;
    static const std::regex term_re(R"(([+-]?)(?:(\d+)\*?)?(?:mu\((\d+),(\d+)\))?)");
    struct Term { Int coef; int n = 0, k = 1; };
    std::vector<Term> terms;
    size_t pos = 0;
    int n = n_hint;
    while (pos < s.size()) {
        std::smatch m;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, m, term_re, std::regex_constants::match_continuous) ||
            m.length(0) == 0)
            return std::nullopt;
        if (pos > 0 && m[1].length() == 0) return std::nullopt;
        if (m[2].length() == 0 && m[3].length() == 0) return std::nullopt;
        Term t;
        t.coef = m[2].length() ? Int(m[2].str()) : Int(1);
        if (m[1].str() == "-") t.coef = -t.coef;
        if (m[3].length()) {
            t.n = std::stoi(m[3].str());
            t.k = std::stoi(m[4].str());
            if (n != 0 && n != t.n) return std::nullopt;
            n = t.n;
        } else if (m[2].length() && rest.size() > static_cast<size_t>(m.length(0)) &&
                   rest[static_cast<size_t>(m.length(0))] == 'm') {
            return std::nullopt;
        }
        terms.push_back(t);
        pos += static_cast<size_t>(m.length(0));
    }
    if (n < 2) return std::nullopt;
    DiagElem out(n);
    for (const auto& t : terms) {
        if (t.k < 1 || t.k > n - 1) return std::nullopt;
        out += t.coef * mu(n, t.k);
    }
    return out;
}

}  // namespace cast
