#include "cast/cyclo.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace cast {

namespace {

void check_n(int n) {
    if (n < 2) throw std::domain_error("cyclotomic order n must be >= 2");
}

void check_same(const CycloInt& a, const CycloInt& b) {
    if (a.n() != b.n()) throw std::domain_error("mismatched cyclotomic orders");
}

using Poly = std::vector<Int>;
using QPoly = std::vector<mpq_class>;

template <class P>
void trim(P& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// p mod m for monic m over Z.
Poly reduce_monic(Poly p, const Poly& m) {
    const size_t dm = m.size() - 1;
    trim(p);
    while (p.size() > dm) {
        Int lead = p.back();
        size_t shift = p.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) p[shift + i] -= lead * m[i];
        trim(p);
    }
    return p;
}

// Exact quotient of p by a monic divisor m.
Poly divide_monic(Poly p, const Poly& m) {
    const size_t dm = m.size() - 1;
    trim(p);
    if (p.size() <= dm) return {};
    Poly q(p.size() - dm);
    while (p.size() > dm) {
        Int lead = p.back();
        size_t shift = p.size() - 1 - dm;
        q[shift] = lead;
        for (size_t i = 0; i <= dm; ++i) p[shift + i] -= lead * m[i];
        trim(p);
    }
    if (!p.empty()) throw std::logic_error("cyclotomic division left a remainder");
    return q;
}

QPoly to_q(const Poly& p) {
    QPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = mpq_class(p[i]);
    return r;
}

void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    const mpq_class lead_b = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / lead_b;
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.back() = 0;
        trim(a);
    }
    r = a;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

std::shared_mutex g_phi_mutex;
std::map<int, Poly> g_phi_cache;

struct TrigTable {
    int prec = 0;
    std::vector<__mpfr_struct> cos_, sin_;
    TrigTable(int n, int p) : prec(p), cos_(static_cast<size_t>(n)), sin_(static_cast<size_t>(n)) {
        mpfr_t pi, a;
        mpfr_init2(pi, p + 16);
        mpfr_init2(a, p + 16);
        mpfr_const_pi(pi, MPFR_RNDN);
        for (int k = 0; k < n; ++k) {
            mpfr_init2(&cos_[k], p);
            mpfr_init2(&sin_[k], p);
            mpfr_mul_si(a, pi, k, MPFR_RNDN);
            mpfr_div_si(a, a, n, MPFR_RNDN);
            mpfr_sin_cos(&sin_[k], &cos_[k], a, MPFR_RNDN);
        }
        mpfr_clear(pi);
        mpfr_clear(a);
    }
    ~TrigTable() {
        for (auto& c : cos_) mpfr_clear(&c);
        for (auto& s : sin_) mpfr_clear(&s);
    }
    TrigTable(const TrigTable&) = delete;
    TrigTable& operator=(const TrigTable&) = delete;
};

std::shared_mutex g_trig_mutex;
std::map<std::pair<int, int>, std::unique_ptr<TrigTable>> g_trig_cache;

const TrigTable& trig_table(int n, int prec) {
    prec = ((prec + 63) / 64) * 64;
    auto key = std::make_pair(n, prec);
    {
        std::shared_lock lk(g_trig_mutex);
        auto it = g_trig_cache.find(key);
        if (it != g_trig_cache.end()) return *it->second;
    }
    auto table = std::make_unique<TrigTable>(n, prec);
    std::unique_lock lk(g_trig_mutex);
    auto [it, inserted] = g_trig_cache.emplace(key, std::move(table));
    return *it->second;
}

struct DoubleTrig {
    std::vector<double> c, s;
};
std::shared_mutex g_dtrig_mutex;
std::map<int, DoubleTrig> g_dtrig_cache;

const DoubleTrig& double_trig(int n) {
    {
        std::shared_lock lk(g_dtrig_mutex);
        auto it = g_dtrig_cache.find(n);
        if (it != g_dtrig_cache.end()) return it->second;
    }
    DoubleTrig t;
    const TrigTable& hi = trig_table(n, 64);
    for (int k = 0; k < n; ++k) {
        t.c.push_back(mpfr_get_d(&hi.cos_[k], MPFR_RNDN));
        t.s.push_back(mpfr_get_d(&hi.sin_[k], MPFR_RNDN));
    }
    std::unique_lock lk(g_dtrig_mutex);
    auto [it, inserted] = g_dtrig_cache.emplace(n, std::move(t));
    return it->second;
}

size_t max_bits(const CycloInt& x) {
    size_t b = 1;
    for (const auto& a : x.coeffs())
        if (a != 0) b = std::max(b, mpz_sizeinbase(a.get_mpz_t(), 2));
    return b;
}

// Evaluate real (part == 0) or imaginary (part == 1) component at the given
// precision. *err receives an upper bound on the absolute error as a power of two.
void eval_part(const CycloInt& x, int part, int prec, mpfr_t out, long* err_exp) {
    const int n = x.n();
    const TrigTable& t = trig_table(n, prec);
    mpfr_t term;
    mpfr_init2(term, t.prec + 64 + static_cast<int>(max_bits(x)));
    mpfr_set_prec(out, t.prec + 64 + static_cast<int>(max_bits(x)));
    mpfr_set_zero(out, 1);
    for (int k = 0; k < n; ++k) {
        if (x[k] == 0) continue;
        mpfr_mul_z(term, part == 0 ? &t.cos_[k] : &t.sin_[k], x[k].get_mpz_t(), MPFR_RNDN);
        mpfr_add(out, out, term, MPFR_RNDN);
    }
    mpfr_clear(term);
    // Each table entry is off by at most 2^-prec; terms are summed with a wider
    // mantissa so rounding contributes far less than that.
    long bits = static_cast<long>(max_bits(x)) + 1;
    long nb = 1;
    while ((1L << nb) < n) ++nb;
    *err_exp = bits + nb + 1 - t.prec;
}

int sign_part(const CycloInt& x, int part) {
    const int n = x.n();
    const DoubleTrig& dt = double_trig(n);
    double v = 0.0, mag = 0.0;
    for (int k = 0; k < n; ++k) {
        if (x[k] == 0) continue;
        double a = x[k].get_d();
        double tk = part == 0 ? dt.c[k] : dt.s[k];
        v += a * tk;
        mag += std::fabs(a);
    }
    double bound = mag * 1e-14 + 1e-300;
    if (std::isfinite(v) && std::isfinite(mag)) {
        if (v > bound) return 1;
        if (v < -bound) return -1;
    }
    CycloInt probe = part == 0 ? x + conj(x) : x - conj(x);
    if (is_zero(probe)) return 0;
    int prec = 128;
    mpfr_t val;
    mpfr_init2(val, 64);
    for (;;) {
        long err_exp = 0;
        eval_part(x, part, prec, val, &err_exp);
        if (!mpfr_zero_p(val) && mpfr_get_exp(val) - 1 > err_exp) {
            int s = mpfr_sgn(val);
            mpfr_clear(val);
            return s > 0 ? 1 : -1;
        }
        prec *= 2;
        if (prec > (1 << 20)) {
            mpfr_clear(val);
            throw std::runtime_error("sign test failed to separate a nonzero value");
        }
    }
}

}  // namespace

CycloInt::CycloInt(int n) : n_(n), c_(static_cast<size_t>(n)) { check_n(n); }

CycloInt::CycloInt(int n, std::vector<Int> coeffs) : n_(n), c_(std::move(coeffs)) {
    check_n(n);
    if (c_.size() > static_cast<size_t>(n)) {
        // Fold higher powers with x^n = -1.
        std::vector<Int> f(static_cast<size_t>(n));
        for (size_t i = 0; i < c_.size(); ++i) {
            size_t e = i % (2 * static_cast<size_t>(n));
            if (e < static_cast<size_t>(n)) f[e] += c_[i];
            else f[e - n] -= c_[i];
        }
        c_ = std::move(f);
    }
    c_.resize(static_cast<size_t>(n));
}

CycloInt CycloInt::root(int n, long k) {
    check_n(n);
    long m = 2L * n;
    long e = ((k % m) + m) % m;
    CycloInt r(n);
    if (e < n) r.c_[e] = 1;
    else r.c_[e - n] = -1;
    return r;
}

CycloInt CycloInt::integer(int n, const Int& v) {
    CycloInt r(n);
    r.c_[0] = v;
    return r;
}

CycloInt& CycloInt::operator+=(const CycloInt& o) {
    check_same(*this, o);
    for (int k = 0; k < n_; ++k) c_[k] += o.c_[k];
    return *this;
}

CycloInt& CycloInt::operator-=(const CycloInt& o) {
    check_same(*this, o);
    for (int k = 0; k < n_; ++k) c_[k] -= o.c_[k];
    return *this;
}

CycloInt& CycloInt::operator*=(const CycloInt& o) {
    *this = mul(*this, o);
    return *this;
}

CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
CycloInt operator-(const CycloInt& a) {
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) v = -v;
    return CycloInt(a.n(), std::move(c));
}
CycloInt operator*(const CycloInt& a, const CycloInt& b) { return mul(a, b); }
CycloInt operator*(const Int& s, const CycloInt& a) {
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) v *= s;
    return CycloInt(a.n(), std::move(c));
}

CycloInt add(const CycloInt& x, const CycloInt& y) { return x + y; }

CycloInt mul(const CycloInt& x, const CycloInt& y) {
    check_same(x, y);
    const int n = x.n();
    std::vector<Int> r(static_cast<size_t>(n));
    Int t;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            t = x[i] * y[j];
            int e = i + j;
            if (e < n) r[e] += t;
            else r[e - n] -= t;
        }
    }
    return CycloInt(n, std::move(r));
}

CycloInt conj(const CycloInt& x) {
    const int n = x.n();
    std::vector<Int> r(static_cast<size_t>(n));
    r[0] = x[0];
    for (int k = 1; k < n; ++k) r[n - k] = -x[k];
    return CycloInt(n, std::move(r));
}

CycloInt rotate(const CycloInt& x, long rot) {
    const int n = x.n();
    const long m = 2L * n;
    long s = ((rot % m) + m) % m;
    std::vector<Int> r(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (x[k] == 0) continue;
        long e = (k + s) % m;
        if (e < n) r[e] = x[k];
        else r[e - n] = -x[k];
    }
    return CycloInt(n, std::move(r));
}

const std::vector<Int>& cyclotomic_poly(int m) {
    if (m < 1) throw std::domain_error("cyclotomic index must be positive");
    {
        std::shared_lock lk(g_phi_mutex);
        auto it = g_phi_cache.find(m);
        if (it != g_phi_cache.end()) return it->second;
    }
    Poly p(static_cast<size_t>(m) + 1);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) p = divide_monic(p, cyclotomic_poly(d));
    std::unique_lock lk(g_phi_mutex);
    auto [it, inserted] = g_phi_cache.emplace(m, std::move(p));
    return it->second;
}

int euler_phi(int m) {
    int r = m, k = m;
    for (int p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        while (k % p == 0) k /= p;
        r -= r / p;
    }
    if (k > 1) r -= r / k;
    return r;
}

std::vector<Int> canonical(const CycloInt& x) {
    const Poly& phi = cyclotomic_poly(2 * x.n());
    Poly r = reduce_monic(x.coeffs(), phi);
    r.resize(phi.size() - 1);
    return r;
}

bool is_zero(const CycloInt& x) {
    bool all_zero = true;
    for (const auto& a : x.coeffs())
        if (a != 0) { all_zero = false; break; }
    if (all_zero) return true;
    for (const auto& a : canonical(x))
        if (a != 0) return false;
    return true;
}

bool equals(const CycloInt& x, const CycloInt& y) {
    check_same(x, y);
    return is_zero(x - y);
}

int lex_compare(const CycloInt& x, const CycloInt& y) {
    check_same(x, y);
    auto a = canonical(x), b = canonical(y);
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

CycloInt norm_sq(const CycloInt& x) { return x * conj(x); }

bool is_real(const CycloInt& x) { return equals(x, conj(x)); }

bool as_rational_integer(const CycloInt& x, Int* out) {
    auto c = canonical(x);
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    if (out) *out = c.empty() ? Int(0) : c[0];
    return true;
}

int default_precision_bits() {
    if (const char* env = std::getenv("CAST_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 53 && v <= (1L << 16)) return static_cast<int>(v);
    }
    return 128;
}

std::complex<double> embed(const CycloInt& x, int precision_bits) {
    if (precision_bits <= 0) precision_bits = default_precision_bits();
    const int guard = 16;
    mpfr_t re, im;
    mpfr_init2(re, 64);
    mpfr_init2(im, 64);
    long e1 = 0, e2 = 0;
    eval_part(x, 0, precision_bits + guard, re, &e1);
    eval_part(x, 1, precision_bits + guard, im, &e2);
    std::complex<double> r(mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN));
    mpfr_clear(re);
    mpfr_clear(im);
    return r;
}

std::complex<double> embed_fast(const CycloInt& x) {
    const DoubleTrig& dt = double_trig(x.n());
    double re = 0.0, im = 0.0;
    for (int k = 0; k < x.n(); ++k) {
        if (x[k] == 0) continue;
        double a = x[k].get_d();
        re += a * dt.c[k];
        im += a * dt.s[k];
    }
    return {re, im};
}

std::pair<std::string, std::string> embed_fixed(const CycloInt& x, int decimals) {
    const int prec = std::max(default_precision_bits(), 128);
    mpfr_t v;
    mpfr_init2(v, 64);
    mpz_t z;
    mpz_init(z);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    std::string parts[2];
    for (int part = 0; part < 2; ++part) {
        long e = 0;
        eval_part(x, part, prec, v, &e);
        mpfr_mul_z(v, v, scale.get_mpz_t(), MPFR_RNDN);
        mpfr_rint(v, v, MPFR_RNDN);  // ties go to even
        mpfr_get_z(z, v, MPFR_RNDN);
        Int q(z);
        bool neg = q < 0;
        if (neg) q = -q;
        std::string digits = q.get_str();
        if (decimals > 0) {
            if (digits.size() <= static_cast<size_t>(decimals))
                digits.insert(0, static_cast<size_t>(decimals) + 1 - digits.size(), '0');
            digits.insert(digits.size() - static_cast<size_t>(decimals), ".");
        }
        parts[part] = (neg ? "-" : "") + digits;
    }
    mpz_clear(z);
    mpfr_clear(v);
    return {parts[0], parts[1]};
}

std::string embed_string(const CycloInt& x, int digits, int precision_bits) {
    if (precision_bits <= 0) precision_bits = default_precision_bits();
    mpfr_t re, im;
    mpfr_init2(re, 64);
    mpfr_init2(im, 64);
    long e = 0;
    eval_part(x, 0, precision_bits + 16, re, &e);
    eval_part(x, 1, precision_bits + 16, im, &e);
    std::string fmt = "%." + std::to_string(digits) + "Rf";
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, fmt.c_str(), re);
    mpfr_asprintf(&b, fmt.c_str(), im);
    std::string out = std::string(a) + (b[0] == '-' ? "" : "+") + b + "i";
    mpfr_free_str(a);
    mpfr_free_str(b);
    mpfr_clear(re);
    mpfr_clear(im);
    return out;
}

int sign_real(const CycloInt& x) { return sign_part(x, 0); }
int sign_imag(const CycloInt& x) { return sign_part(x, 1); }

std::optional<CycloInt> exact_div(const CycloInt& x, const CycloInt& y) {
    check_same(x, y);
    if (is_zero(y)) throw std::domain_error("exact_div: divisor is zero");
    const int n = x.n();
    const Poly& phi = cyclotomic_poly(2 * n);
    // Extended Euclid: find s with s*y == 1 (mod phi) over Q.
    QPoly r0 = to_q(phi), r1 = to_q(canonical(y));
    trim(r1);
    QPoly s0, s1{mpq_class(1)};
    while (!r1.empty() && !(r1.size() == 1)) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("exact_div: divisor not invertible modulo Phi");
    mpq_class inv_c = 1 / r1[0];
    for (auto& v : s1) v *= inv_c;
    QPoly prod = qmul(to_q(canonical(x)), s1);
    QPoly q, rem;
    qdivmod(prod, to_q(phi), q, rem);
    std::vector<Int> out(static_cast<size_t>(n));
    for (size_t i = 0; i < rem.size(); ++i) {
        rem[i].canonicalize();
        if (rem[i].get_den() != 1) return std::nullopt;
        out[i] = rem[i].get_num();
    }
    return CycloInt(n, std::move(out));
}

std::string to_string(const CycloInt& x) {
    std::ostringstream os;
    os << "cyclo(" << x.n() << ";";
    for (int k = 0; k < x.n(); ++k) os << (k ? "," : "") << x[k].get_str();
    os << ")";
    return os.str();
}

std::string point_key(const CycloInt& x) {
    std::string s;
    for (const auto& a : canonical(x)) {
        s += a.get_str();
        s += ',';
    }
    return s;
}

}  // namespace cast
