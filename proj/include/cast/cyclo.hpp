#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace cast {

using Int = mpz_class;

// Element of Z[zeta_2n] stored as a polynomial in Z[x]/(x^n + 1), x = zeta_2n.
// The representation is not unique; equality reduces modulo Phi_2n.
class CycloInt {
public:
    CycloInt() = default;
    explicit CycloInt(int n);
    CycloInt(int n, std::vector<Int> coeffs);

    static CycloInt root(int n, long k);
    static CycloInt integer(int n, const Int& v);

    int n() const { return n_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& operator[](int k) const { return c_[static_cast<size_t>(k)]; }

    CycloInt& operator+=(const CycloInt& o);
    CycloInt& operator-=(const CycloInt& o);
    CycloInt& operator*=(const CycloInt& o);

private:
    int n_ = 0;
    std::vector<Int> c_;
};

CycloInt operator+(CycloInt a, const CycloInt& b);
CycloInt operator-(CycloInt a, const CycloInt& b);
CycloInt operator-(const CycloInt& a);
CycloInt operator*(const CycloInt& a, const CycloInt& b);
CycloInt operator*(const Int& s, const CycloInt& a);

CycloInt add(const CycloInt& x, const CycloInt& y);
CycloInt mul(const CycloInt& x, const CycloInt& y);
CycloInt conj(const CycloInt& x);
// x * zeta_2n^r, a signed cyclic shift.
CycloInt rotate(const CycloInt& x, long r);

// Coefficients of x reduced modulo Phi_2n (length phi(2n), low degree first).
std::vector<Int> canonical(const CycloInt& x);
bool is_zero(const CycloInt& x);
bool equals(const CycloInt& x, const CycloInt& y);
// Total order on canonical coefficient vectors; compatible with addition.
int lex_compare(const CycloInt& x, const CycloInt& y);

CycloInt norm_sq(const CycloInt& x);
bool is_real(const CycloInt& x);
// True iff x is a rational integer; the value is written to *out when given.
bool as_rational_integer(const CycloInt& x, Int* out = nullptr);

int default_precision_bits();
std::complex<double> embed(const CycloInt& x, int precision_bits = 0);
// Double-precision evaluation without certification; for heuristics and bounds.
std::complex<double> embed_fast(const CycloInt& x);
// Real and imaginary parts rounded half-to-even at the given number of decimals.
std::pair<std::string, std::string> embed_fixed(const CycloInt& x, int decimals);
// Decimal rendering of the real/imag parts with the requested digits.
std::string embed_string(const CycloInt& x, int digits, int precision_bits = 0);

// Exact signs of real and imaginary parts.
int sign_real(const CycloInt& x);
int sign_imag(const CycloInt& x);

std::optional<CycloInt> exact_div(const CycloInt& x, const CycloInt& y);

// Cyclotomic polynomial Phi_m, integer coefficients low degree first.
const std::vector<Int>& cyclotomic_poly(int m);
int euler_phi(int m);

std::string to_string(const CycloInt& x);

// Stable string key of the canonical form, used for hashing points.
std::string point_key(const CycloInt& x);

}  // namespace cast
