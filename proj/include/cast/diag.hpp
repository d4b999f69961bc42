#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cast/cyclo.hpp"

namespace cast {

// Integer combination of the n-gon diagonals mu_{n,1..floor(n/2)}.
// c[0] is the coefficient of mu_{n,1} = 1.
class DiagElem {
public:
    DiagElem() = default;
    explicit DiagElem(int n);
    DiagElem(int n, std::vector<Int> c);

    static DiagElem integer(int n, const Int& v);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(c_.size()); }
    const std::vector<Int>& c() const { return c_; }
    // Coefficient of mu_{n,k}, 1 <= k <= floor(n/2).
    const Int& coeff(int k) const { return c_[static_cast<size_t>(k - 1)]; }

    DiagElem& operator+=(const DiagElem& o);
    DiagElem& operator-=(const DiagElem& o);

    // Numeric value sum c_k sin(k pi/n) / sin(pi/n).
    double value() const;

private:
    int n_ = 0;
    std::vector<Int> c_;
};

DiagElem operator+(DiagElem a, const DiagElem& b);
DiagElem operator-(DiagElem a, const DiagElem& b);
DiagElem operator*(const Int& s, const DiagElem& a);
DiagElem operator*(const DiagElem& a, const DiagElem& b);

int reduce_index(int n, int k);
DiagElem mu(int n, int k);
DiagElem dpf_mul(const DiagElem& x, const DiagElem& y);
DiagElem dpf_pow(const DiagElem& x, unsigned p);

CycloInt to_cyclo(const DiagElem& x);
std::optional<DiagElem> from_real_cyclo(const CycloInt& x);
// Non-negative representative of the same value, if one exists in the search box.
std::optional<DiagElem> nonneg_representative(const DiagElem& x);

// Value equality (the basis is linearly dependent for composite n).
bool same_value(const DiagElem& x, const DiagElem& y);
bool is_rational_integer(const DiagElem& x, Int* out = nullptr);
bool is_nonneg(const DiagElem& x);
bool is_zero(const DiagElem& x);

enum class Parity { Even, Odd, Mixed };
struct ParityTag {
    Parity set = Parity::Mixed;
    bool full = false;
};
ParityTag classify(const DiagElem& x);
std::string to_string(Parity p);

struct FullWitness {
    bool ok = false;
    unsigned power = 0;
};
FullWitness eventually_full(const DiagElem& x, unsigned max_power = 0);

// Even n: some odd-index and some even-index coefficient is >= 1.
bool parity_condition(const DiagElem& x);
// Constant term b_0 when x is written as b_0 + sum b_k (zeta^k + conj zeta^k).
Int b0(const DiagElem& x);

// Forms like "2*mu(7,3)+4*mu(7,2)+3".
std::string to_symbolic(const DiagElem& x);
std::optional<DiagElem> parse_symbolic(const std::string& text, int n_hint = 0);

}  // namespace cast
