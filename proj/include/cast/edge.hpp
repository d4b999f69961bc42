#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cast/diag.hpp"

namespace cast {

// Rhombs R_k (k > 0) and unit segments R_0 along a supertile edge.
struct EdgeSequence {
    int n = 0;
    std::string case_tag;  // 1a 1b 2a 2b 3a 3b 4a 4b
    std::vector<int> entries;

    int case_number() const;   // 1..4
    bool even_config() const;  // cases 1 and 3
    bool d2() const;           // cases 3 and 4
    int alpha(int k) const;    // occurrences of R_k
};

// Checks the tag (its letter must match the parity of n), the entry range
// [0, n-1], the entry parity, and the palindrome required by D2 edges.
std::vector<std::string> validate(const EdgeSequence& seq);
EdgeSequence parse_sequence(int n, const std::string& tag, const std::string& text);  // "0,2,4" or "0-2-4"
std::string format_sequence(const EdgeSequence& seq);

// Length of the diagonal of R_k lying on the edge: 2 cos(k pi / 2n); 1 for k = 0.
double diagonal_length(int n, int k);

// Even configuration: sum of alpha_k d_k in the diagonal ring.
DiagElem multiplier_even_config(const EdgeSequence& seq);

struct OddMultiplier {
    DiagElem inner;      // eta = sqrt(mu_2 + 2) * inner
    double value = 0;    // numeric eta
    std::string symbolic;
};
// How an odd rhomb R_{2i+1} on the edge counts towards eta / sqrt(mu_2 + 2).
//  Paired: 1 for i = 0, zeta^i + conj(zeta^i) otherwise; reproduces every
//          tabulated odd-configuration row exactly.
//  Diagonal: its own diagonal 2 cos((2i+1) pi / 2n) over 2 cos(pi / 2n).
enum class OddWeighting { Paired, Diagonal };
OddMultiplier multiplier_odd_config(const EdgeSequence& seq, OddWeighting w = OddWeighting::Paired);
// Explicit weights: weights[i] is the contribution of R_{2i+1}.
OddMultiplier multiplier_odd_config(const EdgeSequence& seq, const std::vector<DiagElem>& weights);

struct TableRow {
    EdgeSequence seq;
    DiagElem inner;          // eta, or eta / sqrt(mu_2 + 2) for cases 2 and 4
    bool sqrt_factor = false;
    bool has_sequence = false;
    bool extrapolated = false;  // beyond the tabulated rows
    double value = 0;
};
// Minimal edge sequence and multiplier for a case and n >= 4.
TableRow minimal_sequence(const std::string& case_tag, int n);
double table_value(const TableRow& row);

struct ConstraintCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};
struct ConstraintReport {
    std::vector<ConstraintCheck> checks;
    bool ok = false;
};
ConstraintReport alpha_constraints(const EdgeSequence& seq);

// Admissible tip layouts: 'a' (R_0 segments meeting), 'b' (even rhomb at the
// tip), 'c' (odd rhomb at the tip).
std::vector<char> tip_configurations(const std::string& case_tag, int n);

// KSK criterion on a closed boundary of unit steps. Steps are direction
// exponents d (step = zeta_4n^d, so even d are lattice directions). Nodes are
// boundary steps; pairs list worm endpoints as step indices.
struct KskBoundary {
    int n = 0;
    std::vector<int> steps;  // direction exponents in units of pi/2n
    std::vector<std::pair<int, int>> pairs;
};
struct KskResult {
    bool ok = false;
    std::string violation;
};
// Throws std::invalid_argument on an open boundary or a malformed pairing.
KskResult ksk_check(const KskBoundary& b);
// Pairs each step with the next unmatched step of opposite direction,
// scanning from the start of the boundary.
std::vector<std::pair<int, int>> ksk_pairing(const KskBoundary& b);
// Searches all pairings; the first one passing the check, if any.
std::optional<std::vector<std::pair<int, int>>> ksk_find_pairing(const KskBoundary& b,
                                                                 size_t budget = 2000000);
// Inner boundary of the inflated rhomb R_m whose four edges each carry the
// sequence; reversed[i] reads edge i from its far end.
KskBoundary ksk_rhomb_boundary(const EdgeSequence& seq, int m, const std::vector<bool>& reversed);
struct KskFeasibility {
    bool ok = false;
    std::vector<bool> reversed;  // orientation that passed
    std::vector<std::pair<int, int>> pairs;
};
// Some orientation of the four edges admits a passing pairing.
KskFeasibility ksk_rhomb_feasible(const EdgeSequence& seq, int m);

}  // namespace cast
