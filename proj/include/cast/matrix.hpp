#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cast/diag.hpp"

namespace cast {

// Square non-negative integer matrix; rows and columns of the reduced
// schemes are indexed by diagonal index floor(n/2) ... 1.
class SubstMatrix {
public:
    SubstMatrix() = default;
    SubstMatrix(int n, int dim);
    SubstMatrix(int n, std::vector<std::vector<Int>> entries);

    static SubstMatrix identity(int n, int dim);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(e_.size()); }
    const Int& at(int i, int j) const { return e_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    Int& at(int i, int j) { return e_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const std::vector<std::vector<Int>>& entries() const { return e_; }

    bool operator==(const SubstMatrix& o) const { return e_ == o.e_; }
    bool operator!=(const SubstMatrix& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<std::vector<Int>> e_;
};

SubstMatrix operator+(const SubstMatrix& a, const SubstMatrix& b);
SubstMatrix operator*(const SubstMatrix& a, const SubstMatrix& b);
SubstMatrix operator*(const Int& s, const SubstMatrix& a);
SubstMatrix transpose(const SubstMatrix& a);
SubstMatrix matrix_pow(const SubstMatrix& a, unsigned p);

std::string format_matrix(const SubstMatrix& m);   // aligned grid
std::string compact_matrix(const SubstMatrix& m);  // [[2,1],[1,1]]
SubstMatrix parse_matrix(int n, const std::string& text);

SubstMatrix basis_matrix(int n, int k);
SubstMatrix compose(int n, const std::vector<Int>& c);

struct CoeffResult {
    std::optional<std::vector<Int>> coeffs;
    int bad_row = -1, bad_col = -1;
};
CoeffResult coeffs_from_matrix(const SubstMatrix& m);

std::vector<DiagElem> area_vector(int n);       // x_A
std::vector<DiagElem> frequency_vector(int n);  // x_f

struct EigenReport {
    bool ok = false;
    bool right_ok = false, left_ok = false;
    int bad_row = -1;
    std::string detail;
};
EigenReport eigen_check(const SubstMatrix& m, const DiagElem& lambda);

struct PrimitiveReport {
    bool primitive = false;
    unsigned power = 0;  // first p with M^p >> 0
    unsigned bound = 0;
};
PrimitiveReport is_primitive(const SubstMatrix& m);
// Primitivity predicted from lambda alone: eventually full, not a rational
// integer, and (even n) the parity condition.
bool lambda_criterion(int n, const DiagElem& lambda);

DiagElem min_lambda(int n);

struct Candidate {
    DiagElem lambda;
    double value = 0;
    bool is_minimum = false;
    std::vector<std::string> reasons;  // empty means it would satisfy every condition
};
struct MinReport {
    int n = 0;
    DiagElem lambda_min;
    std::vector<Candidate> candidates;
    bool ok = false;
    std::string summary;
};
MinReport verify_min(int n);

SubstMatrix longest_diag_matrix(int n);

struct ConjugateReport {
    bool ok = false;
    std::optional<DiagElem> lambda;
    std::vector<DiagElem> x_star;
    std::string detail;
};
ConjugateReport conjugate_check(const SubstMatrix& m_star,
                                const std::vector<std::vector<Int>>& T, int n);

int l_min(int n);

}  // namespace cast
