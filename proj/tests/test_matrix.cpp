#include "cast/matrix.hpp"
#include "doctest.h"

using namespace cast;

TEST_CASE("basis matrices have the diagonal as eigenvalue") {
    for (int n = 4; n <= 16; ++n)
        for (int k = 1; k <= n / 2; ++k) CHECK(eigen_check(basis_matrix(n, k), mu(n, k)).ok);
}

TEST_CASE("basis matrices multiply like the diagonals") {
    for (int n : {7, 8, 10})
        for (int h = 1; h <= n / 2; ++h)
            for (int k = 1; k <= n / 2; ++k) {
                DiagElem p = dpf_mul(mu(n, h), mu(n, k));
                std::vector<Int> c(p.c().begin(), p.c().end());
                CHECK(basis_matrix(n, h) * basis_matrix(n, k) == compose(n, c));
            }
}

TEST_CASE("compose and coefficient recovery") {
    SubstMatrix m = compose(5, {1, 1});
    CHECK(compact_matrix(m) == "[[2,1],[1,1]]");
    auto back = coeffs_from_matrix(m);
    REQUIRE(back.coeffs.has_value());
    CHECK(*back.coeffs == std::vector<Int>{1, 1});
    CHECK(parse_matrix(5, "[[2,1],[1,1]]") == m);
    CHECK_THROWS_AS(compose(5, {0, 0}), std::domain_error);
    CHECK_THROWS_AS(compose(5, {1}), std::domain_error);
}

TEST_CASE("matrix algebra") {
    SubstMatrix a = parse_matrix(5, "[[2,1],[1,1]]");
    CHECK(matrix_pow(a, 0) == SubstMatrix::identity(5, 2));
    CHECK(compact_matrix(matrix_pow(a, 3)) == "[[13,8],[8,5]]");
    CHECK(transpose(parse_matrix(4, "[[2,2],[1,2]]")) == parse_matrix(4, "[[2,1],[2,2]]"));
}

TEST_CASE("primitivity") {
    auto r = is_primitive(parse_matrix(5, "[[2,1],[1,1]]"));
    CHECK(r.primitive);
    CHECK(r.power == 1);
    CHECK_FALSE(is_primitive(parse_matrix(5, "[[1,0],[0,1]]")).primitive);
    CHECK_FALSE(is_primitive(parse_matrix(5, "[[0,1],[1,0]]")).primitive);
    // mu(8,3) only connects indices of one parity class.
    CHECK_FALSE(is_primitive(basis_matrix(8, 3)).primitive);
    CHECK_FALSE(lambda_criterion(8, mu(8, 3)));
}

TEST_CASE("minimal eigenvalues") {
    for (int n = 5; n <= 15; n += 2) CHECK(same_value(min_lambda(n), mu(n, 3) + DiagElem::integer(n, 1)));
    for (int n = 4; n <= 14; n += 2) CHECK(same_value(min_lambda(n), mu(n, 2) + DiagElem::integer(n, 2)));
    MinReport r = verify_min(7);
    CHECK(r.ok);
    int minima = 0;
    for (const auto& c : r.candidates) {
        if (c.is_minimum) {
            ++minima;
            CHECK(c.reasons.empty());
        } else {
            CHECK_FALSE(c.reasons.empty());
        }
    }
    CHECK(minima == 1);
}

TEST_CASE("area and frequency vectors") {
    for (int n = 4; n <= 12; ++n) {
        auto xa = area_vector(n);
        auto xf = frequency_vector(n);
        CHECK(static_cast<int>(xa.size()) == n / 2);
        CHECK(static_cast<int>(xf.size()) == n / 2);
    }
}

TEST_CASE("l_min") {
    CHECK(l_min(7) == 3);
    CHECK(l_min(8) == 4);
    CHECK(l_min(9) == 3);
    CHECK(l_min(12) == 4);
}
