#include <cmath>

#include "cast/diag.hpp"
#include "doctest.h"

using namespace cast;

namespace {
double mu_value(int n, int k) { return std::sin(k * M_PI / n) / std::sin(M_PI / n); }
}  // namespace

TEST_CASE("diagonal values") {
    for (int n = 4; n <= 25; ++n)
        for (int k = 1; k <= n / 2; ++k) CHECK(std::abs(mu(n, k).value() - mu_value(n, k)) < 1e-12);
    CHECK(std::abs(mu(5, 2).value() - (1 + std::sqrt(5.0)) / 2) < 1e-14);
    CHECK(std::abs(mu(4, 2).value() - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("index reduction folds onto 1..floor(n/2)") {
    CHECK(reduce_index(7, 5) == 2);
    CHECK(reduce_index(7, 6) == 1);
    CHECK(reduce_index(8, 4) == 4);
    CHECK(same_value(mu(9, 7), mu(9, 2)));
}

TEST_CASE("products follow the numeric product") {
    for (int n : {5, 6, 7, 8, 11, 12})
        for (int h = 1; h <= n / 2; ++h)
            for (int k = 1; k <= n / 2; ++k) {
                DiagElem p = dpf_mul(mu(n, h), mu(n, k));
                CHECK(std::abs(p.value() - mu_value(n, h) * mu_value(n, k)) < 1e-10);
                CHECK(is_nonneg(p));
            }
}

TEST_CASE("powers and ring conversion") {
    DiagElem x = mu(7, 2) + DiagElem::integer(7, 1);
    DiagElem x3 = dpf_pow(x, 3);
    CHECK(std::abs(x3.value() - std::pow(x.value(), 3)) < 1e-9);
    auto back = from_real_cyclo(to_cyclo(x3));
    REQUIRE(back.has_value());
    CHECK(same_value(*back, x3));
}

TEST_CASE("rational integers in the diagonal ring") {
    Int v;
    CHECK(is_rational_integer(DiagElem::integer(9, 4), &v));
    CHECK(v == 4);
    // mu(6,3) = 2 is rational although it is a basis element.
    CHECK(is_rational_integer(mu(6, 3), &v));
    CHECK(v == 2);
    CHECK_FALSE(is_rational_integer(mu(7, 3)));
}

TEST_CASE("symbolic round trip") {
    DiagElem x(7, {3, 4, 2});
    CHECK(to_symbolic(x) == "2*mu(7,3)+4*mu(7,2)+3");
    auto y = parse_symbolic("2*mu(7,3)+4*mu(7,2)+3");
    REQUIRE(y.has_value());
    CHECK(same_value(*y, x));
    CHECK(to_symbolic(mu(5, 2) + DiagElem::integer(5, 1)) == "mu(5,2)+1");
    CHECK_FALSE(parse_symbolic("mu(7,").has_value());
}

TEST_CASE("parity classes and eventual fullness") {
    CHECK(classify(mu(8, 2)).set == Parity::Even);
    CHECK(classify(mu(8, 3)).set == Parity::Odd);
    CHECK(classify(mu(8, 2) + mu(8, 3)).set == Parity::Mixed);
    CHECK(eventually_full(mu(8, 2) + DiagElem::integer(8, 2)).ok);
    CHECK_FALSE(eventually_full(mu(8, 3)).ok);
    CHECK(parity_condition(mu(8, 2) + DiagElem::integer(8, 1)));
    CHECK_FALSE(parity_condition(mu(8, 3) + DiagElem::integer(8, 1)));
}

TEST_CASE("constant term") {
    // mu(7,3) = 1 + zeta^2 + conj(zeta^2): constant 1; mu(7,2) has none.
    CHECK(b0(mu(7, 3)) == 1);
    CHECK(b0(mu(7, 2)) == 0);
    CHECK(b0(mu(7, 3) + DiagElem::integer(7, 1)) == 2);
}
