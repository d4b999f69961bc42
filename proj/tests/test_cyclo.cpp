#include <cmath>
#include <complex>

#include "cast/cyclo.hpp"
#include "doctest.h"

using namespace cast;

namespace {
std::complex<double> root_value(int n, long k) {
    return std::polar(1.0, M_PI * static_cast<double>(k) / n);
}
}  // namespace

TEST_CASE("roots embed on the unit circle") {
    for (int n : {3, 4, 5, 7, 12, 15})
        for (long k = -2 * n; k <= 2 * n; ++k) {
            auto z = embed(CycloInt::root(n, k));
            CHECK(std::abs(z - root_value(n, k)) < 1e-13);
        }
}

TEST_CASE("zeta^n = -1 and zeta^{2n} = 1") {
    for (int n = 2; n <= 20; ++n) {
        CHECK(equals(CycloInt::root(n, n), CycloInt::integer(n, -1)));
        CHECK(equals(CycloInt::root(n, 2 * n), CycloInt::integer(n, 1)));
    }
}

TEST_CASE("ring operations agree with complex arithmetic") {
    const int n = 7;
    CycloInt a(n, {3, -1, 0, 2, 0, 0, 1});
    CycloInt b(n, {0, 2, 5, 0, -4, 1, 0});
    auto za = embed(a), zb = embed(b);
    CHECK(std::abs(embed(a + b) - (za + zb)) < 1e-10);
    CHECK(std::abs(embed(a - b) - (za - zb)) < 1e-10);
    CHECK(std::abs(embed(a * b) - (za * zb)) < 1e-9);
    CHECK(std::abs(embed(conj(a)) - std::conj(za)) < 1e-10);
    CHECK(std::abs(embed(rotate(a, 3)) - za * root_value(n, 3)) < 1e-10);
    CHECK(std::abs(embed(norm_sq(a)).real() - std::norm(za)) < 1e-9);
    CHECK(is_real(norm_sq(a)));
}

TEST_CASE("equality modulo the cyclotomic polynomial") {
    // For n = 6 (order 12), Phi_12 = x^4 - x^2 + 1, so x^4 = x^2 - 1.
    CycloInt lhs = CycloInt::root(6, 4);
    CycloInt rhs = CycloInt::root(6, 2) - CycloInt::integer(6, 1);
    CHECK(equals(lhs, rhs));
    CHECK(canonical(lhs) == canonical(rhs));
    CHECK(point_key(lhs) == point_key(rhs));
    CHECK(is_zero(lhs - rhs));
}

TEST_CASE("cyclotomic polynomials and totient") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(10) == 4);
    CHECK(euler_phi(24) == 8);
    for (int m = 1; m <= 60; ++m)
        CHECK(static_cast<int>(cyclotomic_poly(m).size()) - 1 == euler_phi(m));
    // Phi_10 = x^4 - x^3 + x^2 - x + 1
    std::vector<Int> p10 = {1, -1, 1, -1, 1};
    CHECK(cyclotomic_poly(10) == p10);
}

TEST_CASE("rational integers are recognised") {
    Int v;
    CycloInt two_cos = CycloInt::root(3, 1) + CycloInt::root(3, -1);  // 2 cos(pi/3) = 1
    CHECK(as_rational_integer(two_cos, &v));
    CHECK(v == 1);
    CHECK_FALSE(as_rational_integer(CycloInt::root(5, 1) + CycloInt::root(5, -1)));
}

TEST_CASE("exact division") {
    const int n = 5;
    CycloInt a(n, {1, 2, 0, -1, 3});
    CycloInt b(n, {2, 0, 1, 0, 0});
    auto q = exact_div(a * b, b);
    REQUIRE(q.has_value());
    CHECK(equals(*q, a));
    CHECK_FALSE(exact_div(CycloInt::integer(n, 1), CycloInt::integer(n, 2)).has_value());
}

TEST_CASE("exact signs of real and imaginary parts") {
    const int n = 5;
    CycloInt phi = CycloInt::root(n, 1) + CycloInt::root(n, -1);  // golden ratio
    CHECK(sign_real(phi - CycloInt::integer(n, 1)) > 0);
    CHECK(sign_real(phi - CycloInt::integer(n, 2)) < 0);
    CHECK(sign_imag(phi) == 0);
    CHECK(sign_imag(CycloInt::root(n, 1)) > 0);
    CHECK(sign_imag(CycloInt::root(n, 6)) < 0);
}

TEST_CASE("fixed-point embedding rounds half to even") {
    CycloInt half_ish = CycloInt::integer(4, 1);
    auto xy = embed_fixed(half_ish, 3);
    CHECK(xy.first == "1.000");
    CHECK(xy.second == "0.000");
    auto r = embed_fixed(CycloInt::root(4, 1), 6);  // (cos 45, sin 45)
    CHECK(r.first == "0.707107");
    CHECK(r.second == "0.707107");
}
