#include "doctest.h"
#include "linkform/arith.hpp"

using namespace linkform;

TEST_CASE("padic_val")
{
    CHECK(padic_val(Rational(18), 3) == 2);
    CHECK(padic_val(Rational(1), 5) == 0);
    CHECK(padic_val(Rational(-1, 9), 3) == -2);
    CHECK_THROWS_AS(padic_val(Rational(0), 3), DomainError);
}

TEST_CASE("unit_part")
{
    CHECK(unit_part(Rational(18), 3) == 2);
    CHECK(unit_part(Rational(-1, 9), 3) == -1);
    CHECK(unit_part(Rational(12), 2) == 3);
    CHECK_THROWS_AS(unit_part(Rational(0), 2), DomainError);
}

TEST_CASE("square_class")
{
    CHECK(square_class(Rational(4), 5).is_square());
    CHECK(square_class(Rational(-6), 5).is_square());
    CHECK(square_class(Rational(3), 2).value() == 3);
    CHECK_FALSE(square_class(Rational(2), 5).is_square());
    CHECK_THROWS_AS(square_class(Rational(10), 5), DomainError);
    CHECK(square_class(Rational(3, 5), 2).value() == 7);
}

TEST_CASE("square classes agree with enumeration of squares")
{
    for (long p : {3, 5, 7, 11, 13}) {
        std::vector<bool> sq(p, false);
        for (long x = 1; x < p; ++x) sq[(x * x) % p] = true;
        for (long u = 1; u < p; ++u) CHECK(square_class(Rational(u), p).is_square() == sq[u]);
        CHECK(!sq[least_nonresidue(p).get_si()]);
    }
}

TEST_CASE("ext_gcd canonical choice")
{
    auto b = ext_gcd(2, 1);
    CHECK(b.g == 1);
    CHECK(b.m == 0);
    CHECK(b.n == 1);
    b = ext_gcd(9, 7);
    CHECK(b.m == -3);
    CHECK(b.n == 4);
    b = ext_gcd(6, 0);
    CHECK(b.g == 6);
    CHECK(b.m == 1);
    CHECK(b.n == 0);
    CHECK_THROWS_AS(ext_gcd(0, 0), DomainError);
}

TEST_CASE("ext_gcd property: Bezout identity with minimal |n|")
{
    for (long a = -12; a <= 12; ++a)
        for (long c = -12; c <= 12; ++c) {
            if (a == 0 && c == 0) continue;
            auto r = ext_gcd(a, c);
            CHECK(r.m * a + r.n * c == r.g);
            CHECK(r.g > 0);
            for (long n = -30; n <= 30; ++n) {
                if (c == 0 || std::abs(n) >= Integer(abs(r.n)).get_si()) continue;
                // no solution with smaller |n|
                Integer rest = r.g - Integer(n) * c;
                CHECK((a == 0 ? rest != 0 : rest % a != 0));
            }
        }
}

TEST_CASE("QmodZ canonical representative and p-part")
{
    QmodZ x(Rational(-1, 4));
    CHECK(x.value() == Rational(3, 4));
    CHECK((x + QmodZ(Rational(1, 4))).is_zero());
    QmodZ y(Rational(1, 6));
    CHECK((y.p_part(2) + y.p_part(3)) == y);
    CHECK(y.p_part(2).value().get_den() == 2);
    CHECK(y.p_part(3).value().get_den() == 3);
    CHECK(y.p_part(5).is_zero());
}

TEST_CASE("rational parsing and formatting")
{
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(2)) == "2");
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("1/0"));
}
