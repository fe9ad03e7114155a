#include "doctest.h"
#include "linkform/witt.hpp"

#include <numeric>

using namespace linkform;

namespace {

StandardForm sf(std::vector<Atom> atoms)
{
    StandardForm f{std::move(atoms)};
    f.sort();
    return f;
}

}  // namespace

TEST_CASE("witt_cyclic")
{
    CHECK(witt_cyclic(3, 2, 1).is_zero());
    auto two = witt_cyclic(2, 1, 1);
    CHECK(two.order() == 2);
    auto three = witt_cyclic(3, 1, 1);
    CHECK(three.order() == 4);
    CHECK_THROWS_AS(witt_cyclic(3, 1, 6), DomainError);
    CHECK(witt_cyclic(3, 1, 2) == -three);
    CHECK(witt_cyclic(5, 1, 1).to_string() == "(1,0)");
    CHECK(witt_cyclic(5, 3, 2).to_string() == "(0,1)");
}

TEST_CASE("witt_rational")
{
    auto w = witt_rational(Rational(1, 6));
    CHECK(w.parts.count(2) == 1);
    CHECK(w.parts.count(3) == 1);
    CHECK(witt_rational(Rational(1, 9)).is_zero());
    CHECK(witt_rational(Rational(5)).is_zero());
    CHECK_THROWS_AS(witt_rational(Rational(0)), DomainError);
}

TEST_CASE("witt_rational property: CRT split matches the restricted pairing")
{
    for (long a = 2; a <= 60; ++a)
        for (long b = -5; b <= 5; ++b) {
            if (b == 0 || std::gcd(a, b) != 1) continue;
            auto w = witt_rational(Rational(b, a));
            // Restriction of l_{b/a} to the p-subgroup generated by a/p^v.
            WittElement expect;
            for (auto& p : prime_divisors(a)) {
                long v = padic_val(Integer(a), p);
                Integer pv = ipow(p, v);
                Integer gen = a / pv;
                Rational self = Rational(b) * Rational(gen * gen) / Rational(a);
                self.canonicalize();
                Integer num = mod(self.get_num(), pv);  // self = num / p^v
                expect.add(witt_cyclic(p, v, num));
            }
            CHECK(w == expect);
        }
}

TEST_CASE("witt_pairing")
{
    CHECK(witt_pairing(sf({Atom::e0(2)})).is_zero());
    CHECK(witt_pairing(sf({Atom::e1(2)})).is_zero());
    auto c = Atom::cyc(3, 1, 1);
    CHECK(witt_pairing(sf({c, c, c, c})).is_zero());
    CHECK_FALSE(witt_pairing(sf({c, c})).is_zero());
}

TEST_CASE("witt_seifert examples")
{
    auto s = make_seifert({{3, 1}, {3, 1}, {3, -2}});
    auto expect = -(witt_rational(Rational(1, 3)) + witt_rational(Rational(1, 3)) + witt_rational(Rational(-2, 3)));
    CHECK(witt_seifert(s) == expect);
    CHECK(witt_seifert(s) == witt_pairing(classify(gram_matrix(s, 3)).form));

    auto t = make_seifert({{9, -4}, {3, 1}});
    CHECK(witt_seifert(t) == -witt_rational(Rational(1, 3)));

    // eps = 0 and r_p odd: nontrivial
    auto u = make_seifert({{5, 1}, {5, 2}, {5, -3}});
    CHECK_FALSE(witt_seifert(u).is_zero());
}

TEST_CASE("witt_seifert additivity under fibre sum with eps = 0")
{
    auto a = make_seifert({{3, 1}, {3, 1}, {3, -2}});
    auto b = make_seifert({{5, 1}, {5, 2}, {5, -3}});
    auto c = make_seifert({{4, 1}, {4, -1}, {2, 1}, {2, -1}});
    CHECK(witt_seifert(fibre_sum(a, b)) == witt_seifert(a) + witt_seifert(b));
    CHECK(witt_seifert(fibre_sum(b, c)) == witt_seifert(b) + witt_seifert(c));
}

TEST_CASE("Witt group laws")
{
    for (long p : {2, 3, 5, 7, 13}) {
        auto all = LocalWitt::all(p);
        CHECK(all.size() == (p == 2 ? 2u : 4u));
        for (auto& x : all) {
            CHECK((x + LocalWitt::zero(p)) == x);
            CHECK((x + -x).is_zero());
            int ord = 1;
            for (auto y = x; !y.is_zero(); y = y + x) ++ord;
            CHECK(ord == x.order());
            CHECK(LocalWitt::parse(p, x.to_string()) == x);
            for (auto& y : all) {
                CHECK((x + y) == (y + x));
                for (auto& z : all) CHECK(((x + y) + z) == (x + (y + z)));
            }
        }
    }
    CHECK(witt_cyclic(7, 1, 1).order() == 4);
    CHECK(witt_cyclic(13, 1, 1).order() == 2);
}

TEST_CASE("metabolic_oracle examples")
{
    auto e0 = metabolic_oracle(to_gram(sf({Atom::e0(1)}), 2));
    CHECK(e0.metabolic);
    CHECK(e0.generators.size() == 1);
    auto h = metabolic_oracle(to_gram(sf({Atom::cyc(2, 1, 1), Atom::cyc(2, 1, 1)}), 2));
    CHECK(h.metabolic);
    REQUIRE(h.generators.size() == 1);
    CHECK(h.generators[0] == std::vector<std::uint32_t>{1, 1});
    CHECK_FALSE(metabolic_oracle(to_gram(sf({Atom::cyc(3, 1, 1)}), 3)).metabolic);
    CHECK(metabolic_oracle(to_gram(sf({Atom::e1(2)}), 2)).metabolic);
    CHECK_THROWS_AS(metabolic_oracle(to_gram(sf({Atom::e1(2)}), 2), 8), OracleBoundExceeded);
}

TEST_CASE("metabolic_oracle certifies the Witt classes of atoms")
{
    std::vector<StandardForm> forms;
    for (long p : {2, 3, 5, 7})
        for (long k = 1; k <= 3; ++k) {
            long top = p == 2 ? std::min(1L << k, 8L) : p;
            for (long a = 1; a < top; ++a)
                if (a % p) forms.push_back(sf({Atom::cyc(p, k, a)}));
        }
    for (long k = 1; k <= 3; ++k) forms.push_back(sf({Atom::e0(k)}));
    for (long k = 2; k <= 3; ++k) forms.push_back(sf({Atom::e1(k)}));
    for (auto& f : forms) {
        INFO(f.to_string());
        auto p = f.atoms[0].p;
        bool zero = witt_pairing(f).is_zero();
        CHECK(metabolic_oracle(to_gram(f, p)).metabolic == zero);
        // f + (-f) is always metabolic
        if ((f.group_order() * f.group_order()) <= 65536) CHECK(metabolic_oracle(to_gram(f + negate(f), p)).metabolic);
    }
}

TEST_CASE("metabolic_oracle agrees with witt_pairing on small orthogonal sums")
{
    std::vector<Atom> pool{Atom::cyc(3, 1, 1), Atom::cyc(3, 1, 2), Atom::cyc(3, 2, 1)};
    for (auto& x : pool)
        for (auto& y : pool)
            for (auto& z : pool) {
                auto f = sf({x, y, z});
                if (f.group_order() > 4096) continue;
                INFO(f.to_string());
                CHECK(metabolic_oracle(to_gram(f, 3)).metabolic == witt_pairing(f).is_zero());
            }
    auto c = Atom::cyc(3, 1, 1);
    CHECK(metabolic_oracle(to_gram(sf({c, c, c, c}), 3)).metabolic);
    CHECK_FALSE(metabolic_oracle(to_gram(sf({c, c}), 3)).metabolic);
}

TEST_CASE("split_metabolizer_oracle")
{
    CHECK(split_metabolizer_oracle(to_gram(sf({Atom::e0(2)}), 2)).metabolic);
    CHECK_FALSE(split_metabolizer_oracle(to_gram(sf({Atom::e1(2)}), 2)).metabolic);
    CHECK(split_metabolizer_oracle(to_gram(sf({Atom::e1(2), Atom::e1(2)}), 2)).metabolic);
    CHECK_FALSE(split_metabolizer_oracle(to_gram(sf({Atom::e0(2), Atom::e1(2)}), 2)).metabolic);
}
