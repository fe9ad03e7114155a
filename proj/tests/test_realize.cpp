#include "linkform/realize.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace linkform;

namespace {

Atom C(long p, long k, long a) { return Atom::cyc(p, k, a); }

StandardForm form(std::vector<Atom> atoms) { return StandardForm{std::move(atoms)}; }

bool contains(const std::vector<SeifertData>& list, SeifertData s)
{
    std::sort(s.pairs.begin(), s.pairs.end(), [](const SeifertPair& x, const SeifertPair& y) {
        return std::tie(x.alpha, x.beta) < std::tie(y.alpha, y.beta);
    });
    for (auto t : list) {
        std::sort(t.pairs.begin(), t.pairs.end(), [](const SeifertPair& x, const SeifertPair& y) {
            return std::tie(x.alpha, x.beta) < std::tie(y.alpha, y.beta);
        });
        if (t.pairs == s.pairs) return true;
    }
    return false;
}

void check_result(const RealizationResult& r, const StandardForm& target, RealizeMode mode)
{
    CHECK(r.verified);
    CHECK(realizes(r.seifert, target));
    CHECK(r.seifert.genus == 0);
    if (mode == RealizeMode::Flat) CHECK(euler_invariant(r.seifert) == 0);
    if (mode == RealizeMode::Sphere) CHECK(euler_invariant(r.seifert) != 0);
}

}  // namespace

TEST_CASE("mode names")
{
    CHECK(parse_mode("flat") == RealizeMode::Flat);
    CHECK(to_string(RealizeMode::Sphere) == "sphere");
    CHECK_THROWS_AS(parse_mode("round"), DomainError);
}

TEST_CASE("realizes on known data")
{
    CHECK(realizes(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}), form({C(2, 2, 3), Atom::e0(1)})));
    CHECK_FALSE(realizes(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}), form({C(2, 2, 1), Atom::e0(1)})));
    CHECK(realizes(make_seifert({{5, 1}, {5, 2}, {5, -3}}), form({C(5, 1, 1)})));
    CHECK_FALSE(realizes(make_seifert({{4, 1}, {2, 1}}), form({C(2, 1, 1)})));  // 3-torsion as well
}

TEST_CASE("odd flat")
{
    auto r = realize_odd_flat(form({C(5, 1, 1)}), 5);
    check_result(r, form({C(5, 1, 1)}), RealizeMode::Flat);
    for (const auto& p : r.seifert.pairs) CHECK(p.alpha == 5);

    for (long k : {1, 2}) {
        auto t = form({C(3, k, 1), C(3, k, 1)});
        auto s = realize_odd_flat(t, 3);
        check_result(s, t, RealizeMode::Flat);
        Integer big = ipow(3, k + 1), a = ipow(3, k);
        CHECK(s.seifert.pairs == std::vector<SeifertPair>{{big, 1}, {big, 5}, {a, -1}, {a, -1}});
    }

    auto multi = form({C(3, 3, 2), C(3, 2, 1), C(3, 2, 1), C(3, 1, 2)});
    check_result(realize_odd_flat(multi, 3), multi, RealizeMode::Flat);

    CHECK_THROWS_AS(realize_odd_flat(form({C(3, 1, 1), C(5, 1, 1)}), 3), DomainError);
    CHECK_THROWS_AS(realize_odd_flat(form({C(3, 1, 1)}), 2), DomainError);
}

TEST_CASE("odd sphere")
{
    auto t = form({C(3, 1, 1)});
    auto r = realize_odd_sphere(t);
    check_result(r, t, RealizeMode::Sphere);
    CHECK(r.seifert.size() == 2);
    CHECK(r.seifert.pairs == std::vector<SeifertPair>{{9, 2}, {3, -1}});
    CHECK(euler_invariant(r.seifert) == Rational(1, 9));

    // The orientation-reversed data realizes the negative.
    CHECK(realizes(make_seifert({{9, -4}, {3, 1}}), form({C(3, 1, 2)})));

    // eps = 1/alpha~ exactly.
    auto big = form({C(3, 2, 1), C(3, 1, 2), C(5, 1, 1)});
    auto rb = realize_odd_sphere(big);
    check_result(rb, big, RealizeMode::Sphere);
    CHECK(euler_invariant(rb.seifert) == Rational(1) / Rational(rb.seifert.pairs[0].alpha));

    // Alternative data for the homogeneous rank-2 square case has eps = -1/alpha~.
    for (long k : {1, 2}) {
        auto alt = make_seifert({{ipow(3, k + 1).get_si(), 7}, {ipow(3, k).get_si(), -1}, {ipow(3, k).get_si(), -1}});
        CHECK(realizes(alt, form({C(3, k, 1), C(3, k, 1)})));
        CHECK(euler_invariant(alt) == Rational(-1) / Rational(ipow(3, k + 1)));
    }

    CHECK_THROWS_AS(realize_odd_sphere(form({C(2, 1, 1)})), DomainError);
}

TEST_CASE("two-homogeneous")
{
    auto e0 = form({Atom::e0(2)});
    auto r = realize_two_homog(e0, RealizeMode::Flat);
    check_result(r, e0, RealizeMode::Flat);
    CHECK(r.seifert.pairs == std::vector<SeifertPair>{{4, -1}, {4, 1}, {4, -1}, {4, 1}});

    auto c233 = form({C(2, 3, 3)});
    auto s = realize_two_homog(c233, RealizeMode::Sphere);
    check_result(s, c233, RealizeMode::Sphere);
    CHECK(s.seifert.pairs == std::vector<SeifertPair>{{32, -3}, {8, 1}});
    CHECK(s.construction == "two-odd-sphere");
    CHECK(euler_invariant(s.seifert) == Rational(-1, 32));

    auto c211 = form({C(2, 1, 1)});
    auto f = realize_two_homog(c211, RealizeMode::Sphere);
    check_result(f, c211, RealizeMode::Sphere);
    CHECK(f.construction.rfind("search:", 0) == 0);
    check_result(realize_two_homog(c211, RealizeMode::Flat), c211, RealizeMode::Flat);

    for (long k = 1; k <= 3; ++k)
        for (auto mode : {RealizeMode::Flat, RealizeMode::Sphere}) {
            std::vector<StandardForm> targets{form({Atom::e0(k)}), form({Atom::e0(k), Atom::e0(k)}),
                                              form({C(2, k, 1), C(2, k, 3)}), form({C(2, k, 7)})};
            if (k >= 2) targets.push_back(form({Atom::e1(k)}));
            for (const auto& t : targets) {
                CAPTURE(t.to_string());
                check_result(realize_two_homog(t, mode), t, mode);
            }
        }
}

TEST_CASE("mixed")
{
    auto t = form({C(3, 1, 1), Atom::e0(2)});
    auto r = realize_mixed(t, RealizeMode::Flat);
    check_result(r, t, RealizeMode::Flat);
    std::vector<SeifertPair> tail(r.seifert.pairs.end() - 4, r.seifert.pairs.end());
    CHECK(tail == std::vector<SeifertPair>{{4, -1}, {4, 1}, {4, -1}, {4, 1}});
    check_result(realize_mixed(t, RealizeMode::Sphere), t, RealizeMode::Sphere);

    auto odd = form({C(5, 1, 2)});
    CHECK(realize_mixed(odd, RealizeMode::Flat).seifert == realize_odd_flat(odd, 5).seifert);
    CHECK_THROWS_AS(realize_mixed(form({Atom::e0(2), Atom::e0(1)}), RealizeMode::Flat), DomainError);
}

TEST_CASE("gap condition and gap realizations")
{
    std::string why;
    CHECK(gap_condition(form({C(2, 3, 3), C(2, 1, 1)})));
    CHECK(gap_condition(form({Atom::e0(3), C(2, 1, 1)})));
    CHECK_FALSE(gap_condition(form({Atom::e0(2), Atom::e0(1)}), &why));
    CHECK(why.find("even") != std::string::npos);
    CHECK_FALSE(gap_condition(form({C(2, 2, 1), C(2, 1, 1)}), &why));
    CHECK(why.find("less than 2") != std::string::npos);

    for (auto t : {form({C(2, 3, 3), C(2, 1, 1)}), form({Atom::e0(3), C(2, 1, 1)})})
        for (auto mode : {RealizeMode::Flat, RealizeMode::Sphere}) {
            CAPTURE(t.to_string());
            check_result(realize_gap(t, mode), t, mode);
        }
    CHECK_THROWS_AS(realize_gap(form({Atom::e0(2), Atom::e0(1)}), RealizeMode::Flat), Unrealizable);
    CHECK_THROWS_AS(realize(form({Atom::e0(2), Atom::e0(1)})), Unrealizable);
}

TEST_CASE("even component criterion")
{
    CHECK(even_component_criterion(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, -1}, {2, -1}, {2, -1}, {2, -1}})));
    CHECK_FALSE(even_component_criterion(make_seifert({{4, 1}, {4, 1}, {4, 1}, {4, 1}})));
    // Literal reading disagrees with the classification of the Nil data.
    auto nil = make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}});
    CHECK_FALSE(even_component_criterion(nil));
    auto f = classify(gram_matrix(nil, 2)).form;
    CHECK(std::count(f.atoms.begin(), f.atoms.end(), Atom::e0(1)) == 1);
    CHECK_FALSE(even_component_criterion(make_seifert({{3, 1}, {3, -1}})));
}

TEST_CASE("dispatch")
{
    auto triv = realize(StandardForm{});
    CHECK(triv.seifert == make_seifert({{2, 1}, {2, -1}}));
    CHECK(euler_invariant(realize(StandardForm{}, RealizeMode::Sphere).seifert) != 0);

    auto t = form({C(3, 1, 1), C(2, 3, 3), C(2, 1, 1)});
    check_result(realize(t, RealizeMode::Flat), t, RealizeMode::Flat);
    CHECK_THROWS_AS(realize(t, RealizeMode::Sphere), Unrealizable);
    auto a = realize(form({C(7, 1, 3)}));
    CHECK(euler_invariant(a.seifert) == 0);  // auto prefers flat
}

TEST_CASE("property: random round trips and orientation flip")
{
    std::mt19937_64 rng(7);
    const std::vector<long> primes{3, 5, 7};
    for (int trial = 0; trial < 40; ++trial) {
        StandardForm t;
        long p = primes[rng() % primes.size()];
        std::size_t n = 1 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i) t.atoms.push_back(C(p, 1 + rng() % 2, 1 + rng() % (p - 1)));
        if (rng() % 2) t.atoms.push_back(rng() % 2 ? Atom::e0(1 + rng() % 2) : C(2, 1 + rng() % 3, 1 + 2 * (rng() % 4)));
        for (auto mode : {RealizeMode::Flat, RealizeMode::Sphere}) {
            CAPTURE(t.to_string());
            auto r = realize(t, mode);
            check_result(r, t, mode);
            CHECK(realizes(reverse_orientation(r.seifert), negate(t)));
        }
    }
}

TEST_CASE("exhaustive search")
{
    SearchBounds small;
    small.max_r = 3;
    auto triv = exhaustive_search(StandardForm{}, small);
    CHECK(contains(triv, make_seifert({{2, 1}, {2, -1}})));
    for (const auto& s : triv) CHECK(realizes(s, StandardForm{}));

    SearchBounds four;
    four.max_r = 4;
    four.alphas = {2};
    auto nil_form = form({C(2, 2, 3), Atom::e0(1)});
    auto hits = exhaustive_search(nil_form, four);
    auto neg = exhaustive_search(negate(nil_form), four);
    CHECK((contains(hits, make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}})) ||
           contains(neg, make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}))));

    CHECK(exhaustive_search(form({Atom::e0(2), Atom::e0(1)}), four).empty());
    CHECK_THROWS_AS(exhaustive_search(form({C(3, 1, 1)}), four), DomainError);
}
