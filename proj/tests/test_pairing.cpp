#include "doctest.h"
#include "linkform/finite_form.hpp"
#include "linkform/pairing.hpp"

#include <functional>

using namespace linkform;

namespace {

HomogeneousComponent comp(long p, long k, IntMatrix m) { return {p, k, std::move(m)}; }

StandardForm sf(std::vector<Atom> atoms)
{
    StandardForm f{std::move(atoms)};
    f.sort();
    return f;
}

const SeifertData nil = make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}});

}  // namespace

TEST_CASE("Nil pairing classifies to Cyc(2,2,3) + E0(1)")
{
    auto rep = classify(gram_matrix(nil, 2));
    CHECK(rep.form == sf({Atom::cyc(2, 2, 3), Atom::e0(1)}));
    REQUIRE(rep.primes.size() == 1);
    REQUIRE(rep.primes[0].components.size() == 2);
    CHECK(rep.primes[0].components[0].component.k == 2);
    CHECK(rep.primes[0].components[0].component.rank() == 1);
    CHECK(rep.primes[0].components[1].component.k == 1);
    CHECK(rep.primes[0].components[1].component.rank() == 2);
}

TEST_CASE("block_diagonalize")
{
    auto g = to_gram(sf({Atom::cyc(3, 2, 1), Atom::cyc(3, 1, 1)}), 3);
    auto d = block_diagonalize(g);
    REQUIRE(d.components.size() == 2);
    CHECK(d.components[0].k == 2);
    CHECK(d.components[1].k == 1);

    auto h = to_gram(comp(5, 2, {{1, 3}, {3, 2}}));
    auto e = block_diagonalize(h);
    REQUIRE(e.components.size() == 1);
    CHECK(e.components[0].rank() == 2);
}

TEST_CASE("block_diagonalize property: components reassemble to an isomorphic pairing")
{
    auto g = gram_matrix(nil, 2);
    auto d = block_diagonalize(g);
    GramPairing sum;
    for (auto& c : d.components) sum = orthogonal_sum(sum, to_gram(c));
    CHECK(brute_force_isomorphic(g, sum).isomorphic);
}

TEST_CASE("parity")
{
    CHECK(parity(comp(2, 2, {{0, 1}, {1, 0}})) == Parity::Even);
    CHECK(parity(comp(2, 3, {{3}})) == Parity::Odd);
    CHECK(parity(comp(2, 2, {{2, 1}, {1, 2}})) == Parity::Even);
}

TEST_CASE("d_invariant")
{
    CHECK(d_invariant(comp(3, 1, {{1}})).is_square());
    CHECK_FALSE(d_invariant(comp(5, 1, {{1, 0}, {0, 2}})).is_square());
    CHECK_FALSE(d_invariant(comp(3, 1, {{0, 1}, {1, 0}})).is_square());
    CHECK_THROWS(d_invariant(comp(3, 1, {{3}})));
}

TEST_CASE("diagonalize_odd")
{
    auto a = diagonalize_odd(comp(2, 3, {{3}}));
    REQUIRE(a.size() == 1);
    CHECK(a[0] == Atom::cyc(2, 3, 3));

    // L = [[a,b],[b,d]], a odd -> a, d - b^2/a
    auto b = diagonalize_odd(comp(2, 3, {{3, 2}, {2, 5}}));
    REQUIRE(b.size() == 2);
    CHECK(b[0] == Atom::cyc(2, 3, 3));
    CHECK(b[1].a == mod(5 - 4 * inv_mod(3, 8), 8));

    auto c = diagonalize_odd(comp(3, 2, {{1, 3}, {3, 1}}));
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Atom::cyc(3, 2, 1));
    CHECK(c[1] == Atom::cyc(3, 2, 1));

    CHECK_THROWS(diagonalize_odd(comp(2, 2, {{0, 1}, {1, 0}})));
}

TEST_CASE("even_decompose and hyperbolic_test")
{
    CHECK(even_decompose(comp(2, 2, {{0, 1}, {1, 0}})) == std::make_pair<std::size_t, std::size_t>(1, 0));
    CHECK(even_decompose(comp(2, 2, {{2, 1}, {1, 2}})) == std::make_pair<std::size_t, std::size_t>(0, 1));
    CHECK(even_decompose(comp(2, 2, {{0, 1}, {1, 2}})) == std::make_pair<std::size_t, std::size_t>(1, 0));
    CHECK_THROWS(even_decompose(comp(2, 2, {{1}})));

    CHECK(hyperbolic_test(comp(3, 1, {{1, 0}, {0, 2}})));
    CHECK_FALSE(hyperbolic_test(comp(2, 2, {{2, 1}, {1, 2}})));
    CHECK_FALSE(hyperbolic_test(comp(2, 1, {{1}})));
}

TEST_CASE("t_count")
{
    auto t = t_count(make_seifert({{4, -1}, {4, 1}, {4, -1}, {4, 1}}));
    CHECK(t.t == 1);
    CHECK(t.rho == 2);
    CHECK(t.k == 2);
    CHECK(t_rule_hyperbolic(t.t, t.rho));
    CHECK(t_rule_hyperbolic(0, 8));
    CHECK_FALSE(t_rule_hyperbolic(0, 4));
    CHECK_FALSE(t_rule_hyperbolic(4, 4));
    CHECK_THROWS_AS(t_count(make_seifert({{4, 1}, {4, 1}, {4, 1}, {4, 1}})), DomainError);
}

TEST_CASE("t rule agrees with the Arf computation on constructed even matrices")
{
    // diagonal entries 0 mod 4 for i < t, 2 mod 4 otherwise; off-diagonal odd
    for (long rho = 2; rho <= 8; rho += 2)
        for (long t = 0; t <= rho; ++t) {
            IntMatrix L(rho, std::vector<Integer>(rho, 1));
            for (long i = 0; i < rho; ++i) L[i][i] = i < t ? 0 : 2;
            INFO("t=", t, " rho=", rho);
            CHECK(hyperbolic_test(comp(2, 2, L)) == t_rule_hyperbolic(t, rho));
        }
}

TEST_CASE("classify the alternating order-4 data as E0(2)")
{
    auto s = make_seifert({{4, -1}, {4, 1}, {4, -1}, {4, 1}});
    CHECK(classify(gram_matrix(s, 2)).form == sf({Atom::e0(2)}));
    CHECK(classify(GramPairing{}).form.empty());
}

TEST_CASE("predicted_d_invariant examples")
{
    auto s6 = make_seifert({{9, 1}, {9, 1}, {9, 1}, {9, -1}, {9, -1}, {9, -1}});
    auto d = predicted_d_invariant(s6, 3);
    REQUIRE(d);
    CHECK(d->is_square());
    auto comps = block_diagonalize(gram_matrix(s6, 3)).components;
    REQUIRE(comps.size() == 1);
    CHECK(d_invariant(comps[0]) == *d);

    auto sph = predicted_d_invariant(make_seifert({{9, 7}, {3, -1}, {3, -1}}), 3);
    REQUIRE(sph);
    CHECK(sph->is_square());
    CHECK_FALSE(predicted_d_invariant(make_seifert({{9, 7}, {3, -1}, {3, -1}}), 3, true)->is_square());
    CHECK_THROWS_AS(predicted_d_invariant(make_seifert({{9, 1}, {3, 1}, {9, -1}}), 3), DomainError);

    auto five = predicted_d_invariant(make_seifert({{5, 1}, {5, 2}, {5, -3}}), 5);
    REQUIRE(five);
    CHECK(five->is_square());
}

TEST_CASE("is_isomorphic examples")
{
    auto two_e1 = sf({Atom::e1(2), Atom::e1(2)});
    auto two_e0 = sf({Atom::e0(2), Atom::e0(2)});
    CHECK(is_isomorphic(two_e1, two_e0).isomorphic);
    CHECK_FALSE(is_isomorphic(sf({Atom::e0(1)}), sf({Atom::cyc(2, 1, 1), Atom::cyc(2, 1, 1)})).isomorphic);
    auto f = sf({Atom::cyc(2, 3, 5), Atom::cyc(2, 1, 1), Atom::cyc(3, 2, 2)});
    CHECK(is_isomorphic(f, f).isomorphic);
    CHECK(is_isomorphic(sf({Atom::cyc(3, 1, 1)}), sf({Atom::cyc(3, 1, 2)}), {.allow_negation = true}).isomorphic);
    CHECK_FALSE(is_isomorphic(sf({Atom::cyc(3, 1, 1)}), sf({Atom::cyc(3, 1, 2)})).isomorphic);
}

TEST_CASE("brute_force_isomorphic examples")
{
    CHECK_FALSE(brute_force_isomorphic(to_gram(sf({Atom::e0(2)}), 2), to_gram(sf({Atom::e1(2)}), 2)).isomorphic);
    GramPairing a = to_gram(StandardForm{{Atom::cyc(3, 1, 1), Atom::cyc(3, 1, 2)}}, 3);
    GramPairing b = to_gram(StandardForm{{Atom::cyc(3, 1, 2), Atom::cyc(3, 1, 1)}}, 3);
    auto r = brute_force_isomorphic(a, b);
    CHECK(r.isomorphic);
    CHECK(r.witness.size() == 2);

    auto e1 = to_gram(sf({Atom::e1(2), Atom::e1(2)}), 2);
    auto e0 = to_gram(sf({Atom::e0(2), Atom::e0(2)}), 2);
    auto w = brute_force_isomorphic(e1, e0);
    REQUIRE(w.isomorphic);
    // Witness preserves the pairing on generators.
    FiniteForm fa(e1, 1 << 10), fb(e0, 1 << 10);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(fb.pair(fb.index_of(w.witness[i]), fb.index_of(w.witness[j])) ==
                  fa.pair(fa.generator(i), fa.generator(j)));
    CHECK_THROWS_AS(brute_force_isomorphic(e1, e0, 16), OracleBoundExceeded);
}

namespace {

// Every atom list at prime p built from the given exponents and rank bound.
std::vector<StandardForm> all_forms(long p, const std::vector<long>& ks, std::size_t max_atoms)
{
    std::vector<Atom> pool;
    for (long k : ks) {
        if (p == 2) {
            long m = std::min<long>(1L << k, 8);
            for (long a = 1; a < m; a += 2) pool.push_back(Atom::cyc(2, k, a));
            pool.push_back(Atom::e0(k));
            if (k >= 2) pool.push_back(Atom::e1(k));
        } else {
            pool.push_back(Atom::cyc(p, k, 1));
            pool.push_back(Atom::cyc(p, k, least_nonresidue(p)));
        }
    }
    std::vector<StandardForm> out;
    std::vector<Atom> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!cur.empty()) out.push_back(sf(cur));
        if (cur.size() == max_atoms) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST_CASE("normal forms agree with brute-force isomorphism on homogeneous 2-adic forms")
{
    for (long k : {1, 2, 3}) {
        auto forms = all_forms(2, {k}, 3);
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (std::size_t j = i; j < forms.size(); ++j) {
                if (forms[i].group_order() != forms[j].group_order()) continue;
                if (forms[i].group_order() > 512) continue;
                auto ga = to_gram(forms[i], 2), gb = to_gram(forms[j], 2);
                if (ga.rank() != gb.rank()) continue;
                bool truth = brute_force_isomorphic(ga, gb, 512).isomorphic;
                INFO(forms[i].to_string(), " vs ", forms[j].to_string());
                CHECK((normalize(forms[i]) == normalize(forms[j])) == truth);
            }
    }
}

TEST_CASE("normal forms agree with brute-force isomorphism at odd p")
{
    for (long p : {3, 5}) {
        auto forms = all_forms(p, {1, 2}, 2);
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (std::size_t j = i; j < forms.size(); ++j) {
                if (forms[i].group_order() != forms[j].group_order()) continue;
                if (forms[i].group_order() > 1024) continue;
                auto ga = to_gram(forms[i], p), gb = to_gram(forms[j], p);
                bool truth = brute_force_isomorphic(ga, gb, 1024).isomorphic;
                INFO(forms[i].to_string(), " vs ", forms[j].to_string());
                CHECK((normalize(forms[i]) == normalize(forms[j])) == truth);
            }
    }
}

TEST_CASE("is_isomorphic is sound on inhomogeneous 2-adic forms")
{
    auto forms = all_forms(2, {1, 2}, 3);
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i; j < forms.size(); ++j) {
            if (forms[i].group_order() != forms[j].group_order() || forms[i].group_order() > 256) continue;
            auto ga = to_gram(forms[i], 2), gb = to_gram(forms[j], 2);
            bool truth = brute_force_isomorphic(ga, gb, 256).isomorphic;
            INFO(forms[i].to_string(), " vs ", forms[j].to_string());
            CHECK(is_isomorphic(forms[i], forms[j]).isomorphic == truth);
        }
}

TEST_CASE("classify property: classification is isomorphic to the input Gram")
{
    auto forms = all_forms(2, {1, 2, 3}, 2);
    for (auto& f : forms) {
        if (f.group_order() > 1024) continue;
        auto g = to_gram(f, 2);
        auto c = classify(g).form;
        INFO(f.to_string(), " -> ", c.to_string());
        CHECK(brute_force_isomorphic(g, to_gram(c, 2), 1024).isomorphic);
    }
}
