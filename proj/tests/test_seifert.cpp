#include "doctest.h"
#include "linkform/seifert.hpp"
#include "linkform/torsion.hpp"

using namespace linkform;

TEST_CASE("validate")
{
    CHECK(validate(make_seifert({{2, 1}, {3, 1}})).empty());
    auto v = validate(make_seifert({{4, 2}}));
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("gcd=2") != std::string::npos);
    v = validate(make_seifert({{1, 5}}));
    REQUIRE(!v.empty());
    CHECK(v[0].find("alpha<2") != std::string::npos);
    CHECK_THROWS_AS(require_valid(SeifertData{}), InvalidSeifertData);
}

TEST_CASE("euler_invariant")
{
    CHECK(euler_invariant(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}})) == -1);
    CHECK(euler_invariant(make_seifert({{3, 1}, {3, 1}, {3, -2}})) == 0);
}

TEST_CASE("reorder_at_prime")
{
    auto r = reorder_at_prime(make_seifert({{3, 1}, {9, 2}, {2, 1}}), 3);
    CHECK(r.data == make_seifert({{9, 2}, {3, 1}, {2, 1}}));
    CHECK(r.perm == std::vector<std::size_t>{1, 0, 2});
    auto s = make_seifert({{9, 2}, {3, 1}, {2, 1}});
    CHECK(reorder_at_prime(s, 3).perm == std::vector<std::size_t>{0, 1, 2});
    auto t = make_seifert({{4, 1}, {8, 3}, {2, 1}});
    CHECK(reorder_at_prime(t, 3).data == t);
}

TEST_CASE("fibre_sum and r_p")
{
    auto a = make_seifert({{3, 1}, {3, -1}});
    auto b = make_seifert({{5, 2}, {5, -2}});
    CHECK(fibre_sum(a, b) == make_seifert({{3, 1}, {3, -1}, {5, 2}, {5, -2}}));
    CHECK_THROWS(fibre_sum(a, SeifertData{}));
    auto nil = make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}});
    CHECK(r_p(nil, 2) == 4);
    CHECK(r_p(nil, 3) == 0);
    CHECK(r_p(make_seifert({{9, 7}, {3, -1}, {3, -1}}), 3) == 3);
}

TEST_CASE("presentation_matrix")
{
    auto p = presentation_matrix(make_seifert({{2, 1}, {2, 1}}));
    CHECK(p.relations == IntMatrix{{1, 1, 0}, {2, 0, 1}, {0, 2, 1}});
    CHECK(presentation_matrix(make_seifert({{5, 2}})).relations == IntMatrix{{1, 0}, {5, 2}});
    auto q = presentation_matrix(make_seifert({{3, 1}, {3, 1}, {3, -2}}));
    CHECK(q.relations.size() == 4);
    CHECK(q.relations[0].size() == 4);
}

TEST_CASE("smith_normal_form")
{
    auto f = smith_normal_form({{2, 0}, {0, 3}});
    CHECK(f.diagonal == std::vector<Integer>{1, 6});
    CHECK(smith_normal_form(identity_matrix(3)).diagonal == std::vector<Integer>{1, 1, 1});
    CHECK(smith_normal_form({{0, 0}, {0, 0}}).diagonal == std::vector<Integer>{0, 0});
}

TEST_CASE("smith_normal_form property: U A V is the diagonal")
{
    IntMatrix a{{4, 6, -2}, {2, 8, 10}, {0, 3, 9}, {7, 1, 5}};
    auto f = smith_normal_form(a);
    auto d = multiply(multiply(f.left, a), f.right);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d[i].size(); ++j)
            CHECK(d[i][j] == (i == j && i < f.diagonal.size() ? f.diagonal[i] : Integer(0)));
    for (std::size_t i = 1; i < f.diagonal.size(); ++i)
        if (f.diagonal[i - 1] != 0) CHECK(f.diagonal[i] % f.diagonal[i - 1] == 0);
}

TEST_CASE("local_orders")
{
    auto nil = local_orders(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}), 2);
    REQUIRE(nil.generators.size() == 3);
    CHECK(nil.generators[0].label == "q3'");
    CHECK(nil.generators[0].order == 2);
    CHECK(nil.generators[1].order == 2);
    CHECK(nil.generators[2].label == "s");
    CHECK(nil.generators[2].order == 4);

    auto six = local_orders(make_seifert({{9, 1}, {9, 1}, {9, 1}, {9, -1}, {9, -1}, {9, -1}}), 3);
    REQUIRE(six.generators.size() == 4);
    for (auto& g : six.generators) CHECK(g.order == 9);

    auto sph = local_orders(make_seifert({{9, 7}, {3, -1}, {3, -1}}), 3);
    REQUIRE(sph.generators.size() == 2);
    CHECK(sph.generators[0].order == 3);
    CHECK(sph.generators[1].order == 3);
}

TEST_CASE("structure_check")
{
    CHECK(structure_check(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}})).ok());
    auto r = structure_check(make_seifert({{9, 7}, {3, -1}, {3, -1}}));
    CHECK(r.ok());
    CHECK(r.free_rank_smith == 0);
    auto g1 = structure_check(make_seifert({{3, 1}, {3, 1}, {3, -2}}, 1));
    CHECK(g1.ok());
    CHECK(g1.free_rank_smith == 3);
}
