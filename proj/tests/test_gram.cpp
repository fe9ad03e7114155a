#include "doctest.h"
#include "linkform/gram.hpp"

using namespace linkform;

namespace {
QmodZ q(long a, long b) { return QmodZ(Rational(a, b)); }
}  // namespace

TEST_CASE("gram_matrix on the Nil data")
{
    auto g = gram_matrix(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}), 2);
    CHECK(g.labels == std::vector<std::string>{"q3'", "q4'", "s"});
    CHECK(g.orders == std::vector<Integer>{2, 2, 4});
    CHECK(g.gram[0][0] == q(0, 1));
    CHECK(g.gram[1][1] == q(0, 1));
    CHECK(g.gram[0][1] == q(1, 2));
    CHECK(g.gram[2][0] == q(1, 2));
    CHECK(g.gram[2][1] == q(1, 2));
    CHECK(g.gram[2][2] == q(3, 4));
    CHECK(welldefined_check(g).ok());
}

TEST_CASE("gram_matrix with six cone points of order 9")
{
    auto s = make_seifert({{9, 1}, {9, 1}, {9, 1}, {9, -1}, {9, -1}, {9, -1}});
    auto g = gram_matrix(s, 3);
    CHECK(g.orders == std::vector<Integer>{9, 9, 9, 9});
    CHECK(g.gram[0][0] == q(-2, 9));
    CHECK(g.gram[0][0] == q(7, 9));
    CHECK(g.gram[1][1] == q(0, 1));
    CHECK(g.gram[2][2] == q(0, 1));
    CHECK(g.gram[3][3] == q(0, 1));
    std::vector<long> b{1, -1, -1, -1};  // beta_3..beta_6
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(g.gram[i][j] == q(-b[i] * b[j], 9));
    CHECK(welldefined_check(g).ok());
}

TEST_CASE("gram_matrix trivial and unsupported cases")
{
    auto g = gram_matrix(make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}}), 5);
    CHECK(g.empty());
    CHECK(welldefined_check(g).ok());
    CHECK_THROWS_AS(gram_matrix(make_seifert({{5, 2}}), 5), Unsupported);
}

TEST_CASE("gram_matrix with a supplied Bezout pair")
{
    auto s = make_seifert({{2, 1}, {2, 1}, {2, 1}, {2, -1}});
    CHECK(gram_matrix(s, 2, std::make_pair(Integer(0), Integer(1))) == gram_matrix(s, 2));
    CHECK_THROWS_AS(gram_matrix(s, 2, std::make_pair(Integer(1), Integer(1))), DomainError);
}

TEST_CASE("welldefined_check rejects bad values")
{
    GramPairing g;
    g.prime = 2;
    g.labels = {"x", "y"};
    g.orders = {2, 2};
    g.gram = {{q(0, 1), q(1, 3)}, {q(1, 3), q(0, 1)}};
    CHECK_FALSE(welldefined_check(g).ok());

    GramPairing singular;
    singular.prime = 2;
    singular.labels = {"x"};
    singular.orders = {2};
    singular.gram = {{q(0, 1)}};
    auto r = welldefined_check(singular);
    CHECK(r.nonsingularity_checked);
    CHECK_FALSE(r.ok());
}
