#include "linkform/gram.hpp"

#include "linkform/finite_form.hpp"

namespace linkform {

Integer GramPairing::group_order() const
{
    Integer n = 1;
    for (const auto& o : orders) n *= o;
    return n;
}

long GramPairing::max_exponent() const
{
    long k = 0;
    for (const auto& o : orders) k = std::max(k, padic_val(o, prime));
    return k;
}

GramPairing orthogonal_sum(const GramPairing& a, const GramPairing& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.prime != b.prime) throw DomainError("orthogonal sum of pairings at different primes");
    GramPairing out;
    out.prime = a.prime;
    out.labels = a.labels;
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    out.orders = a.orders;
    out.orders.insert(out.orders.end(), b.orders.begin(), b.orders.end());
    std::size_t n = out.orders.size(), na = a.rank();
    out.gram.assign(n, std::vector<QmodZ>(n));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) out.gram[i][j] = a.gram[i][j];
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) out.gram[na + i][na + j] = b.gram[i][j];
    return out;
}

GramPairing negate(const GramPairing& g)
{
    GramPairing out = g;
    for (auto& row : out.gram)
        for (auto& x : row) x = -x;
    return out;
}

GramPairing gram_matrix(const SeifertData& s, const Integer& p,
                        const std::optional<std::pair<Integer, Integer>>& bezout)
{
    require_valid(s);
    if (s.size() < 2) throw Unsupported("linking pairing from Seifert data needs r >= 2");
    auto loc = local_orders(s, p);
    const SeifertData t = reorder_at_prime(s, p).data;
    const Rational eps = euler_invariant(s);

    auto alpha = [&](std::size_t i) { return Rational(t.pairs[i - 1].alpha); };
    auto beta = [&](std::size_t i) { return Rational(t.pairs[i - 1].beta); };

    Integer n;
    if (bezout) {
        if (bezout->first * t.pairs[1].alpha + bezout->second * t.pairs[1].beta != 1)
            throw DomainError("supplied pair is not a Bezout pair for (alpha_2, beta_2)");
        n = bezout->second;
    } else {
        n = ext_gcd(t.pairs[1].alpha, t.pairs[1].beta).n;
    }

    // Generator index in the reordered data: q_i' -> i, s -> 0.
    std::vector<std::size_t> idx;
    GramPairing g;
    g.prime = p;
    for (const auto& gen : loc.generators) {
        g.labels.push_back(gen.label);
        g.orders.push_back(gen.order);
        idx.push_back(gen.label == "s" ? 0 : std::stoul(gen.label.substr(1)));
    }

    const Rational a2 = alpha(2), b2 = beta(2);
    auto value = [&](std::size_t i, std::size_t j) -> Rational {
        if (i == 0 && j == 0) {
            const Rational a1 = alpha(1);
            return -(a1 + Rational(n) * a1 * a2 * eps) / (a1 * a2 * a2 * eps);
        }
        if (i == 0 || j == 0) {
            std::size_t q = i == 0 ? j : i;
            return beta(q) / alpha(q);
        }
        if (i == j) return -b2 * beta(i) * (alpha(i) * b2 + a2 * beta(i)) / (alpha(i) * alpha(i));
        return -b2 * beta(i) * beta(j) * a2 / (alpha(i) * alpha(j));
    };

    std::size_t m = idx.size();
    g.gram.assign(m, std::vector<QmodZ>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            QmodZ v = QmodZ(value(idx[a], idx[b])).p_part(p);
            g.gram[a][b] = v;
            g.gram[b][a] = v;
        }
    return g;
}

WellDefinedReport welldefined_check(const GramPairing& g, unsigned long brute_bound)
{
    WellDefinedReport rep;
    std::size_t n = g.rank();
    if (g.gram.size() != n || g.labels.size() != n) rep.violations.push_back("dimension mismatch");
    for (std::size_t i = 0; i < n && rep.ok(); ++i)
        if (g.gram[i].size() != n) rep.violations.push_back("dimension mismatch");
    if (!rep.ok()) return rep;

    for (std::size_t i = 0; i < n; ++i) {
        if (g.orders[i] <= 1 || padic_val(g.orders[i], g.prime) < 1 ||
            g.orders[i] != ipow(g.prime, padic_val(g.orders[i], g.prime)))
            rep.violations.push_back("order of " + g.labels[i] + " is not a nontrivial power of p");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(g.gram[i][j] == g.gram[j][i]))
                rep.violations.push_back("asymmetric at (" + g.labels[i] + "," + g.labels[j] + ")");
            if (!(g.gram[i][j] * g.orders[i]).is_zero())
                rep.violations.push_back("order(" + g.labels[i] + ")*l(" + g.labels[i] + "," + g.labels[j] +
                                         ") = " + (g.gram[i][j] * g.orders[i]).to_string() + " not in Z");
        }
    }
    if (!rep.ok() || n == 0) return rep;
    if (g.group_order() <= Integer(brute_bound)) {
        FiniteForm f(g, brute_bound);
        rep.nonsingularity_checked = true;
        if (!f.nonsingular()) rep.violations.push_back("singular: some nonzero element pairs trivially with all");
    }
    return rep;
}

}  // namespace linkform
