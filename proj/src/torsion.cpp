#include "linkform/torsion.hpp"

#include <algorithm>
#include <utility>

namespace linkform {

IntMatrix identity_matrix(std::size_t n)
{
    IntMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    IntMatrix c(n, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

Presentation presentation_matrix(const SeifertData& s)
{
    require_valid(s);
    std::size_t r = s.size();
    Presentation p;
    for (std::size_t i = 1; i <= r; ++i) p.generators.push_back("q" + std::to_string(i));
    p.generators.push_back("h");
    p.relations.assign(r + 1, std::vector<Integer>(r + 1, 0));
    for (std::size_t i = 0; i < r; ++i) p.relations[0][i] = 1;
    for (std::size_t i = 0; i < r; ++i) {
        p.relations[i + 1][i] = s.pairs[i].alpha;
        p.relations[i + 1][r] = s.pairs[i].beta;
    }
    return p;
}

namespace {

// Elimination with row transforms tracked in U and column transforms in V.
struct SmithWork {
    IntMatrix a, u, v;
    std::size_t rows, cols;

    void swap_rows(std::size_t i, std::size_t j)
    {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    }
    // row_i -= q * row_j
    void row_sub(std::size_t i, std::size_t j, const Integer& q)
    {
        for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
        for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
    }
    // col_i -= q * col_j
    void col_sub(std::size_t i, std::size_t j, const Integer& q)
    {
        for (std::size_t r = 0; r < rows; ++r) a[r][i] -= q * a[r][j];
        for (std::size_t r = 0; r < cols; ++r) v[r][i] -= q * v[r][j];
    }
    void negate_row(std::size_t i)
    {
        for (auto& x : a[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    }
};

Integer tdiv(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input)
{
    SmithWork w;
    w.a = input;
    w.rows = input.size();
    w.cols = w.rows ? input[0].size() : 0;
    w.u = identity_matrix(w.rows);
    w.v = identity_matrix(w.cols);

    std::size_t n = std::min(w.rows, w.cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block.
            std::size_t pi = w.rows, pj = w.cols;
            for (std::size_t i = t; i < w.rows; ++i)
                for (std::size_t j = t; j < w.cols; ++j)
                    if (w.a[i][j] != 0 && (pi == w.rows || abs(w.a[i][j]) < abs(w.a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == w.rows) break;
            if (pi != t) w.swap_rows(pi, t);
            if (pj != t) w.swap_cols(pj, t);

            bool clean = true;
            for (std::size_t i = t + 1; i < w.rows; ++i) {
                if (w.a[i][t] == 0) continue;
                w.row_sub(i, t, tdiv(w.a[i][t], w.a[t][t]));
                if (w.a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < w.cols; ++j) {
                if (w.a[t][j] == 0) continue;
                w.col_sub(j, t, tdiv(w.a[t][j], w.a[t][t]));
                if (w.a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility of the trailing block by the pivot.
            std::size_t bad = w.rows;
            for (std::size_t i = t + 1; i < w.rows && bad == w.rows; ++i)
                for (std::size_t j = t + 1; j < w.cols; ++j)
                    if (w.a[i][j] % w.a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == w.rows) break;
            w.row_sub(t, bad, -1);
        }
        if (w.a[t][t] < 0) w.negate_row(t);
    }

    SmithForm f;
    for (std::size_t t = 0; t < n; ++t) f.diagonal.push_back(w.a[t][t]);
    f.left = std::move(w.u);
    f.right = std::move(w.v);
    return f;
}

std::vector<Integer> smith_p_orders(const SmithForm& f, const Integer& p)
{
    std::vector<Integer> out;
    for (const auto& d : f.diagonal) {
        if (d == 0) continue;
        long v = padic_val(d, p);
        if (v > 0) out.push_back(ipow(p, v));
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

LocalDecomposition local_orders(const SeifertData& s, const Integer& p)
{
    require_valid(s);
    if (!is_prime(p)) throw DomainError("local_orders at non-prime " + p.get_str());
    LocalDecomposition out;
    out.prime = p;
    Rational eps = euler_invariant(s);

    if (s.size() == 1) {
        auto f = smith_normal_form(presentation_matrix(s).relations);
        for (const auto& o : smith_p_orders(f, p))
            out.generators.push_back({"h", o, padic_val(o, p)});
        out.free_rank = 0;
        out.via_smith = true;
        return out;
    }

    SeifertData t = reorder_at_prime(s, p).data;
    for (std::size_t i = 2; i < t.size(); ++i) {
        long v = padic_val(t.pairs[i].alpha, p);
        if (v > 0) out.generators.push_back({"q" + std::to_string(i + 1) + "'", ipow(p, v), v});
    }
    if (eps == 0) {
        out.free_rank = 1;
    } else {
        Rational a12e = Rational(t.pairs[0].alpha * t.pairs[1].alpha) * eps;
        long v = padic_val(a12e, p);
        if (v > 0) out.generators.push_back({"s", ipow(p, v), v});
    }
    return out;
}

StructureReport structure_check(const SeifertData& s)
{
    require_valid(s);
    StructureReport rep;
    auto f = smith_normal_form(presentation_matrix(s).relations);
    rep.free_rank_smith = 2 * static_cast<long>(s.genus);
    for (const auto& d : f.diagonal)
        if (d == 0) ++rep.free_rank_smith;
    rep.free_rank_predicted = 2 * static_cast<long>(s.genus) + (euler_invariant(s) == 0 ? 1 : 0);

    for (const auto& p : relevant_primes(s)) {
        auto smith = smith_p_orders(f, p);
        auto loc = local_orders(s, p);
        std::vector<Integer> local;
        for (const auto& g : loc.generators) local.push_back(g.order);
        std::sort(local.rbegin(), local.rend());
        rep.primes.push_back(p);
        rep.orders.push_back(local);
        if (smith != local) rep.discrepancies.push_back({p, smith, local});
    }
    return rep;
}

}  // namespace linkform
