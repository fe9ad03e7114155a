#include "linkform/pairing.hpp"

#include "linkform/finite_form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace linkform {

// ---------------------------------------------------------------- atoms

static Integer atom_modulus(const Integer& p, long k)
{
    if (p == 2) return ipow(2, static_cast<unsigned long>(std::min<long>(k, 3)));
    return ipow(p, static_cast<unsigned long>(k));
}

Atom Atom::cyc(const Integer& p, long k, const Integer& a)
{
    if (!is_prime(p)) throw DomainError("Cyc atom at non-prime " + p.get_str());
    if (k < 1) throw DomainError("Cyc atom needs k >= 1");
    if (a % p == 0) throw DomainError("Cyc atom value must be a unit mod p");
    Atom x;
    x.kind = Kind::Cyc;
    x.p = p;
    x.k = k;
    x.a = mod(a, atom_modulus(p, k));
    return x;
}

Atom Atom::e0(long k)
{
    if (k < 1) throw DomainError("E0 needs k >= 1");
    Atom x;
    x.kind = Kind::E0;
    x.k = k;
    x.a = 0;
    return x;
}

Atom Atom::e1(long k)
{
    if (k < 2) throw DomainError("E1 needs k >= 2");
    Atom x;
    x.kind = Kind::E1;
    x.k = k;
    x.a = 0;
    return x;
}

std::string Atom::to_string() const
{
    switch (kind) {
    case Kind::Cyc: return "Cyc(" + p.get_str() + "," + std::to_string(k) + "," + a.get_str() + ")";
    case Kind::E0: return "E0(" + std::to_string(k) + ")";
    case Kind::E1: return "E1(" + std::to_string(k) + ")";
    }
    return "?";
}

bool atom_less(const Atom& x, const Atom& y)
{
    if (x.p != y.p) return x.p < y.p;
    if (x.k != y.k) return x.k > y.k;
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    return x.a < y.a;
}

void StandardForm::sort() { std::sort(atoms.begin(), atoms.end(), atom_less); }

std::vector<Integer> StandardForm::primes() const
{
    std::set<Integer> ps;
    for (const auto& a : atoms) ps.insert(a.p);
    return {ps.begin(), ps.end()};
}

StandardForm StandardForm::at_prime(const Integer& p) const
{
    StandardForm f;
    for (const auto& a : atoms)
        if (a.p == p) f.atoms.push_back(a);
    return f;
}

Integer StandardForm::group_order() const
{
    Integer n = 1;
    for (const auto& a : atoms) {
        Integer pk = ipow(a.p, static_cast<unsigned long>(a.k));
        n *= a.kind == Atom::Kind::Cyc ? pk : pk * pk;
    }
    return n;
}

std::string StandardForm::to_string() const
{
    if (atoms.empty()) return "0";
    std::string out;
    for (const auto& a : atoms) out += (out.empty() ? "" : " + ") + a.to_string();
    return out;
}

StandardForm operator+(const StandardForm& a, const StandardForm& b)
{
    StandardForm f = a;
    f.atoms.insert(f.atoms.end(), b.atoms.begin(), b.atoms.end());
    f.sort();
    return f;
}

StandardForm negate(const StandardForm& f)
{
    StandardForm out;
    for (const auto& a : f.atoms) {
        if (a.kind == Atom::Kind::Cyc) out.atoms.push_back(Atom::cyc(a.p, a.k, -a.a));
        else out.atoms.push_back(a);  // -E0 = E0; -E1 = E1
    }
    out.sort();
    return out;
}

GramPairing to_gram(const StandardForm& f, const Integer& p)
{
    GramPairing g;
    g.prime = p;
    std::vector<std::pair<Integer, IntMatrix>> blocks;  // (order, numerators over order)
    for (const auto& a : f.atoms) {
        if (a.p != p) continue;
        Integer pk = ipow(p, static_cast<unsigned long>(a.k));
        switch (a.kind) {
        case Atom::Kind::Cyc: blocks.push_back({pk, {{a.a}}}); break;
        case Atom::Kind::E0: blocks.push_back({pk, {{0, 1}, {1, 0}}}); break;
        case Atom::Kind::E1: blocks.push_back({pk, {{2, 1}, {1, 2}}}); break;
        }
    }
    std::size_t n = 0;
    for (auto& b : blocks) n += b.second.size();
    g.gram.assign(n, std::vector<QmodZ>(n));
    std::size_t at = 0;
    for (auto& [pk, m] : blocks) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            g.orders.push_back(pk);
            g.labels.push_back("x" + std::to_string(at + i + 1));
            for (std::size_t j = 0; j < m.size(); ++j) g.gram[at + i][at + j] = QmodZ(make_rational(m[i][j], pk));
        }
        at += m.size();
    }
    return g;
}

GramPairing to_gram(const HomogeneousComponent& c)
{
    GramPairing g;
    g.prime = c.p;
    Integer pk = c.modulus();
    std::size_t n = c.rank();
    g.gram.assign(n, std::vector<QmodZ>(n));
    for (std::size_t i = 0; i < n; ++i) {
        g.orders.push_back(pk);
        g.labels.push_back("e" + std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j) g.gram[i][j] = QmodZ(make_rational(c.matrix[i][j], pk));
    }
    return g;
}

// ---------------------------------------------------------------- splitting

namespace {

using Vec = std::vector<Integer>;

// Bilinear form scaled to Z/p^K on vectors of generator coefficients.
struct FormWork {
    Integer p;
    long K = 0;
    Integer P;
    IntMatrix G;
    std::vector<Integer> ord;

    Integer pair(const Vec& x, const Vec& y) const
    {
        Integer acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * G[i][j] * y[j];
        }
        return mod(acc, P);
    }
    Vec reduce(Vec x) const
    {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], ord[i]);
        return x;
    }
    // y - c*x
    Vec axpy(const Vec& y, const Integer& c, const Vec& x) const
    {
        Vec z = y;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= c * x[i];
        return reduce(z);
    }
};

FormWork work_from_gram(const GramPairing& g)
{
    FormWork w;
    w.p = g.prime;
    w.K = g.max_exponent();
    w.P = ipow(g.prime, static_cast<unsigned long>(w.K));
    w.ord = g.orders;
    std::size_t n = g.rank();
    w.G.assign(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = g.gram[i][j].value() * Rational(w.P);
            if (v.get_den() != 1) throw SingularPairing("pairing value with denominator beyond the group exponent");
            w.G[i][j] = mod(v.get_num(), w.P);
        }
    return w;
}

FormWork work_from_component(const HomogeneousComponent& c)
{
    FormWork w;
    w.p = c.p;
    w.K = c.k;
    w.P = c.modulus();
    w.ord.assign(c.rank(), w.P);
    w.G = c.matrix;
    for (auto& row : w.G)
        for (auto& x : row) x = mod(x, w.P);
    return w;
}

struct Piece {
    long k;
    std::vector<Vec> vecs;
};

// Orthogonal splitting into rank-1 pieces and (p = 2) rank-2 even pieces.
// With diagonal_only, even 2-adic blocks are merged into a previously split
// odd vector so that only rank-1 pieces are produced.
std::vector<Piece> split_form(const FormWork& w, std::vector<Vec> basis, std::vector<long> exps, bool diagonal_only)
{
    std::vector<Piece> out;
    std::vector<std::size_t> rem(basis.size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = i;
    const bool two = w.p == 2;

    auto erase = [&](std::size_t idx) { rem.erase(std::find(rem.begin(), rem.end(), idx)); };

    while (!rem.empty()) {
        long k = 0;
        for (auto i : rem) k = std::max(k, exps[i]);
        const Integer shift = ipow(w.p, static_cast<unsigned long>(w.K - k));
        const Integer pk = ipow(w.p, static_cast<unsigned long>(k));
        auto scaled = [&](const Integer& b) {
            if (b % shift != 0) throw SingularPairing("pairing value exceeds the order of its arguments");
            return mod(b / shift, pk);
        };
        auto is_unit = [&](const Integer& b) { return b % shift == 0 && (b / shift) % w.p != 0; };

        std::vector<std::size_t> cands;
        for (auto i : rem)
            if (exps[i] == k) cands.push_back(i);

        std::optional<std::size_t> pivot;
        for (auto i : cands)
            if (is_unit(w.pair(basis[i], basis[i]))) {
                pivot = i;
                break;
            }
        if (!pivot && !two) {
            for (std::size_t a = 0; a < cands.size() && !pivot; ++a)
                for (std::size_t b = a + 1; b < cands.size(); ++b)
                    if (is_unit(w.pair(basis[cands[a]], basis[cands[b]]))) {
                        Vec z = basis[cands[a]];
                        for (std::size_t t = 0; t < z.size(); ++t) z[t] += basis[cands[b]][t];
                        basis[cands[a]] = w.reduce(z);
                        pivot = cands[a];
                        break;
                    }
        }
        if (!pivot && two && diagonal_only) {
            if (out.empty() || out.back().k != k || out.back().vecs.size() != 1)
                throw DomainError("even 2-adic component cannot be diagonalized");
            Vec x = out.back().vecs[0];
            out.pop_back();
            std::optional<std::size_t> e;
            for (std::size_t a = 0; a < cands.size() && !e; ++a)
                for (std::size_t b = 0; b < cands.size(); ++b)
                    if (a != b && is_unit(w.pair(basis[cands[a]], basis[cands[b]]))) {
                        e = cands[a];
                        break;
                    }
            if (!e) throw SingularPairing("no unit pairing among maximal-order generators");
            Vec z = basis[*e];
            for (std::size_t t = 0; t < z.size(); ++t) z[t] += x[t];
            basis[*e] = w.reduce(z);
            basis.push_back(x);
            exps.push_back(k);
            rem.push_back(basis.size() - 1);
            pivot = e;
        }

        if (pivot) {
            const Vec x = basis[*pivot];
            Integer ainv = inv_mod(scaled(w.pair(x, x)), pk);
            erase(*pivot);
            for (auto j : rem) {
                Integer c = mod(scaled(w.pair(x, basis[j])) * ainv, pk);
                if (c != 0) basis[j] = w.axpy(basis[j], c, x);
            }
            out.push_back({k, {x}});
            continue;
        }

        // p = 2: split off a rank-2 block with odd off-diagonal entry.
        std::optional<std::pair<std::size_t, std::size_t>> blk;
        for (std::size_t a = 0; a < cands.size() && !blk; ++a)
            for (std::size_t b = a + 1; b < cands.size(); ++b)
                if (is_unit(w.pair(basis[cands[a]], basis[cands[b]]))) {
                    blk = std::make_pair(cands[a], cands[b]);
                    break;
                }
        if (!blk) throw SingularPairing("degenerate pairing: no unit among maximal-order generators");
        const Vec x1 = basis[blk->first], x2 = basis[blk->second];
        Integer m11 = scaled(w.pair(x1, x1)), m12 = scaled(w.pair(x1, x2)), m22 = scaled(w.pair(x2, x2));
        Integer dinv = inv_mod(m11 * m22 - m12 * m12, pk);
        erase(blk->first);
        erase(blk->second);
        for (auto j : rem) {
            Integer r1 = scaled(w.pair(x1, basis[j])), r2 = scaled(w.pair(x2, basis[j]));
            Integer c1 = mod(dinv * (m22 * r1 - m12 * r2), pk);
            Integer c2 = mod(dinv * (m11 * r2 - m12 * r1), pk);
            basis[j] = w.axpy(w.axpy(basis[j], c1, x1), c2, x2);
        }
        out.push_back({k, {x1, x2}});
    }
    return out;
}

Integer det_mod_p(IntMatrix m, const Integer& p)
{
    std::size_t n = m.size();
    Integer det = 1;
    for (auto& row : m)
        for (auto& x : row) x = mod(x, p);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && m[r][c] == 0) ++r;
        if (r == n) return 0;
        if (r != c) {
            std::swap(m[r], m[c]);
            det = -det;
        }
        det = mod(det * m[c][c], p);
        Integer inv = inv_mod(m[c][c], p);
        for (std::size_t i = c + 1; i < n; ++i) {
            Integer f = mod(m[i][c] * inv, p);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m[i][j] = mod(m[i][j] - f * m[c][j], p);
        }
    }
    return mod(det, p);
}

}  // namespace

BlockDecomposition block_diagonalize(const GramPairing& g)
{
    BlockDecomposition out;
    if (g.empty()) return out;
    FormWork w = work_from_gram(g);
    std::size_t n = g.rank();
    std::vector<Vec> basis(n, Vec(n, 0));
    std::vector<long> exps(n);
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        exps[i] = padic_val(g.orders[i], g.prime);
    }
    auto pieces = split_form(w, basis, exps, false);

    std::map<long, std::vector<Vec>, std::greater<>> by_k;
    for (auto& pc : pieces)
        for (auto& v : pc.vecs) by_k[pc.k].push_back(v);
    for (auto& [k, vecs] : by_k) {
        HomogeneousComponent c;
        c.p = g.prime;
        c.k = k;
        Integer shift = ipow(g.prime, static_cast<unsigned long>(w.K - k));
        Integer pk = ipow(g.prime, static_cast<unsigned long>(k));
        c.matrix.assign(vecs.size(), Vec(vecs.size()));
        for (std::size_t i = 0; i < vecs.size(); ++i)
            for (std::size_t j = 0; j < vecs.size(); ++j) c.matrix[i][j] = mod(w.pair(vecs[i], vecs[j]) / shift, pk);
        if (det_mod_p(c.matrix, g.prime) == 0) throw SingularPairing("singular homogeneous component");
        out.components.push_back(std::move(c));
        out.bases.push_back(vecs);
    }
    return out;
}

// ---------------------------------------------------------------- invariants

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity(const HomogeneousComponent& c)
{
    if (c.p != 2) throw DomainError("parity is defined for 2-primary components");
    for (std::size_t i = 0; i < c.rank(); ++i)
        if (mod(c.matrix[i][i], 2) != 0) return Parity::Odd;
    return Parity::Even;
}

SquareClass d_invariant(const HomogeneousComponent& c)
{
    if (c.p == 2) throw DomainError("d-invariant is defined for odd p");
    Integer det = det_mod_p(c.matrix, c.p);
    if (det == 0) throw DomainError("component determinant is not a unit");
    return SquareClass(c.p, legendre(det, c.p));
}

std::vector<Atom> diagonalize_odd(const HomogeneousComponent& c)
{
    if (c.p == 2 && parity(c) == Parity::Even) throw DomainError("even 2-adic component: use even_decompose");
    FormWork w = work_from_component(c);
    std::size_t n = c.rank();
    std::vector<Vec> basis(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
    auto pieces = split_form(w, basis, std::vector<long>(n, c.k), true);
    std::vector<Atom> atoms;
    for (auto& pc : pieces) atoms.push_back(Atom::cyc(c.p, c.k, w.pair(pc.vecs[0], pc.vecs[0])));
    return atoms;
}

namespace {

// Arf invariant of q(x) = x^T L x / 2 mod 2 on F_2^rho (L even, k >= 2).
int arf_invariant(const IntMatrix& L)
{
    std::size_t n = L.size();
    using Bits = std::vector<int>;
    auto B = [&](const Bits& x, const Bits& y) {
        Integer acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc += x[i] * L[i][j] * y[j];
        return static_cast<int>(mod(acc, 2).get_si());
    };
    auto q = [&](const Bits& x) {
        Integer acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc += x[i] * L[i][j] * x[j];
        return static_cast<int>(mod(acc / 2, 2).get_si());
    };
    std::vector<Bits> vs;
    for (std::size_t i = 0; i < n; ++i) {
        Bits b(n, 0);
        b[i] = 1;
        vs.push_back(b);
    }
    int arf = 0;
    while (!vs.empty()) {
        Bits e = vs.front();
        vs.erase(vs.begin());
        auto it = std::find_if(vs.begin(), vs.end(), [&](const Bits& f) { return B(e, f) == 1; });
        if (it == vs.end()) throw DomainError("even component is singular mod 2");
        Bits f = *it;
        vs.erase(it);
        arf ^= q(e) & q(f);
        for (auto& z : vs) {
            int bf = B(z, f), be = B(z, e);
            for (std::size_t i = 0; i < n; ++i) z[i] = (z[i] + bf * e[i] + be * f[i]) % 2;
        }
    }
    return arf;
}

// Canonical diagonal for an odd homogeneous 2-adic component.
std::vector<Atom> odd2_normal(long k, const std::vector<Integer>& diag)
{
    std::size_t rho = diag.size();
    std::vector<Atom> out;
    if (k == 1) {
        for (std::size_t i = 0; i < rho; ++i) out.push_back(Atom::cyc(2, 1, 1));
        return out;
    }
    long d = 1, t = 0;
    for (const auto& a : diag) {
        long r = mod(a, 8).get_si();
        d = (d * r) % 8;
        t = (t + r) % 8;
    }
    if (k == 2) {
        // Entries matter mod 4 only: (d, t) is defined up to (5d, t + 4).
        for (std::size_t j = 0; j <= rho; ++j) {
            long dj = (j % 2) ? 3 : 1;
            long tj = static_cast<long>((rho + 2 * j) % 8);
            if ((dj == d && tj == t) || (dj == (5 * d) % 8 && tj == (t + 4) % 8)) {
                for (std::size_t i = 0; i < rho - j; ++i) out.push_back(Atom::cyc(2, 2, 1));
                for (std::size_t i = 0; i < j; ++i) out.push_back(Atom::cyc(2, 2, 3));
                return out;
            }
        }
        throw DomainError("no canonical diagonal for odd 2-adic component");
    }
    // k >= 3: rank, determinant mod 8 and oddity determine the class.
    std::vector<long> counts(4, 0);  // of 1, 3, 5, 7
    std::function<bool(std::size_t, std::size_t, long, long)> search = [&](std::size_t slot, std::size_t left,
                                                                            long dd, long tt) -> bool {
        if (slot == 3) {
            counts[3] = static_cast<long>(left);
            for (std::size_t i = 0; i < left; ++i) {
                dd = (dd * 7) % 8;
                tt = (tt + 7) % 8;
            }
            return dd == d && tt == t;
        }
        long val = 2 * static_cast<long>(slot) + 1;
        for (long c = static_cast<long>(left); c >= 0; --c) {
            long d2 = dd, t2 = tt;
            for (long i = 0; i < c; ++i) {
                d2 = (d2 * val) % 8;
                t2 = (t2 + val) % 8;
            }
            counts[slot] = c;
            if (search(slot + 1, left - static_cast<std::size_t>(c), d2, t2)) return true;
        }
        return false;
    };
    if (!search(0, rho, 1, 0)) throw DomainError("no canonical diagonal for odd 2-adic component");
    for (std::size_t s = 0; s < 4; ++s)
        for (long i = 0; i < counts[s]; ++i) out.push_back(Atom::cyc(2, k, 2 * static_cast<long>(s) + 1));
    return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> even_decompose(const HomogeneousComponent& c)
{
    if (c.p != 2 || parity(c) != Parity::Even) throw DomainError("even_decompose needs an even 2-adic component");
    std::size_t rho = c.rank();
    if (rho % 2) throw DomainError("even component of odd rank");
    if (c.k == 1 || arf_invariant(c.matrix) == 0) return {rho / 2, 0};
    return {rho / 2 - 1, 1};
}

bool hyperbolic_test(const HomogeneousComponent& c)
{
    std::size_t rho = c.rank();
    if (rho % 2) return false;
    if (c.p == 2) {
        if (parity(c) == Parity::Odd) return false;
        return even_decompose(c).second == 0;
    }
    Integer minus_one_pow = (rho / 2) % 2 ? Integer(-1) : Integer(1);
    return d_invariant(c) == SquareClass::of(Rational(minus_one_pow), c.p);
}

std::vector<Atom> normal_atoms(const HomogeneousComponent& c)
{
    std::vector<Atom> out;
    if (c.rank() == 0) return out;
    if (c.p != 2) {
        SquareClass d = d_invariant(c);
        for (std::size_t i = 0; i + 1 < c.rank(); ++i) out.push_back(Atom::cyc(c.p, c.k, 1));
        out.push_back(Atom::cyc(c.p, c.k, d.is_square() ? Integer(1) : least_nonresidue(c.p)));
        return out;
    }
    if (parity(c) == Parity::Even) {
        auto [n0, n1] = even_decompose(c);
        for (std::size_t i = 0; i < n0; ++i) out.push_back(Atom::e0(c.k));
        for (std::size_t i = 0; i < n1; ++i) out.push_back(Atom::e1(c.k));
        return out;
    }
    std::vector<Integer> diag;
    for (auto& a : diagonalize_odd(c)) diag.push_back(a.a);
    out = odd2_normal(c.k, diag);
    std::sort(out.begin(), out.end(), atom_less);
    return out;
}

ClassificationReport classify(const GramPairing& g) { return classify(std::vector<GramPairing>{g}); }

ClassificationReport classify(const std::vector<GramPairing>& per_prime)
{
    ClassificationReport rep;
    for (const auto& g : per_prime) {
        PrimeReport pr;
        pr.p = g.prime;
        for (auto& c : block_diagonalize(g).components) {
            ComponentReport cr;
            if (c.p == 2) cr.parity = parity(c);
            else cr.d = d_invariant(c);
            cr.atoms = normal_atoms(c);
            rep.form.atoms.insert(rep.form.atoms.end(), cr.atoms.begin(), cr.atoms.end());
            cr.component = std::move(c);
            pr.components.push_back(std::move(cr));
        }
        rep.primes.push_back(std::move(pr));
    }
    rep.form.sort();
    return rep;
}

StandardForm normalize(const StandardForm& f)
{
    std::map<std::pair<Integer, long>, HomogeneousComponent> comps;
    for (const auto& a : f.atoms) {
        auto& c = comps[{a.p, a.k}];
        c.p = a.p;
        c.k = a.k;
        IntMatrix blk;
        switch (a.kind) {
        case Atom::Kind::Cyc: blk = {{a.a}}; break;
        case Atom::Kind::E0: blk = {{0, 1}, {1, 0}}; break;
        case Atom::Kind::E1: blk = {{2, 1}, {1, 2}}; break;
        }
        std::size_t n = c.matrix.size(), m = blk.size();
        for (auto& row : c.matrix) row.resize(n + m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Integer> row(n + m, 0);
            for (std::size_t j = 0; j < m; ++j) row[n + j] = blk[i][j];
            c.matrix.push_back(row);
        }
    }
    StandardForm out;
    for (auto& [key, c] : comps) {
        auto at = normal_atoms(c);
        out.atoms.insert(out.atoms.end(), at.begin(), at.end());
    }
    out.sort();
    return out;
}

// ---------------------------------------------------------------- isomorphism

BruteForceResult brute_force_isomorphic(const GramPairing& a, const GramPairing& b, std::uint64_t bound)
{
    BruteForceResult res;
    if (a.prime != b.prime && !(a.empty() && b.empty())) return res;
    auto oa = a.orders, ob = b.orders;
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    if (oa != ob) return res;
    if (a.empty()) {
        res.isomorphic = true;
        return res;
    }
    FiniteForm fa(a, bound), fb(b, bound);

    // Self-linking value multiset as a pre-filter.
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> ha, hb;
    for (std::uint64_t x = 0; x < fa.size(); ++x) ++ha[{fa.order(x), fa.self(x)}];
    for (std::uint64_t x = 0; x < fb.size(); ++x) ++hb[{fb.order(x), fb.self(x)}];
    if (ha != hb) return res;

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> pool;
    for (std::uint64_t y = 0; y < fb.size(); ++y) pool[{fb.order(y), fb.self(y)}].push_back(y);

    std::size_t n = fa.rank();
    std::vector<std::size_t> gens(n);
    for (std::size_t i = 0; i < n; ++i) gens[i] = i;
    std::stable_sort(gens.begin(), gens.end(),
                     [&](std::size_t i, std::size_t j) { return fa.generator_order(i) > fa.generator_order(j); });

    std::vector<std::uint64_t> img(n);
    std::function<bool(std::size_t)> dfs = [&](std::size_t depth) -> bool {
        if (depth == n) return true;
        std::uint64_t ex = fa.generator(gens[depth]);
        for (auto y : pool[{fa.order(ex), fa.self(ex)}]) {
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d)
                ok = fb.pair(y, img[d]) == fa.pair(ex, fa.generator(gens[d]));
            if (!ok) continue;
            img[depth] = y;
            if (dfs(depth + 1)) return true;
        }
        return false;
    };
    if (!dfs(0)) return res;
    res.isomorphic = true;
    res.witness.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        const std::uint32_t* c = fb.coords(img[d]);
        res.witness[gens[d]] = std::vector<std::uint32_t>(c, c + fb.rank());
    }
    return res;
}

std::string IsoResult::to_string() const
{
    std::string m = method == Method::NormalForm ? "normal-form" : method == Method::BruteForce ? "brute-force" : "normalized";
    return std::string(isomorphic ? "isomorphic" : "not isomorphic") + " (" + m + ")";
}

namespace {

// (exponent, rank) multiset at each prime.
std::map<Integer, std::map<long, std::size_t>> group_structure(const StandardForm& f)
{
    std::map<Integer, std::map<long, std::size_t>> s;
    for (const auto& a : f.atoms) s[a.p][a.k] += a.kind == Atom::Kind::Cyc ? 1 : 2;
    return s;
}

}  // namespace

IsoResult is_isomorphic(const StandardForm& f, const StandardForm& g, const IsoOptions& opt)
{
    IsoResult res;
    if (group_structure(f) != group_structure(g)) return res;

    StandardForm nf = normalize(f);
    std::vector<StandardForm> targets{normalize(g)};
    if (opt.allow_negation) targets.push_back(normalize(negate(g)));

    if (!opt.force_brute_force)
        for (const auto& t : targets)
            if (nf == t) {
                res.isomorphic = true;
                return res;
            }

    for (const auto& t : targets) {
        bool all = true;
        bool decided = true;
        for (const auto& p : nf.primes()) {
            StandardForm fp = nf.at_prime(p), tp = t.at_prime(p);
            bool complete = p != 2 || group_structure(fp)[p].size() <= 1;
            if (!opt.force_brute_force && fp == tp) continue;
            if (!opt.force_brute_force && complete) {
                all = false;
                break;
            }
            if (fp.group_order() > Integer(static_cast<unsigned long>(opt.brute_bound))) {
                if (fp == tp) continue;
                all = false;
                decided = false;
                break;
            }
            if (!brute_force_isomorphic(to_gram(fp, p), to_gram(tp, p), opt.brute_bound).isomorphic) {
                all = false;
                break;
            }
            res.method = IsoResult::Method::BruteForce;
        }
        if (all) {
            res.isomorphic = true;
            return res;
        }
        if (!decided) res.method = IsoResult::Method::Normalized;
    }
    return res;
}

IsoResult is_isomorphic(const GramPairing& f, const GramPairing& g, const IsoOptions& opt)
{
    return is_isomorphic(classify(f).form, classify(g).form, opt);
}

// ---------------------------------------------------------------- Seifert-level predictions

std::optional<long> homogeneous_exponent(const SeifertData& s, const Integer& p)
{
    auto loc = local_orders(s, p);
    if (loc.generators.empty()) return std::nullopt;
    long k = loc.generators.front().exponent;
    for (const auto& g : loc.generators)
        if (g.exponent != k) return std::nullopt;
    return k;
}

std::optional<SquareClass> predicted_d_invariant(const SeifertData& s, const Integer& p, bool printed_sign)
{
    if (p == 2) throw DomainError("determinant formula is for odd p");
    require_valid(s);
    if (s.size() < 2) return std::nullopt;
    auto k = homogeneous_exponent(s, p);
    if (!k) throw DomainError("localized torsion is not homogeneous");
    const SeifertData t = reorder_at_prime(s, p).data;
    const std::size_t rp = r_p(t, p);
    const Rational eps = euler_invariant(t);
    const Integer pk = ipow(p, static_cast<unsigned long>(*k));
    auto u = [&](std::size_t i) { return Rational(t.pairs[i - 1].alpha, pk); };
    auto unit = [&](const Rational& q) { return q != 0 && padic_val(q, p) == 0; };

    Rational prod = (rp - 1) % 2 ? Rational(-1) : Rational(1);
    for (std::size_t i = 1; i <= rp; ++i) prod *= Rational(t.pairs[i - 1].beta);
    if (eps == 0) {
        if (rp < 3) return std::nullopt;
        for (std::size_t i = 1; i <= rp; ++i)
            if (!unit(u(i))) return std::nullopt;
        prod *= Rational(t.pairs[0].alpha, t.pairs[1].alpha);
        for (std::size_t j = 3; j <= rp; ++j) prod *= u(j);
    } else {
        const Rational v = Rational(t.pairs[0].alpha) * eps;
        if (rp < 2 || !unit(v)) return std::nullopt;
        for (std::size_t i = 2; i <= rp; ++i)
            if (!unit(u(i))) return std::nullopt;
        for (std::size_t j = 2; j <= rp; ++j) prod *= u(j);
        prod *= v;
        if (!printed_sign) prod = -prod;
    }
    prod.canonicalize();
    return SquareClass::of(prod, p);
}

TCount t_count(const SeifertData& s)
{
    require_valid(s);
    const Integer two = 2;
    const SeifertData t = reorder_at_prime(s, two).data;
    const std::size_t r2 = r_p(t, two);
    if (r2 < 2) throw DomainError("t_count needs at least two even cone point orders");
    const long k = padic_val(t.pairs[0].alpha, two);
    if (k < 2) throw DomainError("t_count needs 2-adic valuation k > 1");
    for (std::size_t i = 0; i < r2; ++i)
        if (padic_val(t.pairs[i].alpha, two) != k) throw DomainError("even cone orders have different 2-adic valuations");
    const Rational eps = euler_invariant(t);
    if (eps != 0 && padic_val(Rational(t.pairs[0].alpha) * eps, two) != 0)
        throw DomainError("alpha_1 * eps is even and nonzero");

    const Integer pk = ipow(two, static_cast<unsigned long>(k));
    const Integer& a2 = t.pairs[1].alpha;
    const Integer& b2 = t.pairs[1].beta;
    TCount out;
    out.k = k;
    for (std::size_t i = 2; i < r2; ++i) {
        Integer v = (a2 * t.pairs[i].beta + t.pairs[i].alpha * b2) / pk;
        if (mod(v, 4) == 0) ++out.t;
    }
    if (eps != 0) {
        Rational v = Rational(b2) + Rational(a2) * eps;
        v.canonicalize();
        if (v == 0 || padic_val(v, two) >= 2) ++out.t;
    }
    out.rho = static_cast<long>(r2) - 2 + (eps != 0 ? 1 : 0);
    return out;
}

bool t_rule_hyperbolic(long t, long rho)
{
    long a = t / 4, x = t % 4;
    long b = (rho - t) / 4, y = (rho - t) % 4;
    bool special = (x == 1 && y == 3) || (x == 0 && y == 2);
    return ((a + b) % 2 == 0) ? !special : special;
}

Parity seifert_parity_prediction(const SeifertData& s)
{
    const Integer two = 2;
    const SeifertData t = reorder_at_prime(s, two).data;
    const std::size_t r2 = r_p(t, two);
    const Rational eps = euler_invariant(t);
    for (std::size_t i = 0; i < r2; ++i)
        if (padic_val(t.pairs[0].alpha, two) != padic_val(t.pairs[i].alpha, two)) return Parity::Odd;
    if (eps != 0 && padic_val(Rational(t.pairs[0].alpha) * eps, two) != 0) return Parity::Odd;
    return Parity::Even;
}

}  // namespace linkform
