#include "linkform/witt.hpp"

#include <functional>
#include <unordered_set>

namespace linkform {

namespace {

enum class WittKind { Two, ThreeMod4, OneMod4 };

WittKind kind_of(const Integer& p)
{
    if (p == 2) return WittKind::Two;
    return mod(p, 4) == 3 ? WittKind::ThreeMod4 : WittKind::OneMod4;
}

}  // namespace

LocalWitt LocalWitt::zero(const Integer& p)
{
    if (!is_prime(p)) throw DomainError("Witt group at non-prime " + p.get_str());
    LocalWitt w;
    w.p = p;
    return w;
}

LocalWitt LocalWitt::of_unit(const Integer& p, const Integer& u)
{
    if (u % p == 0) throw DomainError("Witt class of a non-unit");
    LocalWitt w = zero(p);
    bool sq = p == 2 || legendre(u, p) == 1;
    switch (kind_of(p)) {
    case WittKind::Two: w.a = 1; break;
    case WittKind::ThreeMod4: w.a = sq ? 1 : 3; break;
    case WittKind::OneMod4: (sq ? w.a : w.b) = 1; break;
    }
    return w;
}

std::vector<LocalWitt> LocalWitt::all(const Integer& p)
{
    std::vector<LocalWitt> out;
    LocalWitt w = zero(p);
    switch (kind_of(p)) {
    case WittKind::Two:
        for (int a = 0; a < 2; ++a) out.push_back({p, a, 0});
        break;
    case WittKind::ThreeMod4:
        for (int a = 0; a < 4; ++a) out.push_back({p, a, 0});
        break;
    case WittKind::OneMod4:
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) out.push_back({p, a, b});
        break;
    }
    return out;
}

int LocalWitt::order() const
{
    if (is_zero()) return 1;
    if (kind_of(p) == WittKind::ThreeMod4 && a % 2 == 1) return 4;
    return 2;
}

LocalWitt LocalWitt::operator+(const LocalWitt& o) const
{
    if (p != o.p) throw DomainError("adding Witt classes at different primes");
    LocalWitt w = *this;
    switch (kind_of(p)) {
    case WittKind::Two: w.a = (a + o.a) % 2; break;
    case WittKind::ThreeMod4: w.a = (a + o.a) % 4; break;
    case WittKind::OneMod4:
        w.a = (a + o.a) % 2;
        w.b = (b + o.b) % 2;
        break;
    }
    return w;
}

LocalWitt LocalWitt::operator-() const
{
    LocalWitt w = *this;
    if (kind_of(p) == WittKind::ThreeMod4) w.a = (4 - a) % 4;
    return w;
}

std::string LocalWitt::to_string() const
{
    if (kind_of(p) == WittKind::OneMod4) return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return std::to_string(a);
}

LocalWitt LocalWitt::parse(const Integer& p, const std::string& text)
{
    LocalWitt w = zero(p);
    if (kind_of(p) == WittKind::OneMod4) {
        if (text.size() != 5 || text[0] != '(' || text[2] != ',' || text[4] != ')')
            throw DomainError("expected (a,b) for W(F_" + p.get_str() + "), got " + text);
        w.a = text[1] - '0';
        w.b = text[3] - '0';
        if (w.a < 0 || w.a > 1 || w.b < 0 || w.b > 1) throw DomainError("bad Witt class " + text);
        return w;
    }
    int bound = kind_of(p) == WittKind::Two ? 2 : 4;
    if (text.size() != 1 || text[0] < '0' || text[0] - '0' >= bound) throw DomainError("bad Witt class " + text);
    w.a = text[0] - '0';
    return w;
}

void WittElement::add(const LocalWitt& w)
{
    auto it = parts.find(w.p);
    LocalWitt sum = it == parts.end() ? w : it->second + w;
    if (sum.is_zero()) {
        if (it != parts.end()) parts.erase(it);
    } else {
        parts[w.p] = sum;
    }
}

WittElement WittElement::operator+(const WittElement& o) const
{
    WittElement out = *this;
    for (const auto& [p, w] : o.parts) out.add(w);
    return out;
}

WittElement WittElement::operator-() const
{
    WittElement out;
    for (const auto& [p, w] : parts) out.add(-w);
    return out;
}

std::string WittElement::to_string() const
{
    if (parts.empty()) return "0";
    std::string s;
    for (const auto& [p, w] : parts) s += (s.empty() ? "" : " + ") + std::string("W(F_") + p.get_str() + "):" + w.to_string();
    return s;
}

WittElement negate(const WittElement& w) { return -w; }

LocalWitt witt_cyclic(const Integer& p, long k, const Integer& b)
{
    if (k < 1) throw DomainError("witt_cyclic needs k >= 1");
    if (b % p == 0) throw DomainError("witt_cyclic needs a unit numerator");
    if (k % 2 == 0) return LocalWitt::zero(p);
    return LocalWitt::of_unit(p, b);
}

WittElement witt_rational(const Rational& w)
{
    if (w == 0) throw DomainError("w(0) is undefined");
    Rational r = w;
    r.canonicalize();
    const Integer& b = r.get_num();
    const Integer& a = r.get_den();
    WittElement out;
    for (const auto& p : prime_divisors(a)) {
        long v = padic_val(a, p);
        Integer pv = ipow(p, static_cast<unsigned long>(v));
        out.add(witt_cyclic(p, v, b * (a / pv)));
    }
    return out;
}

WittElement witt_pairing(const StandardForm& f)
{
    WittElement out;
    for (const auto& at : f.atoms)
        if (at.kind == Atom::Kind::Cyc) out.add(witt_cyclic(at.p, at.k, at.a));
    return out;
}

WittElement witt_seifert(const SeifertData& s, WittSign sign)
{
    require_valid(s);
    WittElement sum;
    for (const auto& pr : s.pairs) sum = sum + witt_rational(make_rational(pr.beta, pr.alpha));
    Rational eps = euler_invariant(s);
    if (eps != 0) sum = sum + witt_rational(Rational(1) / Rational(eps.get_num() * eps.get_den()));
    return sign == WittSign::AsPrinted ? -sum : sum;
}

namespace {

std::uint64_t isqrt_exact(std::uint64_t n, bool& ok)
{
    std::uint64_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    ok = r * r == n;
    return r;
}

std::vector<std::vector<std::uint32_t>> coords_of(const FiniteForm& f, const std::vector<std::uint64_t>& xs)
{
    std::vector<std::vector<std::uint32_t>> out;
    for (auto x : xs) out.emplace_back(f.coords(x), f.coords(x) + f.rank());
    return out;
}

}  // namespace

MetabolizerResult metabolic_oracle(const GramPairing& g, std::uint64_t bound)
{
    MetabolizerResult res;
    if (g.empty()) {
        res.metabolic = true;
        return res;
    }
    FiniteForm f(g, bound);
    bool square = false;
    const std::uint64_t target = isqrt_exact(f.size(), square);
    if (!square) return res;

    // Subgroups already explored, keyed by a hash of their membership mask.
    std::unordered_set<std::uint64_t> seen;
    auto key = [](const std::vector<char>& in) {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < in.size(); ++i)
            if (in[i]) h = (h ^ i) * 1099511628211ull;
        return h;
    };
    std::vector<std::uint64_t> gens;
    std::function<bool(const std::vector<char>&, std::uint64_t)> dfs = [&](const std::vector<char>& in,
                                                                          std::uint64_t sz) -> bool {
        if (sz == target) return true;
        if (!seen.insert(key(in)).second) return false;
        for (std::uint64_t x = 1; x < f.size(); ++x) {
            if (in[x] || f.self(x) != 0) continue;
            bool orth = true;
            for (auto h : gens)
                if (f.pair(x, h) != 0) {
                    orth = false;
                    break;
                }
            if (!orth) continue;
            gens.push_back(x);
            auto next = f.span(gens);
            std::uint64_t nsz = 0;
            for (char c : next) nsz += c;
            if (nsz <= target && dfs(next, nsz)) return true;
            gens.pop_back();
        }
        return false;
    };
    std::vector<char> triv(f.size(), 0);
    triv[0] = 1;
    if (dfs(triv, 1)) {
        res.metabolic = true;
        res.generators = coords_of(f, gens);
    }
    return res;
}

MetabolizerResult split_metabolizer_oracle(const GramPairing& g, std::uint64_t bound)
{
    MetabolizerResult res;
    if (g.empty()) {
        res.metabolic = true;
        return res;
    }
    for (const auto& o : g.orders)
        if (o != g.orders.front()) throw DomainError("split_metabolizer_oracle needs a homogeneous pairing");
    if (g.rank() % 2) return res;
    FiniteForm f(g, bound);
    const std::uint64_t full = f.modulus();
    const std::size_t half = g.rank() / 2;

    std::vector<std::uint64_t> cands;
    for (std::uint64_t x = 1; x < f.size(); ++x)
        if (f.order(x) == full && f.self(x) == 0) cands.push_back(x);

    std::vector<std::uint64_t> chosen;
    std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
        if (chosen.size() == half) return true;
        for (std::size_t i = start; i < cands.size(); ++i) {
            std::uint64_t x = cands[i];
            bool ok = true;
            for (auto c : chosen)
                if (f.pair(x, c) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(x);
            // Free of full rank iff the span has order full^{|chosen|}.
            auto in = f.span(chosen);
            std::uint64_t sz = 0, want = 1;
            for (char c : in) sz += c;
            for (std::size_t j = 0; j < chosen.size(); ++j) want *= full;
            if (sz == want && dfs(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (dfs(0)) {
        res.metabolic = true;
        res.generators = coords_of(f, chosen);
    }
    return res;
}

}  // namespace linkform
