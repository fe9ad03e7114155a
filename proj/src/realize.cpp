#include "linkform/realize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace linkform {

std::string to_string(RealizeMode m)
{
    switch (m) {
    case RealizeMode::Flat: return "flat";
    case RealizeMode::Sphere: return "sphere";
    case RealizeMode::Auto: return "auto";
    }
    return "?";
}

RealizeMode parse_mode(const std::string& s)
{
    if (s == "flat") return RealizeMode::Flat;
    if (s == "sphere") return RealizeMode::Sphere;
    if (s == "auto") return RealizeMode::Auto;
    throw DomainError("unknown mode '" + s + "' (expected flat, sphere or auto)");
}

bool realizes(const SeifertData& s, const StandardForm& target, std::uint64_t brute_bound)
{
    if (!validate(s).empty() || s.size() < 2) return false;
    std::set<Integer> primes;
    for (const auto& p : relevant_primes(s)) primes.insert(p);
    for (const auto& p : target.primes()) primes.insert(p);
    IsoOptions opt;
    opt.brute_bound = brute_bound;
    for (const auto& p : primes) {
        GramPairing g = gram_matrix(s, p);
        StandardForm tp = target.at_prime(p);
        if (g.group_order() != tp.group_order()) return false;
        if (g.empty()) continue;
        if (!is_isomorphic(classify(g).form, tp, opt).isomorphic) return false;
    }
    return true;
}

namespace {

struct Comp {
    long k = 0;
    std::vector<Atom> atoms;
    std::size_t rank = 0;
    bool even = false;
    bool has_e1 = false;
};

std::vector<Comp> components_at(const StandardForm& f, const Integer& p)
{
    std::map<long, Comp, std::greater<>> by_k;
    for (const auto& a : normalize(f).at_prime(p).atoms) {
        auto& c = by_k[a.k];
        c.k = a.k;
        c.atoms.push_back(a);
        c.rank += a.kind == Atom::Kind::Cyc ? 1 : 2;
        if (a.kind != Atom::Kind::Cyc) c.even = true;
        if (a.kind == Atom::Kind::E1) c.has_e1 = true;
    }
    std::vector<Comp> out;
    for (auto& [k, c] : by_k) out.push_back(std::move(c));
    return out;
}

Integer pw(const Integer& p, long k) { return ipow(p, static_cast<unsigned long>(k)); }

// Square class (+1 / -1) of the product of the atom values of an odd component.
int component_class(const Comp& c, const Integer& p)
{
    Integer prod = 1;
    for (const auto& a : c.atoms) prod *= a.a;
    return legendre(prod, p);
}

SeifertData from_pairs(std::vector<SeifertPair> v)
{
    SeifertData s;
    s.pairs = std::move(v);
    return s;
}

// beta_1 := -alpha_1 * sum_{i >= 2} beta_i / alpha_i, when that is a valid numerator.
bool balance_first(std::vector<SeifertPair>& pairs)
{
    Rational rest = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) rest += Rational(pairs[i].beta, pairs[i].alpha);
    rest.canonicalize();
    Rational b1 = -Rational(pairs[0].alpha) * rest;
    b1.canonicalize();
    if (b1.get_den() != 1) return false;
    if (gcd(b1.get_num(), pairs[0].alpha) != 1) return false;
    pairs[0].beta = b1.get_num();
    return true;
}

RealizationResult verified_result(SeifertData s, std::string construction, std::vector<std::string> trace)
{
    RealizationResult r;
    r.seifert = std::move(s);
    r.verified = true;
    r.construction = std::move(construction);
    r.trace = std::move(trace);
    return r;
}

// Sorted local orders of S at p against those of the target.
bool orders_match(const SeifertData& s, const Integer& p, const StandardForm& target)
{
    std::vector<Integer> got, want;
    for (const auto& g : local_orders(s, p).generators) got.push_back(g.order);
    for (const auto& a : target.at_prime(p).atoms) {
        Integer pk = pw(p, a.k);
        want.push_back(pk);
        if (a.kind != Atom::Kind::Cyc) want.push_back(pk);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return got == want;
}

bool cheap_match(const SeifertData& s, const StandardForm& target)
{
    if (!validate(s).empty() || s.size() < 2) return false;
    for (const auto& p : target.primes())
        if (!orders_match(s, p, target)) return false;
    return true;
}

// ---------------------------------------------------------------- skeleton search

struct Slot {
    Integer alpha;
    std::size_t count = 1;
    std::vector<Integer> values;
};

const std::vector<Integer> kOddValues{1, -1, 3, -3, 5, -5, 7, -7};

std::string describe(const std::vector<Slot>& slots)
{
    std::string s;
    for (const auto& sl : slots) s += (s.empty() ? "" : ",") + sl.alpha.get_str() + "x" + std::to_string(sl.count);
    return s;
}

// slots[0] is a single cone point whose numerator is solved for (flat) or
// enumerated from its values (sphere, eps != 0 required). Other slots are
// filled by multisets of their values.
std::optional<SeifertData> skeleton_search(const std::vector<Slot>& slots, bool flat, const StandardForm& target,
                                           std::size_t budget)
{
    std::vector<SeifertPair> pairs{{slots[0].alpha, 1}};
    std::size_t tried = 0;
    std::optional<SeifertData> found;

    auto test = [&](std::vector<SeifertPair> ps) {
        if (flat) {
            if (!balance_first(ps)) return false;
        }
        SeifertData s = from_pairs(std::move(ps));
        if (!flat && euler_invariant(s) == 0) return false;
        ++tried;
        if (!cheap_match(s, target) || !realizes(s, target)) return false;
        found = std::move(s);
        return true;
    };

    std::function<bool(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t filled,
                                                                          std::size_t start) -> bool {
        if (tried >= budget) return false;
        if (slot == slots.size()) {
            if (flat) return test(pairs);
            for (const auto& b1 : slots[0].values) {
                if (gcd(b1, slots[0].alpha) != 1) continue;
                pairs[0].beta = b1;
                if (test(pairs)) return true;
            }
            return false;
        }
        const Slot& sl = slots[slot];
        if (filled == sl.count) return rec(slot + 1, 0, 0);
        for (std::size_t v = start; v < sl.values.size(); ++v) {
            if (gcd(sl.values[v], sl.alpha) != 1) continue;
            pairs.push_back({sl.alpha, sl.values[v]});
            if (rec(slot, filled + 1, v)) return true;
            pairs.pop_back();
        }
        return false;
    };
    rec(1, 0, 0);
    return found;
}

// ---------------------------------------------------------------- odd p, eps = 0

struct FirstBlock {
    std::vector<SeifertPair> pairs;
    std::string branch;
};

// First block of m cone points of order p^k with numerators summing to zero
// and [(-1)^{m-1} prod beta] = [w].
std::optional<FirstBlock> odd_flat_recipe(const Integer& p, long k, std::size_t m, bool w_square,
                                          std::vector<std::string>& trace)
{
    const Integer pk = pw(p, k);
    auto block = [&](const std::vector<Integer>& betas, const std::string& branch) -> std::optional<FirstBlock> {
        FirstBlock fb;
        fb.branch = branch;
        Integer sum = 0;
        for (const auto& b : betas) sum += b;
        std::vector<Integer> bs = betas;
        if (sum != 0) {
            trace.push_back("recipe " + branch + ": numerators sum to " + sum.get_str() + ", first numerator adjusted");
            bs[0] -= sum;
        }
        for (const auto& b : bs)
            if (b % p == 0) {
                trace.push_back("recipe " + branch + ": numerator divisible by p");
                return std::nullopt;
            }
        for (const auto& b : bs) fb.pairs.push_back({pk, b});
        return fb;
    };
    auto alternating = [](std::vector<Integer>& v, std::size_t upto) {
        while (v.size() < upto) {
            v.push_back(1);
            v.push_back(-1);
        }
    };

    if (p == 3 && w_square && m % 2 == 0) {
        if (m == 4) {
            FirstBlock fb;
            fb.branch = "odd-flat/p3-square-rank2";
            Integer big = pw(3, k + 1);
            fb.pairs = {{big, 1}, {big, 5}, {pk, -1}, {pk, -1}};
            return fb;
        }
        std::vector<Integer> v;
        if (m % 4 == 0) {
            v = {1, 1, 1, 1, -2, -2};
        }
        alternating(v, m);
        return block(v, m % 4 == 0 ? "odd-flat/p3-square-4t" : "odd-flat/p3-square-4t+2");
    }

    if (m % 2 == 1) {
        std::vector<Integer> v(m, 1);
        v.back() = -static_cast<long>(m - 1);
        if (v.back() % p == 0) {
            v[m - 2] = 2;
            v.back() = -static_cast<long>(m);
        }
        Integer prod = (m - 1) % 2 ? -1 : 1;
        for (const auto& b : v) prod *= b;
        if ((legendre(prod, p) == 1) != w_square) {
            Integer xi = least_nonresidue(p);
            for (auto& b : v) b *= xi;
        }
        return block(v, "odd-flat/m-odd");
    }

    Integer w = w_square ? Integer(4) : least_nonresidue(p);  // n^2 w with n = 2 when [w] = 1
    if (m % 4 == 0) {
        Integer x = mod((w - 1) * inv_mod(2, p), p);
        std::vector<Integer> v{1, -w, x, w - 1 - x};
        alternating(v, m);
        return block(v, "odd-flat/m=4t");
    }
    Integer y = mod(-(1 + w) * inv_mod(4, p), p);
    std::vector<Integer> v{1, w, y, y, y, w - 1 - 3 * y};
    alternating(v, m);
    return block(v, "odd-flat/m=4t+2");
}

// Small-residue solutions of sum beta = 0 (mod p), one per square class of the product.
std::map<int, std::vector<Integer>> residue_solutions(const Integer& p, std::size_t m)
{
    std::map<int, std::vector<Integer>> out;
    const long top = std::min<long>(p.get_si() - 1, 6);
    std::vector<Integer> cur;
    std::function<void(long)> rec = [&](long start) {
        if (out.size() == 2) return;
        if (cur.size() == m - 1) {
            Integer sum = 0, prod = 1;
            for (const auto& c : cur) {
                sum += c;
                prod *= c;
            }
            Integer b1 = -sum;
            if (b1 % p == 0) return;
            int cls = legendre(prod * b1, p);
            if (!out.count(cls)) {
                std::vector<Integer> sol{b1};
                sol.insert(sol.end(), cur.begin(), cur.end());
                out[cls] = sol;
            }
            return;
        }
        for (long v = start; v <= top; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

std::optional<SeifertData> assemble_odd_flat(const Integer& p, const std::vector<Comp>& comps,
                                             std::vector<SeifertPair> first, const std::vector<Integer>& closers)
{
    std::vector<SeifertPair> pairs = std::move(first);
    for (std::size_t j = 1; j < comps.size(); ++j) {
        Integer a = pw(p, comps[j].k);
        for (std::size_t i = 0; i < comps[j].rank; ++i) pairs.push_back({a, i + 1 == comps[j].rank ? closers[j] : Integer(1)});
    }
    if (!balance_first(pairs)) return std::nullopt;
    return from_pairs(std::move(pairs));
}

}  // namespace

RealizationResult realize_odd_flat(const StandardForm& target, const Integer& p)
{
    if (p == 2 || !is_prime(p)) throw DomainError("realize_odd_flat needs an odd prime");
    if (target.empty() || target.at_prime(p).atoms.size() != target.atoms.size())
        throw DomainError("realize_odd_flat needs a nonempty " + p.get_str() + "-primary target");
    const auto comps = components_at(target, p);
    const Comp& top = comps.front();
    const std::size_t m1 = top.rank + 2;
    const bool w_square = component_class(top, p) == 1;
    std::vector<std::string> trace;

    std::vector<Integer> closers(comps.size(), 1);
    for (std::size_t j = 1; j < comps.size(); ++j) {
        Integer w = component_class(comps[j], p) == 1 ? Integer(1) : least_nonresidue(p);
        closers[j] = comps[j].rank % 2 ? -w : w;
    }

    if (auto fb = odd_flat_recipe(p, top.k, m1, w_square, trace)) {
        if (auto s = assemble_odd_flat(p, comps, fb->pairs, closers); s && realizes(*s, target))
            return verified_result(*s, fb->branch, trace);
        trace.push_back("recipe " + fb->branch + " did not verify");
    }

    // Fallback: both square classes for the first block, every sign pattern on the closers.
    std::vector<std::vector<SeifertPair>> firsts;
    const Integer pk = pw(p, top.k);
    for (auto& [cls, sol] : residue_solutions(p, m1)) {
        std::vector<SeifertPair> fp;
        for (const auto& b : sol) fp.push_back({pk, b});
        firsts.push_back(fp);
    }
    if (p == 3 && top.rank == 2) {
        Integer big = pw(3, top.k + 1);
        firsts.push_back({{big, 1}, {big, 5}, {pk, -1}, {pk, -1}});
    }
    const std::size_t tails = comps.size() - 1;
    for (const auto& fp : firsts)
        for (std::size_t mask = 0; mask < (std::size_t{1} << tails); ++mask) {
            std::vector<Integer> cl = closers;
            for (std::size_t j = 1; j < comps.size(); ++j)
                if (mask >> (j - 1) & 1) cl[j] = -cl[j];
            auto s = assemble_odd_flat(p, comps, fp, cl);
            if (s && realizes(*s, target)) {
                trace.push_back("substituted searched numerators");
                return verified_result(*s, "search:odd-flat", trace);
            }
        }
    throw RealizationFailure("odd flat realization failed for " + target.to_string(), trace);
}

// ---------------------------------------------------------------- odd order, eps != 0

namespace {

struct SpherePart {
    Integer p;
    long k1 = 0;
    std::vector<SeifertPair> pairs;
};

std::vector<SpherePart> sphere_parts(const StandardForm& target, std::size_t sign_mask)
{
    std::vector<SpherePart> parts;
    std::size_t bit = 0;
    for (const auto& p : target.primes()) {
        if (p == 2) continue;
        SpherePart sp;
        sp.p = p;
        auto comps = components_at(target, p);
        sp.k1 = comps.front().k;
        for (const auto& c : comps)
            for (const auto& a : c.atoms) sp.pairs.push_back({pw(p, a.k), -a.a});
        if (sign_mask >> bit & 1) sp.pairs[0].beta = -sp.pairs[0].beta;
        ++bit;
        parts.push_back(std::move(sp));
    }
    return parts;
}

// (alpha~, beta~) with alpha~ = two_part * prod p^{k_1(p)+1} and
// beta~ = -1 - alpha~ * sum beta/alpha, so eps = 1/alpha~.
std::optional<SeifertData> glue_sphere(const std::vector<SpherePart>& parts, const Integer& two_factor,
                                       const std::vector<SeifertPair>& extra)
{
    Integer at = two_factor;
    std::vector<SeifertPair> rest;
    for (const auto& sp : parts) {
        at *= pw(sp.p, sp.k1 + 1);
        rest.insert(rest.end(), sp.pairs.begin(), sp.pairs.end());
    }
    rest.insert(rest.end(), extra.begin(), extra.end());
    Rational sum = 0;
    for (const auto& pr : rest) sum += Rational(pr.beta, pr.alpha);
    Rational bt = Rational(-1) - Rational(at) * sum;
    bt.canonicalize();
    if (bt.get_den() != 1 || gcd(bt.get_num(), at) != 1) return std::nullopt;
    std::vector<SeifertPair> pairs{{at, bt.get_num()}};
    pairs.insert(pairs.end(), rest.begin(), rest.end());
    return from_pairs(std::move(pairs));
}

}  // namespace

RealizationResult realize_odd_sphere(const StandardForm& target)
{
    if (target.empty()) throw DomainError("realize_odd_sphere needs a nonempty target");
    if (!target.at_prime(2).empty()) throw DomainError("realize_odd_sphere needs a target of odd order");
    std::vector<std::string> trace;
    const std::size_t nprimes = target.primes().size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nprimes); ++mask) {
        auto s = glue_sphere(sphere_parts(target, mask), 1, {});
        if (s && realizes(*s, target)) {
            trace.push_back("eps = " + to_string(euler_invariant(*s)));
            return verified_result(*s, mask == 0 ? "odd-sphere" : "search:odd-sphere/sign", trace);
        }
        trace.push_back("sign pattern " + std::to_string(mask) + " did not verify");
    }
    throw RealizationFailure("odd sphere realization failed for " + target.to_string(), trace);
}

// ---------------------------------------------------------------- homogeneous 2-part

namespace {

// Numerators for r cone points of one order summing to zero: alternating for
// the hyperbolic case, with a -3 or -5 head when an E1 summand is present.
std::vector<Integer> even_pattern(std::size_t r, bool e1, std::size_t rho)
{
    std::vector<Integer> v;
    if (e1) v = rho % 4 == 2 ? std::vector<Integer>{-3, 1, 1} : std::vector<Integer>{-5, 1, 1, 1, 1};
    while (v.size() < r) v.push_back(v.size() % 2 ? 1 : -1);
    return v;
}

std::vector<Integer> odd_values_of(const Comp& c)
{
    std::vector<Integer> b;
    for (const auto& a : c.atoms) b.push_back(a.a);
    return b;
}

std::vector<Slot> fixed_slots(const std::vector<SeifertPair>& pairs)
{
    std::vector<Slot> out;
    for (const auto& p : pairs) out.push_back({p.alpha, 1, {p.beta}});
    return out;
}

constexpr std::size_t kBudget = 20000;

std::optional<RealizationResult> try_skeletons(const std::vector<std::vector<Slot>>& skeletons, bool flat,
                                               const StandardForm& target, std::vector<std::string>& trace)
{
    for (const auto& sk : skeletons) {
        if (auto s = skeleton_search(sk, flat, target, kBudget)) {
            trace.push_back("substituted search over skeleton " + describe(sk));
            return verified_result(*s, "search:" + describe(sk), trace);
        }
        trace.push_back("skeleton " + describe(sk) + " exhausted");
    }
    return std::nullopt;
}

std::optional<SeifertData> checked(std::vector<SeifertPair> pairs, bool flat, const StandardForm& target)
{
    if (flat && !balance_first(pairs)) return std::nullopt;
    SeifertData s = from_pairs(std::move(pairs));
    if (!validate(s).empty()) return std::nullopt;
    if (flat != (euler_invariant(s) == 0)) return std::nullopt;
    if (!realizes(s, target)) return std::nullopt;
    return s;
}

std::vector<SeifertPair> two_odd_sphere_recipe(long k, std::vector<Integer> b)
{
    const Integer a = pw(2, k);
    std::vector<SeifertPair> pairs{{pw(2, k + 2), 0}, {a, 1}};
    for (std::size_t i = 1; i < b.size(); ++i) pairs.push_back({a, 4 - b[i]});
    Integer sum = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) sum += pairs[i].beta;
    pairs[0].beta = 1 - 4 * sum;
    return pairs;
}

}  // namespace

RealizationResult realize_two_homog(const StandardForm& target, RealizeMode mode)
{
    if (mode == RealizeMode::Auto) {
        try {
            return realize_two_homog(target, RealizeMode::Flat);
        } catch (const RealizationFailure&) {
            return realize_two_homog(target, RealizeMode::Sphere);
        }
    }
    if (target.empty() || target.at_prime(2).atoms.size() != target.atoms.size())
        throw DomainError("realize_two_homog needs a nonempty 2-primary target");
    const auto comps = components_at(target, 2);
    if (comps.size() != 1) throw DomainError("realize_two_homog needs a homogeneous target");
    const Comp& c = comps.front();
    const long k = c.k;
    const std::size_t rho = c.rank;
    const Integer a = pw(2, k);
    const bool flat = mode == RealizeMode::Flat;
    std::vector<std::string> trace;

    if (c.even) {
        std::vector<Integer> pat = even_pattern(flat ? rho + 2 : rho + 1, c.has_e1, rho);
        std::vector<SeifertPair> pairs;
        for (const auto& b : pat) pairs.push_back({a, b});
        const std::string tag = std::string(c.has_e1 ? "two-even-e1-" : "two-even-hyperbolic-") + (flat ? "flat" : "sphere");
        if (flat) {
            if (auto s = checked(pairs, true, target)) return verified_result(*s, tag, trace);
        } else {
            for (const auto& b1 : kOddValues) {
                pairs[0].beta = b1;
                if (auto s = checked(pairs, false, target)) return verified_result(*s, tag, trace);
            }
        }
        trace.push_back("recipe " + tag + " did not verify");
    } else if (flat) {
        std::vector<SeifertPair> pairs{{pw(2, k + 2), 0}, {pw(2, k + 2), 1}};
        for (const auto& b : odd_values_of(c)) pairs.push_back({a, 3 * b});
        if (auto s = checked(pairs, true, target)) return verified_result(*s, "two-odd-flat", trace);
        trace.push_back("recipe two-odd-flat did not verify");
    } else {
        std::vector<Integer> b = odd_values_of(c);
        auto pos3 = std::find_if(b.begin(), b.end(), [](const Integer& x) { return mod(x, 8) == 3; });
        auto pos5 = std::find_if(b.begin(), b.end(), [](const Integer& x) { return mod(x, 8) == 5; });
        if (pos3 != b.end()) {
            std::iter_swap(b.begin(), pos3);
            if (auto s = checked(two_odd_sphere_recipe(k, b), false, target))
                return verified_result(*s, "two-odd-sphere", trace);
            trace.push_back("recipe two-odd-sphere did not verify");
        } else if (pos5 != b.end()) {
            for (auto& x : b) x = -x;
            std::iter_swap(b.begin(), b.begin() + (pos5 - b.begin()));
            auto s = from_pairs(two_odd_sphere_recipe(k, b));
            s = reverse_orientation(s);
            if (validate(s).empty() && euler_invariant(s) != 0 && realizes(s, target))
                return verified_result(s, "two-odd-sphere/reversed", trace);
            trace.push_back("recipe two-odd-sphere/reversed did not verify");
        } else {
            std::vector<std::vector<SeifertPair>> residual{{{pw(2, k + 1), 1}, {a, 1}},
                                                          {{pw(2, k + 1), 1}, {a, 1}, {a, -1}}};
            for (auto base : residual) {
                for (int sgn : {1, -1}) {
                    std::vector<SeifertPair> ps = base;
                    if (sgn < 0)
                        for (auto& p : ps) p.beta = -p.beta;
                    if (auto s = checked(ps, false, target))
                        return verified_result(*s, sgn > 0 ? "two-odd-sphere/residual" : "two-odd-sphere/residual-reversed",
                                               trace);
                }
            }
            trace.push_back("residual two-odd-sphere cases did not verify");
        }
    }

    std::vector<std::vector<Slot>> skeletons;
    if (flat) {
        skeletons = {{{pw(2, k + 2), 1, {}}, {pw(2, k + 2), 1, kOddValues}, {a, rho, kOddValues}},
                     {{a, 1, {}}, {a, 1, kOddValues}, {a, rho, kOddValues}},
                     {{pw(2, k + 1), 1, {}}, {pw(2, k + 1), 1, kOddValues}, {a, rho, kOddValues}}};
    } else {
        for (long v : {k + 2, k + 1, k}) skeletons.push_back({{pw(2, v), 1, kOddValues}, {a, rho, kOddValues}});
        skeletons.push_back({{pw(2, k + 1), 1, kOddValues}, {a, rho + 1, kOddValues}});
    }
    if (auto r = try_skeletons(skeletons, flat, target, trace)) return *r;
    throw RealizationFailure("2-homogeneous " + to_string(mode) + " realization failed for " + target.to_string(), trace);
}

// ---------------------------------------------------------------- mixed

namespace {

StandardForm odd_part(const StandardForm& f)
{
    StandardForm out;
    for (const auto& a : f.atoms)
        if (a.p != 2) out.atoms.push_back(a);
    return out;
}

// Concatenate realizations with pairwise coprime cone orders.
SeifertData concat(const std::vector<RealizationResult>& parts)
{
    SeifertData s;
    for (const auto& r : parts) s = s.pairs.empty() ? r.seifert : fibre_sum(s, r.seifert);
    return s;
}

}  // namespace

RealizationResult realize_mixed(const StandardForm& target, RealizeMode mode)
{
    if (mode == RealizeMode::Auto) {
        try {
            return realize_mixed(target, RealizeMode::Flat);
        } catch (const RealizationFailure&) {
            return realize_mixed(target, RealizeMode::Sphere);
        }
    }
    if (target.empty()) throw DomainError("realize_mixed needs a nonempty target");
    const StandardForm two = target.at_prime(2);
    const StandardForm odd = odd_part(target);
    if (components_at(two, 2).size() > 1) throw DomainError("realize_mixed needs a homogeneous 2-part");
    if (odd.empty()) return realize_two_homog(two, mode);
    if (mode == RealizeMode::Sphere && two.empty()) return realize_odd_sphere(odd);

    std::vector<std::string> trace;
    if (mode == RealizeMode::Flat) {
        std::vector<RealizationResult> parts;
        std::string tag = "mixed-flat[";
        for (const auto& p : odd.primes()) parts.push_back(realize_odd_flat(target.at_prime(p), p));
        if (!two.empty()) parts.push_back(realize_two_homog(two, RealizeMode::Flat));
        for (const auto& r : parts) {
            tag += (tag.back() == '[' ? "" : "+") + r.construction;
            trace.insert(trace.end(), r.trace.begin(), r.trace.end());
        }
        if (parts.size() == 1) return parts.front();
        SeifertData s = concat(parts);
        if (realizes(s, target)) return verified_result(s, tag + "]", trace);
        throw RealizationFailure("flat fibre sum did not verify for " + target.to_string(), trace);
    }

    const auto comps = components_at(two, 2);
    const long k = comps.front().k;
    const std::size_t rho = comps.front().rank;
    const Integer a = pw(2, k);
    const std::size_t nodd = odd.primes().size();
    std::vector<SeifertPair> extra(rho, {a, 1});
    std::size_t tried = 0;
    std::vector<std::size_t> idx(rho, 0);
    // Nondecreasing index tuples over the odd numerators.
    std::function<std::optional<RealizationResult>(std::size_t, std::size_t)> rec =
        [&](std::size_t pos, std::size_t start) -> std::optional<RealizationResult> {
        if (tried >= kBudget) return std::nullopt;
        if (pos == rho) {
            for (std::size_t i = 0; i < rho; ++i) extra[i].beta = kOddValues[idx[i]];
            for (std::size_t mask = 0; mask < (std::size_t{1} << nodd); ++mask)
                for (long v : {k, k + 1, k + 2}) {
                    ++tried;
                    auto s = glue_sphere(sphere_parts(odd, mask), pw(2, v), extra);
                    if (s && cheap_match(*s, target) && realizes(*s, target)) {
                        trace.push_back("2-adic valuation of the glue order: " + std::to_string(v));
                        return verified_result(*s, "mixed-sphere", trace);
                    }
                }
            return std::nullopt;
        }
        for (std::size_t v = start; v < kOddValues.size(); ++v) {
            idx[pos] = v;
            if (auto r = rec(pos + 1, v)) return r;
        }
        return std::nullopt;
    };
    if (auto r = rec(0, 0)) return *r;
    throw RealizationFailure("mixed sphere realization failed for " + target.to_string(), trace);
}

// ---------------------------------------------------------------- inhomogeneous 2-part

bool gap_condition(const StandardForm& target, std::string* reason)
{
    const auto comps = components_at(target, 2);
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    for (std::size_t j = 1; j < comps.size(); ++j) {
        if (comps[j].even) return fail("component of exponent " + std::to_string(comps[j].k) + " is even");
        if (comps[j - 1].k < comps[j].k + 2)
            return fail("exponents " + std::to_string(comps[j - 1].k) + " and " + std::to_string(comps[j].k) +
                        " differ by less than 2");
    }
    if (reason) reason->clear();
    return true;
}

RealizationResult realize_gap(const StandardForm& target, RealizeMode mode)
{
    if (target.empty() || target.at_prime(2).atoms.size() != target.atoms.size())
        throw DomainError("realize_gap needs a nonempty 2-primary target");
    const auto comps = components_at(target, 2);
    if (comps.size() == 1) return realize_two_homog(target, mode);
    std::string why;
    if (!gap_condition(target, &why)) throw Unrealizable("2-primary part violates the gap condition: " + why);
    if (mode == RealizeMode::Auto) {
        try {
            return realize_gap(target, RealizeMode::Flat);
        } catch (const RealizationFailure&) {
            return realize_gap(target, RealizeMode::Sphere);
        }
    }
    const bool flat = mode == RealizeMode::Flat;
    const Comp& top = comps.front();
    const Integer a1 = pw(2, top.k);
    std::vector<std::string> trace;

    // Top block: recipe numerators, then the same orders with searched numerators.
    std::vector<Slot> head, open_head;
    if (top.even) {
        auto pat = even_pattern(top.rank + 2, top.has_e1, top.rank);
        head = fixed_slots({{a1, 0}});
        for (std::size_t i = 1; i < (flat ? pat.size() : pat.size() - 1); ++i) head.push_back({a1, 1, {pat[i]}});
        open_head = {{a1, 1, {}}, {a1, flat ? top.rank + 1 : top.rank, kOddValues}};
    } else {
        const Integer big = pw(2, top.k + 2);
        head = {{big, 1, {}}};
        if (flat) head.push_back({big, 1, {1}});
        for (const auto& b : odd_values_of(top)) head.push_back({a1, 1, {3 * b}});
        open_head = {{big, 1, {}}};
        if (flat) open_head.push_back({big, 1, kOddValues});
        open_head.push_back({a1, top.rank, kOddValues});
    }
    if (!flat) head[0].values = open_head[0].values = kOddValues;
    // Lower numerators: odd, |beta| <= 4 * 2^{k_1}, smallest first.
    std::vector<Integer> wide;
    for (Integer b = 1; b <= 4 * a1; b += 2) {
        wide.push_back(b);
        wide.push_back(-b);
    }
    std::vector<Slot> lower;
    for (std::size_t j = 1; j < comps.size(); ++j) lower.push_back({pw(2, comps[j].k), comps[j].rank, wide});

    std::vector<Slot> recipe = head, searched = open_head;
    recipe.insert(recipe.end(), lower.begin(), lower.end());
    searched.insert(searched.end(), lower.begin(), lower.end());

    const std::string tag = std::string("gap-") + (flat ? "flat" : "sphere");
    if (auto s = skeleton_search(recipe, flat, target, kBudget)) return verified_result(*s, tag, trace);
    trace.push_back("recipe top block with searched lower numerators did not verify");
    if (auto r = try_skeletons({searched}, flat, target, trace)) return *r;
    throw RealizationFailure("gap " + to_string(mode) + " realization failed for " + target.to_string(), trace);
}

bool even_component_criterion(const SeifertData& s)
{
    require_valid(s);
    const SeifertData t = reorder_at_prime(s, 2).data;
    if (t.size() < 3) return false;
    const long v = padic_val(t.pairs[0].alpha, 2);
    if (v < 1) return false;
    if (padic_val(t.pairs[1].alpha, 2) != v || padic_val(t.pairs[2].alpha, 2) != v) return false;
    Rational x = Rational(t.pairs[0].alpha) * euler_invariant(s);
    x.canonicalize();
    return x == 0 || (x.get_num() % 2 != 0 && x.get_den() % 2 != 0);
}

// ---------------------------------------------------------------- dispatch

RealizationResult realize(const StandardForm& input, RealizeMode mode)
{
    StandardForm target = normalize(input);
    if (target.empty()) {
        SeifertData s = mode == RealizeMode::Sphere ? make_seifert({{2, 1}, {3, -1}}) : make_seifert({{2, 1}, {2, -1}});
        if (!realizes(s, target)) throw RealizationFailure("trivial realization did not verify", {});
        return verified_result(s, "trivial", {});
    }
    const StandardForm two = target.at_prime(2);
    const StandardForm odd = odd_part(target);
    if (components_at(two, 2).size() <= 1) return realize_mixed(target, mode);

    std::string why;
    if (!gap_condition(two, &why)) throw Unrealizable("2-primary part violates the gap condition: " + why);
    if (odd.empty()) return realize_gap(target, mode);
    if (mode == RealizeMode::Sphere)
        throw Unrealizable("sphere realization of an inhomogeneous 2-part with odd torsion is not implemented");

    std::vector<RealizationResult> parts{realize_gap(two, RealizeMode::Flat)};
    for (const auto& p : odd.primes()) parts.push_back(realize_odd_flat(target.at_prime(p), p));
    std::string tag = "mixed-flat[";
    std::vector<std::string> trace;
    for (const auto& r : parts) {
        tag += (tag.back() == '[' ? "" : "+") + r.construction;
        trace.insert(trace.end(), r.trace.begin(), r.trace.end());
    }
    SeifertData s = concat(parts);
    if (realizes(s, target)) return verified_result(s, tag + "]", trace);
    throw RealizationFailure("flat fibre sum did not verify for " + target.to_string(), trace);
}

std::vector<SeifertData> exhaustive_search(const StandardForm& input, const SearchBounds& bounds)
{
    const StandardForm target = normalize(input);
    if (!odd_part(target).empty()) throw DomainError("exhaustive_search needs a 2-primary target");
    std::vector<SeifertPair> kinds;
    for (const auto& a : bounds.alphas)
        for (long b = -bounds.max_beta; b <= bounds.max_beta; ++b)
            if (b != 0 && gcd(Integer(b), a) == 1) kinds.push_back({a, b});

    std::vector<SeifertData> found;
    std::vector<SeifertPair> cur;
    IsoOptions opt;
    opt.brute_bound = bounds.oracle_bound;

    auto test = [&]() {
        SeifertData s = from_pairs(cur);
        for (const auto& q : relevant_primes(s))
            if (q != 2 && !local_orders(s, q).generators.empty()) return;
        if (!orders_match(s, 2, target)) return;
        GramPairing g = gram_matrix(s, 2);
        if (g.empty() || is_isomorphic(classify(g).form, target, opt).isomorphic) found.push_back(std::move(s));
    };
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() >= 2) test();
        if (cur.size() == bounds.max_r) return;
        for (std::size_t i = start; i < kinds.size(); ++i) {
            cur.push_back(kinds[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return found;
}

}  // namespace linkform
