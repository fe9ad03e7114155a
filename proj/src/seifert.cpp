#include "linkform/seifert.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace linkform {

std::string SeifertData::to_string() const
{
    std::string out = "M(" + std::to_string(genus) + ";";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) out += ",";
        out += "(" + pairs[i].alpha.get_str() + "," + pairs[i].beta.get_str() + ")";
    }
    return out + ")";
}

SeifertData make_seifert(std::initializer_list<std::pair<long, long>> pairs, unsigned long genus)
{
    SeifertData s;
    s.genus = genus;
    for (auto [a, b] : pairs) s.pairs.push_back({Integer(a), Integer(b)});
    return s;
}

static std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

InvalidSeifertData::InvalidSeifertData(std::vector<std::string> v)
    : std::invalid_argument("invalid Seifert data: " + join(v)), violations(std::move(v))
{
}

std::vector<std::string> validate(const SeifertData& s)
{
    std::vector<std::string> out;
    if (s.pairs.empty()) out.push_back("empty pair list (r >= 1 required)");
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        const auto& [a, b] = s.pairs[i];
        std::string where = "pair " + std::to_string(i + 1) + " (" + a.get_str() + "," + b.get_str() + ")";
        if (a < 2) out.push_back(where + ": alpha<2");
        Integer g = gcd(a, b);
        if (a != 0 && g != 1) out.push_back(where + ": gcd=" + g.get_str());
    }
    return out;
}

void require_valid(const SeifertData& s)
{
    auto v = validate(s);
    if (!v.empty()) throw InvalidSeifertData(std::move(v));
}

Rational euler_invariant(const SeifertData& s)
{
    Rational e = 0;
    for (const auto& [a, b] : s.pairs) e -= Rational(b, a);
    e.canonicalize();
    return e;
}

Reordered reorder_at_prime(const SeifertData& s, const Integer& p)
{
    Reordered r;
    r.perm.resize(s.pairs.size());
    std::iota(r.perm.begin(), r.perm.end(), std::size_t{0});
    std::vector<long> val;
    for (const auto& pr : s.pairs) val.push_back(padic_val(pr.alpha, p));
    std::stable_sort(r.perm.begin(), r.perm.end(), [&](std::size_t i, std::size_t j) { return val[i] > val[j]; });
    r.data.genus = s.genus;
    for (auto i : r.perm) r.data.pairs.push_back(s.pairs[i]);
    return r;
}

SeifertData fibre_sum(const SeifertData& a, const SeifertData& b)
{
    require_valid(a);
    require_valid(b);
    SeifertData out;
    out.genus = a.genus + b.genus;
    out.pairs = a.pairs;
    out.pairs.insert(out.pairs.end(), b.pairs.begin(), b.pairs.end());
    return out;
}

std::size_t r_p(const SeifertData& s, const Integer& p)
{
    return static_cast<std::size_t>(
        std::count_if(s.pairs.begin(), s.pairs.end(), [&](const SeifertPair& pr) { return pr.alpha % p == 0; }));
}

std::vector<Integer> relevant_primes(const SeifertData& s)
{
    std::set<Integer> ps;
    for (const auto& pr : s.pairs)
        for (auto& q : prime_divisors(pr.alpha)) ps.insert(q);
    Rational e = euler_invariant(s);
    if (e != 0)
        for (auto& q : prime_divisors(e.get_num())) ps.insert(q);
    return {ps.begin(), ps.end()};
}

SeifertData reverse_orientation(const SeifertData& s)
{
    SeifertData out = s;
    for (auto& pr : out.pairs) pr.beta = -pr.beta;
    return out;
}

}  // namespace linkform
