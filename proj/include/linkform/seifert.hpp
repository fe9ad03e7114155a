#pragma once

#include "linkform/arith.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace linkform {

struct SeifertPair {
    Integer alpha;
    Integer beta;

    bool operator==(const SeifertPair&) const = default;
};

// M(g; (alpha_1, beta_1), ..., (alpha_r, beta_r)) over an orientable base of genus g.
struct SeifertData {
    unsigned long genus = 0;
    std::vector<SeifertPair> pairs;

    std::size_t size() const { return pairs.size(); }
    bool operator==(const SeifertData&) const = default;

    std::string to_string() const;
};

SeifertData make_seifert(std::initializer_list<std::pair<long, long>> pairs, unsigned long genus = 0);

struct InvalidSeifertData : std::invalid_argument {
    std::vector<std::string> violations;
    explicit InvalidSeifertData(std::vector<std::string> v);
};

// Empty when S is valid.
std::vector<std::string> validate(const SeifertData& s);
void require_valid(const SeifertData& s);

// -sum beta_i / alpha_i
Rational euler_invariant(const SeifertData& s);

struct Reordered {
    SeifertData data;
    std::vector<std::size_t> perm;  // data.pairs[i] == original.pairs[perm[i]]
};

// Stable sort by descending p-adic valuation of alpha.
Reordered reorder_at_prime(const SeifertData& s, const Integer& p);

SeifertData fibre_sum(const SeifertData& a, const SeifertData& b);

// Number of cone points whose order is divisible by p.
std::size_t r_p(const SeifertData& s, const Integer& p);

// Primes at which the torsion of H_1 can be nontrivial: divisors of the
// cone point orders and of the numerator of the Euler invariant.
std::vector<Integer> relevant_primes(const SeifertData& s);

// Orientation reversal: every beta negated.
SeifertData reverse_orientation(const SeifertData& s);

}  // namespace linkform
