#pragma once

// The Witt group W(Q/Z) = (+)_p W(F_p), classes of cyclic pairings, the
// Seifert formula, and exhaustive metabolizer oracles.

#include "linkform/finite_form.hpp"
#include "linkform/pairing.hpp"

#include <map>
#include <string>
#include <vector>

namespace linkform {

// W(F_p): Z/2 (p = 2), Z/4 (p = 3 mod 4, <1> = 1, nonsquare = 3),
// (Z/2)^2 (p = 1 mod 4, coordinates over <1>, <u>, u the least nonresidue).
struct LocalWitt {
    Integer p = 2;
    int a = 0;
    int b = 0;

    static LocalWitt zero(const Integer& p);
    // Class of the rank-1 form <u> over F_p.
    static LocalWitt of_unit(const Integer& p, const Integer& u);
    // Every element of W(F_p).
    static std::vector<LocalWitt> all(const Integer& p);
    static LocalWitt parse(const Integer& p, const std::string& text);

    bool is_zero() const { return a == 0 && b == 0; }
    int order() const;
    LocalWitt operator+(const LocalWitt& o) const;
    LocalWitt operator-() const;
    bool operator==(const LocalWitt&) const = default;
    std::string to_string() const;
};

struct WittElement {
    std::map<Integer, LocalWitt> parts;  // no zero entries

    void add(const LocalWitt& w);
    bool is_zero() const { return parts.empty(); }
    WittElement operator+(const WittElement& o) const;
    WittElement operator-() const;
    bool operator==(const WittElement&) const = default;
    std::string to_string() const;
};

WittElement negate(const WittElement& w);

// Class of Cyc(p,k,b): zero for k even, <b mod p> for k odd.
LocalWitt witt_cyclic(const Integer& p, long k, const Integer& b);

// w(b/a): the class of l_{b/a} on Z/a, split over the primes of a.
WittElement witt_rational(const Rational& w);

WittElement witt_pairing(const StandardForm& f);

enum class WittSign { AsPrinted, Negated };

// -sum w(beta_i/alpha_i), with the extra term -w(1/(num*den)) when
// eps = num/den != 0. Negated flips the global sign.
WittElement witt_seifert(const SeifertData& s, WittSign sign = WittSign::AsPrinted);

struct MetabolizerResult {
    bool metabolic = false;
    std::vector<std::vector<std::uint32_t>> generators;  // coordinates
};

// Search for P with P = P^perp. Non-square order returns false at once;
// throws OracleBoundExceeded above bound.
MetabolizerResult metabolic_oracle(const GramPairing& g, std::uint64_t bound = 1u << 16);

// Homogeneous pairings only: a free isotropic direct summand of half rank
// (for even 2-adic forms this is equivalent to hyperbolicity).
MetabolizerResult split_metabolizer_oracle(const GramPairing& g, std::uint64_t bound = 1u << 16);

}  // namespace linkform
