#pragma once

// Seifert data realizing prescribed linking pairings: explicit recipes, each
// checked by classifying the resulting pairing, with a bounded deterministic
// search over the same cone-point skeleton when a recipe misses.

#include "linkform/pairing.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkform {

enum class RealizeMode { Flat, Sphere, Auto };  // flat: eps = 0; sphere: eps != 0
std::string to_string(RealizeMode m);
RealizeMode parse_mode(const std::string& s);

struct RealizationResult {
    SeifertData seifert;
    bool verified = false;
    std::string construction;         // recipe branch, or "search:<skeleton>"
    std::vector<std::string> trace;   // recipe misses and substitutions
};

// The target lies outside what the implemented constructions cover.
struct Unrealizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction and its fallback search both failed verification.
struct RealizationFailure : std::runtime_error {
    std::vector<std::string> trace;
    RealizationFailure(const std::string& what, std::vector<std::string> t)
        : std::runtime_error(what), trace(std::move(t))
    {
    }
};

// classify(gram(S, p)) is isomorphic to target at every prime dividing the
// torsion of S or the target.
bool realizes(const SeifertData& s, const StandardForm& target, std::uint64_t brute_bound = 1u << 14);

RealizationResult realize_odd_flat(const StandardForm& target, const Integer& p);
RealizationResult realize_odd_sphere(const StandardForm& target);
RealizationResult realize_two_homog(const StandardForm& target, RealizeMode mode);
RealizationResult realize_mixed(const StandardForm& target, RealizeMode mode);
RealizationResult realize_gap(const StandardForm& target, RealizeMode mode);

// Components of the 2-part have k_j >= k_{j+1} + 2 and all but the first are odd.
bool gap_condition(const StandardForm& target, std::string* reason = nullptr);

// Literal criterion: the three largest even cone orders share their 2-adic
// valuation and alpha_1 * eps is zero or odd.
bool even_component_criterion(const SeifertData& s);

// Dispatch over the constructions above; Auto tries flat, then sphere.
RealizationResult realize(const StandardForm& target, RealizeMode mode = RealizeMode::Auto);

struct SearchBounds {
    std::size_t max_r = 5;
    std::vector<Integer> alphas{2, 4, 8};
    long max_beta = 7;
    std::uint64_t oracle_bound = 1u << 12;
};

// All pair multisets (2 <= r <= max_r, alpha from the list, 0 < |beta| <= max_beta)
// with trivial odd torsion whose 2-local pairing is isomorphic to the
// 2-primary target. Deterministic order; one representative per multiset.
std::vector<SeifertData> exhaustive_search(const StandardForm& target, const SearchBounds& bounds = {});

}  // namespace linkform
