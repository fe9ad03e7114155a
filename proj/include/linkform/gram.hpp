#pragma once

// Gram pairings on finite abelian p-groups, and their evaluation from Seifert
// data by the closed-form linking numbers of the generators q_i', s.

#include "linkform/torsion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linkform {

// A linking pairing on the p-group (+)_i Z/orders[i], given on generators.
struct GramPairing {
    Integer prime = 2;
    std::vector<std::string> labels;
    std::vector<Integer> orders;
    std::vector<std::vector<QmodZ>> gram;

    std::size_t rank() const { return orders.size(); }
    bool empty() const { return orders.empty(); }
    Integer group_order() const;
    long max_exponent() const;

    bool operator==(const GramPairing&) const = default;
};

GramPairing orthogonal_sum(const GramPairing& a, const GramPairing& b);
GramPairing negate(const GramPairing& g);

// Evaluate the linking pairing of M(g;S) localized at p. The Bezout pair for
// (alpha_2, beta_2) defaults to the canonical one from ext_gcd.
GramPairing gram_matrix(const SeifertData& s, const Integer& p,
                        const std::optional<std::pair<Integer, Integer>>& bezout = std::nullopt);

struct WellDefinedReport {
    std::vector<std::string> violations;
    bool nonsingularity_checked = false;
    bool ok() const { return violations.empty(); }
};

// Symmetry, order_i * gram(i,j) in Z, and brute-force nonsingularity when
// the group order is at most brute_bound.
WellDefinedReport welldefined_check(const GramPairing& g, unsigned long brute_bound = 1ul << 12);

}  // namespace linkform
