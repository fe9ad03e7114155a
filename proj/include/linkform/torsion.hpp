#pragma once

// Presentations of H_1(M(g;S)), their Smith normal form, and the localized
// cyclic decomposition over the generators q_i', s.

#include "linkform/seifert.hpp"

#include <string>
#include <vector>

namespace linkform {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

struct Presentation {
    std::vector<std::string> generators;
    IntMatrix relations;  // rows are relations, columns generators
};

// Generators q_1..q_r, h; rows (sum q_i = 0) and (alpha_i q_i + beta_i h = 0).
Presentation presentation_matrix(const SeifertData& s);

struct SmithForm {
    std::vector<Integer> diagonal;  // d_1 | d_2 | ... , all >= 0
    IntMatrix left;                 // unimodular U
    IntMatrix right;                // unimodular V, with U * A * V diagonal
};

SmithForm smith_normal_form(const IntMatrix& a);

struct LocalGenerator {
    std::string label;
    Integer order;  // power of p, > 1
    long exponent;  // v_p(order)
};

struct LocalDecomposition {
    Integer prime;
    std::vector<LocalGenerator> generators;
    long free_rank = 0;  // contribution of the base-independent part (2g excluded)
    bool via_smith = false;
};

struct Unsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Localized torsion at p. For r >= 2 the generators are q_i' (i >= 3) and s in
// the order of the p-reordered data; for r = 1 the cyclic group is read off
// the Smith normal form.
LocalDecomposition local_orders(const SeifertData& s, const Integer& p);

struct StructureDiscrepancy {
    Integer prime;
    std::vector<Integer> smith_orders;
    std::vector<Integer> local;
};

struct StructureReport {
    std::vector<Integer> primes;
    std::vector<std::vector<Integer>> orders;  // per prime, sorted descending
    long free_rank_smith = 0;
    long free_rank_predicted = 0;
    std::vector<StructureDiscrepancy> discrepancies;

    bool ok() const { return discrepancies.empty() && free_rank_smith == free_rank_predicted; }
};

// Cross-checks local_orders against the Smith normal form of the global
// presentation at every relevant prime, and the free rank 2g + [eps == 0].
StructureReport structure_check(const SeifertData& s);

// p-power parts (> 1) of the torsion invariants of coker(A).
std::vector<Integer> smith_p_orders(const SmithForm& f, const Integer& p);

}  // namespace linkform
