#pragma once

// Explicit enumeration of a small finite linking pairing: every group element
// is materialized so that oracles (isomorphism, metabolizer and nonsingularity
// searches) can work by exhaustion.

#include "linkform/gram.hpp"

#include <cstdint>
#include <vector>

namespace linkform {

struct OracleBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FiniteForm {
public:
    // Throws OracleBoundExceeded when |G| > bound.
    FiniteForm(const GramPairing& g, std::uint64_t bound);

    std::uint64_t size() const { return size_; }
    std::size_t rank() const { return radix_.size(); }
    std::uint64_t modulus() const { return modulus_; }  // p^K, K the max exponent
    std::uint64_t prime() const { return prime_; }

    const std::uint32_t* coords(std::uint64_t x) const { return &coords_[x * rank()]; }
    std::uint64_t index_of(const std::vector<std::uint32_t>& c) const;

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t scale(std::uint64_t x, std::uint64_t c) const;
    std::uint64_t generator(std::size_t i) const;

    // p^K * l(x, y) mod p^K.
    std::uint64_t pair(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t self(std::uint64_t x) const { return self_[x]; }
    std::uint64_t order(std::uint64_t x) const { return order_[x]; }
    std::uint64_t generator_order(std::size_t i) const { return radix_[i]; }

    // Subgroup generated by the given elements, as a membership mask.
    std::vector<char> span(const std::vector<std::uint64_t>& gens) const;

    bool nonsingular() const;

private:
    std::uint64_t prime_ = 2;
    std::uint64_t modulus_ = 1;
    std::uint64_t size_ = 1;
    std::vector<std::uint64_t> radix_;
    std::vector<std::uint64_t> stride_;
    std::vector<std::uint64_t> gram_;   // rank x rank, scaled to modulus
    std::vector<std::uint32_t> coords_;
    std::vector<std::uint64_t> dual_;   // size x rank: l(x, e_j) scaled
    std::vector<std::uint64_t> self_;
    std::vector<std::uint64_t> order_;
};

}  // namespace linkform
