#pragma once

// Finite linking pairings: homogeneous splitting, standard atoms, invariants,
// and isomorphism testing (normal forms backed by exhaustive search).

#include "linkform/gram.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace linkform {

// Cyc(p,k,a): l(x,y) = xy*a/p^k on Z/p^k.  E0(k), E1(k): the even rank-2
// pairings on (Z/2^k)^2 with matrices [[0,1],[1,0]] and [[2,1],[1,2]].
struct Atom {
    enum class Kind { Cyc = 0, E0 = 1, E1 = 2 };
    Kind kind = Kind::Cyc;
    Integer p = 2;
    long k = 1;
    Integer a = 1;

    static Atom cyc(const Integer& p, long k, const Integer& a);
    static Atom e0(long k);
    static Atom e1(long k);

    std::string to_string() const;
    bool operator==(const Atom&) const = default;
};

bool atom_less(const Atom& x, const Atom& y);

struct StandardForm {
    std::vector<Atom> atoms;

    void sort();
    bool empty() const { return atoms.empty(); }
    std::vector<Integer> primes() const;
    StandardForm at_prime(const Integer& p) const;
    Integer group_order() const;
    std::string to_string() const;
    bool operator==(const StandardForm&) const = default;
};

StandardForm operator+(const StandardForm& a, const StandardForm& b);
StandardForm negate(const StandardForm& f);

// Gram pairing of the p-primary atoms of f.
GramPairing to_gram(const StandardForm& f, const Integer& p);

// A pairing on (Z/p^k)^rho given by L = p^k * l(e_i, e_j) mod p^k.
struct HomogeneousComponent {
    Integer p = 2;
    long k = 1;
    IntMatrix matrix;

    std::size_t rank() const { return matrix.size(); }
    Integer modulus() const { return ipow(p, static_cast<unsigned long>(k)); }
};

GramPairing to_gram(const HomogeneousComponent& c);

struct BlockDecomposition {
    std::vector<HomogeneousComponent> components;   // strictly decreasing k
    std::vector<std::vector<std::vector<Integer>>> bases;  // basis vectors per component, in input coordinates
};

struct SingularPairing : std::domain_error {
    using std::domain_error::domain_error;
};

BlockDecomposition block_diagonalize(const GramPairing& g);

enum class Parity { Even, Odd };
std::string to_string(Parity p);

Parity parity(const HomogeneousComponent& c);
SquareClass d_invariant(const HomogeneousComponent& c);
std::vector<Atom> diagonalize_odd(const HomogeneousComponent& c);
std::pair<std::size_t, std::size_t> even_decompose(const HomogeneousComponent& c);
bool hyperbolic_test(const HomogeneousComponent& c);

// Canonical atom list of a homogeneous component.
std::vector<Atom> normal_atoms(const HomogeneousComponent& c);

struct ComponentReport {
    HomogeneousComponent component;
    std::optional<Parity> parity;  // p = 2 only
    std::optional<SquareClass> d;  // odd p only
    std::vector<Atom> atoms;
};

struct PrimeReport {
    Integer p;
    std::vector<ComponentReport> components;
};

struct ClassificationReport {
    std::vector<PrimeReport> primes;
    StandardForm form;
};

ClassificationReport classify(const GramPairing& g);
ClassificationReport classify(const std::vector<GramPairing>& per_prime);

// Componentwise canonical form of an atom list.
StandardForm normalize(const StandardForm& f);

struct IsoResult {
    enum class Method { NormalForm, BruteForce, Normalized };
    bool isomorphic = false;
    Method method = Method::NormalForm;
    std::string to_string() const;
};

struct IsoOptions {
    bool allow_negation = false;  // also accept f ~ -g
    bool force_brute_force = false;
    std::uint64_t brute_bound = 1u << 10;
};

IsoResult is_isomorphic(const StandardForm& f, const StandardForm& g, const IsoOptions& opt = {});
IsoResult is_isomorphic(const GramPairing& f, const GramPairing& g, const IsoOptions& opt = {});

struct BruteForceResult {
    bool isomorphic = false;
    // Images of the generators of the first pairing, as coordinate vectors in the second.
    std::vector<std::vector<std::uint32_t>> witness;
};

// Backtracking over generator images; throws OracleBoundExceeded above bound.
BruteForceResult brute_force_isomorphic(const GramPairing& a, const GramPairing& b, std::uint64_t bound = 1u << 10);

// Determinant invariant read off Seifert data (p odd, homogeneous localized
// torsion); nullopt when the clean homogeneity hypotheses are not met,
// DomainError when the torsion is not homogeneous. For eps != 0 the sign
// is (-1)^{r_p}; printed_sign selects (-1)^{r_p - 1} instead.
std::optional<SquareClass> predicted_d_invariant(const SeifertData& s, const Integer& p, bool printed_sign = false);

// Whether the localized torsion at p is homogeneous, and its exponent.
std::optional<long> homogeneous_exponent(const SeifertData& s, const Integer& p);

struct TCount {
    long k = 0;
    long t = 0;
    long rho = 0;
};

// Number of diagonal entries of L divisible by 4 in the even 2-adic setting;
// throws DomainError when the even-valuation hypotheses fail.
TCount t_count(const SeifertData& s);

// Hyperbolicity predicted from t and rho mod 4.
bool t_rule_hyperbolic(long t, long rho);

// Parity predicted from Seifert data at p = 2 (homogeneous case).
Parity seifert_parity_prediction(const SeifertData& s);

}  // namespace linkform
