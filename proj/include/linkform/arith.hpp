#pragma once

// Exact integer, rational and modular helpers shared by every other module.
// All arithmetic is arbitrary precision (GMP).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace linkform {

using Integer = mpz_class;
using Rational = mpq_class;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

Integer ipow(const Integer& base, unsigned long exp);

// Least non-negative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);

// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
Integer inv_mod(const Integer& a, const Integer& m);

// Residue of the p-integral rational q modulo m (m a power of p).
Integer rational_mod(const Rational& q, const Integer& m);

bool is_prime(const Integer& n);

// Distinct prime divisors of |n| by trial division, ascending.
std::vector<Integer> prime_divisors(const Integer& n);

/// p-adic valuation of a nonzero rational (may be negative).
long padic_val(const Rational& q, const Integer& p);
long padic_val(const Integer& z, const Integer& p);

/// q / p^{v_p(q)}.
Rational unit_part(const Rational& q, const Integer& p);

/// The class of a p-adic unit in F_p^x / squares (odd p), or (Z/8)^x for p = 2.
class SquareClass {
public:
    SquareClass() = default;
    // value: +1 square / -1 nonsquare for odd p; residue 1,3,5,7 for p = 2.
    SquareClass(Integer prime, int value);

    static SquareClass of(const Rational& unit, const Integer& p);

    const Integer& prime() const { return prime_; }
    int value() const { return value_; }
    bool is_square() const;

    SquareClass operator*(const SquareClass& other) const;
    bool operator==(const SquareClass& other) const = default;

    std::string to_string() const;

private:
    Integer prime_ = 3;
    int value_ = 1;
};

inline SquareClass square_class(const Rational& u, const Integer& p) { return SquareClass::of(u, p); }

// Legendre symbol of a unit a modulo an odd prime p (+1 or -1).
int legendre(const Integer& a, const Integer& p);

// Least positive quadratic nonresidue modulo the odd prime p.
Integer least_nonresidue(const Integer& p);

struct Bezout {
    Integer g;
    Integer m;
    Integer n;
};

/// g = gcd(a,b) = m*a + n*b, choosing the solution with the smallest |n|
/// (ties resolved towards n > 0).
Bezout ext_gcd(const Integer& a, const Integer& b);

/// Element of Q/Z stored as its representative in [0, 1).
class QmodZ {
public:
    QmodZ() = default;
    explicit QmodZ(const Rational& q);

    const Rational& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    QmodZ operator+(const QmodZ& o) const { return QmodZ(value_ + o.value_); }
    QmodZ operator-(const QmodZ& o) const { return QmodZ(value_ - o.value_); }
    QmodZ operator-() const { return QmodZ(-value_); }
    QmodZ operator*(const Integer& k) const { return QmodZ(value_ * Rational(k)); }
    bool operator==(const QmodZ& o) const { return value_ == o.value_; }

    // Component in the p-primary summand Z[1/p]/Z of Q/Z.
    QmodZ p_part(const Integer& p) const;

    std::string to_string() const { return linkform::to_string(value_); }

private:
    Rational value_{0};
};

}  // namespace linkform
