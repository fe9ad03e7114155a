#include "linkform/arith.hpp"

#include <cctype>

namespace linkform {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw DomainError("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational '" + text + "'");
    }
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer ipow(const Integer& base, unsigned long exp)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Integer mod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer inv_mod(const Integer& a, const Integer& m)
{
    if (m == 1) return 0;
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("not invertible: " + a.get_str() + " mod " + m.get_str());
    return r;
}

Integer rational_mod(const Rational& q, const Integer& m)
{
    return mod(q.get_num() * inv_mod(q.get_den(), m), m);
}

bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<Integer> prime_divisors(const Integer& n)
{
    std::vector<Integer> out;
    Integer m = abs(n);
    if (m <= 1) return out;
    for (Integer d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

long padic_val(const Integer& z, const Integer& p)
{
    if (z == 0) throw DomainError("valuation of zero");
    if (p < 2) throw DomainError("valuation at non-prime " + p.get_str());
    Integer t = abs(z);
    long v = 0;
    while (t % p == 0) {
        t /= p;
        ++v;
    }
    return v;
}

long padic_val(const Rational& q, const Integer& p)
{
    if (q == 0) throw DomainError("valuation of zero");
    return padic_val(q.get_num(), p) - padic_val(q.get_den(), p);
}

Rational unit_part(const Rational& q, const Integer& p)
{
    long v = padic_val(q, p);
    Rational scale = v >= 0 ? Rational(ipow(p, v)) : Rational(1, ipow(p, -v));
    Rational u = q / scale;
    u.canonicalize();
    return u;
}

int legendre(const Integer& a, const Integer& p)
{
    int j = mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
    if (j == 0) throw DomainError("legendre symbol of a non-unit");
    return j;
}

Integer least_nonresidue(const Integer& p)
{
    for (Integer a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw DomainError("no nonresidue modulo " + p.get_str());
}

SquareClass::SquareClass(Integer prime, int value) : prime_(std::move(prime)), value_(value)
{
    if (prime_ == 2) {
        if (value_ != 1 && value_ != 3 && value_ != 5 && value_ != 7)
            throw DomainError("2-adic square class must be 1, 3, 5 or 7");
    } else if (value_ != 1 && value_ != -1) {
        throw DomainError("odd square class must be +1 or -1");
    }
}

SquareClass SquareClass::of(const Rational& unit, const Integer& p)
{
    if (unit == 0 || padic_val(unit, p) != 0)
        throw DomainError("square class of a non-unit " + linkform::to_string(unit));
    if (p == 2) {
        // Odd denominators are their own inverses mod 8.
        Integer r = mod(unit.get_num() * unit.get_den(), 8);
        return SquareClass(p, static_cast<int>(r.get_si()));
    }
    return SquareClass(p, legendre(unit.get_num() * unit.get_den(), p));
}

bool SquareClass::is_square() const { return value_ == 1; }

SquareClass SquareClass::operator*(const SquareClass& other) const
{
    if (prime_ != other.prime_) throw DomainError("square classes at different primes");
    if (prime_ == 2) return SquareClass(prime_, (value_ * other.value_) % 8);
    return SquareClass(prime_, value_ * other.value_);
}

std::string SquareClass::to_string() const
{
    if (prime_ == 2) return std::to_string(value_);
    return value_ == 1 ? "square" : "nonsquare";
}

Bezout ext_gcd(const Integer& a, const Integer& b)
{
    if (a == 0 && b == 0) throw DomainError("ext_gcd(0, 0)");
    Bezout r;
    mpz_gcdext(r.g.get_mpz_t(), r.m.get_mpz_t(), r.n.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (b == 0) {
        r.m = sgn(a);
        r.n = 0;
        return r;
    }
    if (a == 0) {
        r.m = 0;
        r.n = sgn(b);
        return r;
    }
    // Solutions are (m + t*b/g, n - t*a/g).
    Integer step = abs(a) / r.g;
    Integer lo = mod(r.n, step);
    Integer hi = lo - step;
    Integer n = (abs(hi) < abs(lo)) ? hi : lo;
    if (abs(hi) == abs(lo)) n = lo;  // lo >= 0 wins the tie
    r.n = n;
    r.m = (r.g - n * b) / a;
    return r;
}

QmodZ::QmodZ(const Rational& q)
{
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    value_ = q - Rational(fl);
    value_.canonicalize();
}

QmodZ QmodZ::p_part(const Integer& p) const
{
    if (value_ == 0) return *this;
    Integer den = value_.get_den();
    Integer pk = 1;
    while (den % p == 0) {
        den /= p;
        pk *= p;
    }
    if (pk == 1) return QmodZ();
    // value = a/(pk*den); the p-component is a*den^{-1}/pk.
    Integer c = mod(value_.get_num() * inv_mod(den, pk), pk);
    return QmodZ(make_rational(c, pk));
}

}  // namespace linkform
