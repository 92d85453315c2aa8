#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace simerka {

using Int = mpz_class;

/// Remainder in [0, |m|).
inline Int floor_mod(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0) r += abs(m);
    return r;
}

inline Int floor_div(const Int& a, const Int& m)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

inline Int exact_div(const Int& a, const Int& m)
{
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// g = s*a + t*b, g >= 0.
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t)
{
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int isqrt(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int ipow(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powm(const Int& base, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool fits_u64(const Int& n)
{
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& n)
{
    static_assert(sizeof(unsigned long) == 8, "LP64 expected");
    return mpz_get_ui(n.get_mpz_t());
}

inline Int from_u64(std::uint64_t v)
{
    return Int(static_cast<unsigned long>(v));
}

inline Int from_i64(std::int64_t v)
{
    return Int(static_cast<long>(v));
}

inline bool fits_i64(const Int& n)
{
    return mpz_fits_slong_p(n.get_mpz_t()) != 0;
}

inline std::int64_t to_i64(const Int& n)
{
    return mpz_get_si(n.get_mpz_t());
}

inline std::string to_string(const Int& n)
{
    return n.get_str();
}

/// Parses an optionally signed decimal integer; throws Error(parse_error).
Int parse_int(const std::string& text);

} // namespace simerka
