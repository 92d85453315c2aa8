#include "simerka/composition.hpp"

#include "simerka/errors.hpp"

namespace simerka {

namespace {

void check_compatible(const QForm& lhs, const QForm& rhs)
{
    validate(lhs);
    validate(rhs);
    if (discriminant_value(lhs) != discriminant_value(rhs))
        throw Error(Errc::discriminant_mismatch,
                    "cannot compose " + to_string(lhs) + " and " + to_string(rhs) +
                        ": discriminants differ");
}

QForm compose_unchecked(const QForm& f1, const QForm& f2, const Int& disc)
{
    const QForm& lo = f1.a <= f2.a ? f1 : f2;
    const QForm& hi = f1.a <= f2.a ? f2 : f1;
    const Int s = (lo.b + hi.b) / 2;
    const Int n = hi.b - s;

    Int y1, d;
    if (divides(lo.a, hi.a)) {
        y1 = 0;
        d = lo.a;
    } else {
        Int u, v;
        d = xgcd(hi.a, lo.a, u, v);
        y1 = u;
    }

    Int x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int u, v;
        d1 = xgcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }

    const Int v1 = exact_div(lo.a, d1);
    const Int v2 = exact_div(hi.a, d1);
    const Int r = floor_mod(Int(y1 * y2 * n - x2 * hi.c), v1);
    const Int b3 = hi.b + 2 * v2 * r;
    const Int a3 = v1 * v2;
    const Int c3 = exact_div(Int(b3 * b3 - disc), Int(4 * a3));
    return reduce(QForm{a3, b3, c3});
}

// Word-size twin of the above for |d| < 2^50. Inputs are reduced first so
// that every intermediate stays well inside 128 bits.
using i128 = __int128;

struct Small {
    i128 a, b, c;
};

i128 mod128(i128 a, i128 m)
{
    const i128 r = a % m;
    return r < 0 ? r + m : r;
}

i128 xgcd128(i128 a, i128 b, i128& s, i128& t)
{
    i128 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        const i128 q = a / b;
        i128 tmp = a - q * b;
        a = b, b = tmp;
        tmp = s0 - q * s1, s0 = s1, s1 = tmp;
        tmp = t0 - q * t1, t0 = t1, t1 = tmp;
    }
    if (a < 0) a = -a, s0 = -s0, t0 = -t0;
    s = s0, t = t0;
    return a;
}

Small reduce_small(Small r)
{
    for (;;) {
        const i128 two_a = 2 * r.a;
        i128 m = mod128(r.b, two_a);
        if (m > r.a) m -= two_a;
        if (m != r.b) {
            const i128 k = (m - r.b) / two_a;
            r.c += k * (r.a * k + r.b);
            r.b = m;
        }
        if (r.a > r.c) {
            r = Small{r.c, -r.b, r.a};
            continue;
        }
        break;
    }
    if (r.a == r.c && r.b < 0) r.b = -r.b;
    return r;
}

Small compose_small(const Small& f1, const Small& f2, i128 disc)
{
    const Small& lo = f1.a <= f2.a ? f1 : f2;
    const Small& hi = f1.a <= f2.a ? f2 : f1;
    const i128 s = (lo.b + hi.b) / 2;
    const i128 n = hi.b - s;
    i128 y1, d;
    if (hi.a % lo.a == 0) {
        y1 = 0, d = lo.a;
    } else {
        i128 u, v;
        d = xgcd128(hi.a, lo.a, u, v);
        y1 = u;
    }
    i128 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1, x2 = 0, d1 = d;
    } else {
        i128 u, v;
        d1 = xgcd128(s, d, u, v);
        x2 = u, y2 = -v;
    }
    const i128 v1 = lo.a / d1, v2 = hi.a / d1;
    const i128 r = mod128(mod128(y1 * y2, v1) * mod128(n, v1) - mod128(x2 * mod128(hi.c, v1), v1), v1);
    const i128 b3 = hi.b + 2 * v2 * r;
    const i128 a3 = v1 * v2;
    return reduce_small(Small{a3, b3, (b3 * b3 - disc) / (4 * a3)});
}

bool word_sized(const Int& disc) { return mpz_sizeinbase(disc.get_mpz_t(), 2) < 50; }

Small to_small(const QForm& q) { return reduce_small(Small{to_i64(q.a), to_i64(q.b), to_i64(q.c)}); }

QForm from_small(const Small& q)
{
    return QForm{from_i64(static_cast<std::int64_t>(q.a)), from_i64(static_cast<std::int64_t>(q.b)),
                 from_i64(static_cast<std::int64_t>(q.c))};
}

bool fits_words(const QForm& q) { return fits_i64(q.a) && fits_i64(q.b) && fits_i64(q.c); }

} // namespace

QForm compose(const QForm& lhs, const QForm& rhs)
{
    check_compatible(lhs, rhs);
    const Int disc = discriminant_value(lhs);
    if (word_sized(disc) && fits_words(lhs) && fits_words(rhs))
        return from_small(compose_small(to_small(lhs), to_small(rhs), to_i64(disc)));
    return compose_unchecked(lhs, rhs, disc);
}

QForm dirichlet_compose(const QForm& lhs, const QForm& rhs, std::uint64_t scan_bound)
{
    check_compatible(lhs, rhs);
    const Int disc = discriminant_value(lhs);
    QForm other = rhs;
    if (gcd(lhs.a, other.a) != 1) {
        bool found = false;
        for (const auto& rep : scan_represented(rhs, scan_bound)) {
            if (gcd(lhs.a, rep.value) == 1) {
                other = rep.form;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(Errc::precondition, "dirichlet_compose: no represented value of " + to_string(rhs) +
                                                " coprime to " + lhs.a.get_str() + " within the scan bound");
    }
    const Int m1 = 2 * lhs.a;
    const Int m2 = 2 * other.a;
    // B = b1 + m1 * t with m1 * t = b2 - b1 (mod m2); gcd(m1, m2) = 2 and b1 = b2 (mod 2).
    Int u, v;
    xgcd(lhs.a, other.a, u, v);
    const Int t = floor_mod(Int(u * ((other.b - lhs.b) / 2)), other.a);
    const Int B = lhs.b + m1 * t;
    const Int a = lhs.a * other.a;
    return QForm{a, B, exact_div(Int(B * B - disc), Int(4 * a))};
}

QForm inverse(const QForm& q)
{
    return reduce(QForm{q.a, -q.b, q.c});
}

QForm power(const QForm& q, const Int& n)
{
    validate(q);
    const Int disc = discriminant_value(q);
    QForm base = n < 0 ? inverse(q) : reduce(q);
    Int e = abs(n);
    QForm acc = principal_form(disc);
    const unsigned long bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    if (word_sized(disc) && fits_words(base)) {
        const i128 d = to_i64(disc);
        const Small b = to_small(base);
        Small r = to_small(acc);
        for (unsigned long i = bits; i-- > 0;) {
            r = compose_small(r, r, d);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = compose_small(r, b, d);
        }
        return from_small(r);
    }
    for (unsigned long i = bits; i-- > 0;) {
        acc = compose_unchecked(acc, acc, disc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = compose_unchecked(acc, base, disc);
    }
    return acc;
}

} // namespace simerka
