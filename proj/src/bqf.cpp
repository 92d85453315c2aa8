#include "simerka/bqf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <ostream>

#include <omp.h>

#include "simerka/arith.hpp"
#include "simerka/errors.hpp"

namespace simerka {

namespace {

Fundamentality squarefree_status(const Int& m, std::uint64_t trial_bound)
{
    Int rest = m;
    const auto& table = small_primes();
    const std::vector<std::uint64_t> big = trial_bound > table.back() ? primes_up_to(trial_bound) : std::vector<std::uint64_t>{};
    for (std::uint64_t p : big.empty() ? table : big) {
        if (p > trial_bound) break;
        if (Int(from_u64(p) * from_u64(p)) > rest) return Fundamentality::fundamental;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) return Fundamentality::not_fundamental;
    }
    if (rest == 1 || is_prime(rest)) return Fundamentality::fundamental;
    if (is_square(rest)) return Fundamentality::not_fundamental;
    // No factor <= bound: below bound^3 the rest is a product of two primes.
    Int b = from_u64(trial_bound);
    if (rest < b * b * b) return Fundamentality::fundamental;
    return Fundamentality::unknown;
}

void check_same_discriminant(const QForm& lhs, const QForm& rhs)
{
    if (discriminant_value(lhs) != discriminant_value(rhs))
        throw Error(Errc::discriminant_mismatch,
                    "forms " + to_string(lhs) + " and " + to_string(rhs) + " have different discriminants");
}

std::vector<std::array<std::int64_t, 3>> reduced_forms_for_a(std::int64_t a, std::int64_t d)
{
    std::vector<std::array<std::int64_t, 3>> out;
    const bool odd = (d & 1) != 0;
    const unsigned __int128 four_a = static_cast<unsigned __int128>(4 * a);
    for (std::int64_t b = -a + 1; b <= a; ++b) {
        if (((b & 1) != 0) != odd) continue;
        const unsigned __int128 num =
            static_cast<unsigned __int128>(static_cast<__int128>(b) * b - static_cast<__int128>(d));
        if (num % four_a) continue;
        const auto c = static_cast<std::int64_t>(num / four_a);
        if (c < a) continue;
        if (b < 0 && c == a) continue;
        if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
        out.push_back({a, b, c});
    }
    return out;
}

std::int64_t checked_small_disc(const Int& disc)
{
    make_discriminant(disc, 2);
    if (abs(disc) >= Int(1L << 62))
        throw Error(Errc::invalid_argument, "reduced_forms: |disc| must be below 2^62");
    return to_i64(disc);
}

} // namespace

const char* fundamentality_name(Fundamentality f)
{
    switch (f) {
    case Fundamentality::fundamental: return "FUNDAMENTAL";
    case Fundamentality::not_fundamental: return "NOT_FUNDAMENTAL";
    case Fundamentality::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

Discriminant make_discriminant(const Int& value, std::uint64_t trial_bound)
{
    if (value >= 0) throw Error(Errc::invalid_argument, "discriminant must be negative: " + value.get_str());
    const Int r = floor_mod(value, 4);
    if (r != 0 && r != 1)
        throw Error(Errc::invalid_argument, "discriminant must be 0 or 1 mod 4: " + value.get_str());
    Discriminant d{value, Fundamentality::unknown};
    if (r == 1) {
        d.fundamental = squarefree_status(Int(-value), trial_bound);
    } else {
        Int quarter = exact_div(value, 4);
        Int qr = floor_mod(quarter, 4);
        if (qr == 0 || qr == 1)
            d.fundamental = Fundamentality::not_fundamental;
        else
            d.fundamental = squarefree_status(Int(-quarter), trial_bound);
    }
    return d;
}

Int discriminant_value(const QForm& q)
{
    return q.b * q.b - 4 * q.a * q.c;
}

Discriminant discriminant(const QForm& q)
{
    validate(q);
    return make_discriminant(discriminant_value(q));
}

void validate(const QForm& q)
{
    if (q.a <= 0) throw Error(Errc::invalid_argument, "form " + to_string(q) + " is not positive definite");
    if (discriminant_value(q) >= 0)
        throw Error(Errc::invalid_argument, "form " + to_string(q) + " is not positive definite");
}

bool is_primitive(const QForm& q)
{
    return gcd(gcd(q.a, q.b), q.c) == 1;
}

Int evaluate(const QForm& q, const Int& x, const Int& y)
{
    return q.a * x * x + q.b * x * y + q.c * y * y;
}

bool is_reduced(const QForm& q)
{
    if (q.a <= 0) return false;
    if (abs(q.b) > q.a || q.a > q.c) return false;
    if ((abs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
    return true;
}

QForm normalize_b(const QForm& q)
{
    const Int two_a = 2 * q.a;
    Int r = floor_mod(q.b, two_a);
    if (r > q.a) r -= two_a;
    if (r == q.b) return q;
    const Int k = exact_div(Int(r - q.b), two_a);
    QForm out{q.a, r, q.c + k * (q.a * k + q.b)};
    return out;
}

QForm reduce(const QForm& q)
{
    validate(q);
    QForm r = q;
    for (;;) {
        r = normalize_b(r);
        if (r.a > r.c) {
            r = QForm{r.c, -r.b, r.a};
            continue;
        }
        break;
    }
    if (r.a == r.c && r.b < 0) r.b = -r.b;
    return r;
}

bool is_equivalent(const QForm& lhs, const QForm& rhs)
{
    check_same_discriminant(lhs, rhs);
    return reduce(lhs) == reduce(rhs);
}

QForm principal_form(const Int& disc)
{
    if (floor_mod(disc, 4) == 0) return QForm{1, 0, exact_div(Int(-disc), 4)};
    return QForm{1, 1, exact_div(Int(1 - disc), 4)};
}

QForm principal_form(const Discriminant& disc)
{
    return principal_form(disc.value);
}

bool is_principal(const QForm& q)
{
    return reduce(q) == principal_form(discriminant_value(q));
}

bool is_ambiguous(const QForm& q)
{
    const QForm r = reduce(q);
    return r.b == 0 || r.a == r.b || r.a == r.c;
}

std::array<QForm, 4> neighbors(const QForm& q)
{
    const Int& A = q.a;
    const Int& B = q.b;
    const Int& C = q.c;
    return {QForm{A + B + C, -B - 2 * A, A}, QForm{A - B + C, 2 * A - B, A},
            QForm{A + B + C, B + 2 * C, C}, QForm{A - B + C, B - 2 * C, C}};
}

QForm normalize_representation(const QForm& q, const Int& x, const Int& y)
{
    Int u, v;
    if (xgcd(x, y, u, v) != 1)
        throw Error(Errc::not_primitive,
                    "representation (" + x.get_str() + "," + y.get_str() + ") is not primitive");
    // x*u + y*v = 1, so [[x, -v], [y, u]] has determinant +1.
    const Int s = -v;
    const Int& t = u;
    QForm out{evaluate(q, x, y), 2 * q.a * x * s + q.b * (x * t + y * s) + 2 * q.c * y * t, evaluate(q, s, t)};
    return normalize_b(out);
}

std::vector<Representation> scan_represented(const QForm& q, std::uint64_t bound)
{
    if (bound < 1) throw Error(Errc::invalid_argument, "scan_represented: bound must be >= 1");
    validate(q);
    const auto lim = static_cast<std::int64_t>(bound);
    std::map<std::pair<Int, Int>, Representation> seen;
    for (std::int64_t y = 0; y <= lim; ++y) {
        for (std::int64_t x = (y == 0 ? 1 : -lim); x <= (y == 0 ? 1 : lim); ++x) {
            if (std::gcd(x, y) != 1) continue;
            Int X = from_i64(x), Y = from_i64(y);
            QForm f = normalize_representation(q, X, Y);
            auto key = std::make_pair(f.a, f.b);
            if (!seen.count(key)) seen.emplace(key, Representation{f.a, f, X, Y});
        }
    }
    std::vector<Representation> out;
    out.reserve(seen.size());
    for (auto& [key, rep] : seen) out.push_back(std::move(rep));
    return out;
}

PowerResidueForm power_residue_form(const Int& a, const Int& b, unsigned long m)
{
    if (a < 3 || mpz_even_p(a.get_mpz_t()))
        throw Error(Errc::invalid_argument, "power_residue_form: a must be odd and >= 3");
    if (b < 1) throw Error(Errc::invalid_argument, "power_residue_form: b must be >= 1");
    if (m < 2) throw Error(Errc::invalid_argument, "power_residue_form: m must be >= 2");
    const Int det = ipow(a, m) - b * b;
    if (det <= 0) throw Error(Errc::invalid_argument, "power_residue_form: a^m - b^2 must be positive");
    if (2 * b > ipow(a, m / 2))
        throw Error(Errc::condition_violated,
                    "power_residue_form: no reduced form (a^k, 2b, a^(m-k)) with k <= m/2 since 2b > a^(m/2)");
    QForm f{a, 2 * b, ipow(a, m - 1)};
    return PowerResidueForm{f, make_discriminant(Int(-4 * det)), det};
}

std::vector<QForm> reduced_forms_serial(const Int& disc)
{
    const std::int64_t d = checked_small_disc(disc);
    const auto amax = to_i64(isqrt(Int(-disc / 3)));
    std::vector<QForm> out;
    for (std::int64_t a = 1; a <= amax; ++a)
        for (const auto& f : reduced_forms_for_a(a, d))
            out.push_back(QForm{from_i64(f[0]), from_i64(f[1]), from_i64(f[2])});
    return out;
}

std::vector<QForm> reduced_forms(const Int& disc)
{
    const std::int64_t d = checked_small_disc(disc);
    const auto amax = to_i64(isqrt(Int(-disc / 3)));
    std::vector<std::vector<std::array<std::int64_t, 3>>> per_a(static_cast<std::size_t>(amax) + 1);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t a = 1; a <= amax; ++a) per_a[static_cast<std::size_t>(a)] = reduced_forms_for_a(a, d);
    std::vector<QForm> out;
    for (const auto& bucket : per_a)
        for (const auto& f : bucket) out.push_back(QForm{from_i64(f[0]), from_i64(f[1]), from_i64(f[2])});
    return out;
}

std::string to_string(const QForm& q)
{
    return "(" + q.a.get_str() + "," + q.b.get_str() + "," + q.c.get_str() + ")";
}

QForm parse_form(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    const auto first = s.find(',');
    const auto second = first == std::string::npos ? std::string::npos : s.find(',', first + 1);
    if (second == std::string::npos || s.find(',', second + 1) != std::string::npos)
        throw Error(Errc::parse_error, "expected a form 'A,B,C', got '" + std::string(text) + "'");
    return QForm{parse_int(s.substr(0, first)), parse_int(s.substr(first + 1, second - first - 1)),
                 parse_int(s.substr(second + 1))};
}

std::ostream& operator<<(std::ostream& os, const QForm& q)
{
    return os << to_string(q);
}

} // namespace simerka
