#pragma once

// Brute-force reference implementations used only by the tests. Nothing
// here calls into the library.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using i64 = long;
using Form = std::array<i64, 3>;

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline i64 powmod(i64 b, i64 e, i64 m)
{
    __int128 r = 1, x = ((b % m) + m) % m;
    for (; e > 0; e >>= 1, x = x * x % m)
        if (e & 1) r = r * x % m;
    return static_cast<i64>(r);
}

/// (a|p) for an odd prime p by scanning all squares.
inline int legendre_scan(i64 a, i64 p)
{
    const i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

/// Kronecker symbol (d|n), n > 0, from prime factors of n: Euler's
/// criterion at odd primes and the d mod 8 rule at 2.
inline int kronecker(i64 d, i64 n)
{
    int out = 1;
    for (i64 p = 2; p * p <= n || n > 1; ++p) {
        if (p * p > n) p = n;
        while (n % p == 0) {
            n /= p;
            int chi;
            if (p == 2) {
                const i64 r = ((d % 8) + 8) % 8;
                chi = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
            } else {
                const i64 r = ((d % p) + p) % p;
                chi = r == 0 ? 0 : (powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1);
            }
            out *= chi;
        }
    }
    return out;
}

/// Smallest B in [0, m) with B^2 = d (mod m) and B = d (mod 2).
inline std::optional<i64> sqrt_mod_scan(i64 d, i64 m)
{
    const i64 parity = ((d % 2) + 2) % 2;
    const i64 target = ((d % m) + m) % m;
    for (i64 b = parity; b < m; b += 2)
        if (static_cast<__int128>(b) * b % m == target) return b;
    return std::nullopt;
}

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

/// Primitive reduced forms |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline std::vector<Form> reduced_forms(i64 d)
{
    std::vector<Form> out;
    for (i64 a = 1; 3 * a * a <= -d; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd3(a, b, c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

/// Class number of a fundamental d < 0 from Dirichlet's formula
/// h = -(w / 2|d|) * sum_{n < |d|} chi(n) n.
inline i64 class_number_dirichlet(i64 d)
{
    const i64 m = -d;
    const i64 w = d == -3 ? 6 : d == -4 ? 4 : 2;
    // chi is completely multiplicative in n: sieve smallest prime factors.
    std::vector<i64> spf(m + 1, 0);
    for (i64 i = 2; i <= m; ++i)
        if (!spf[i])
            for (i64 j = i; j <= m; j += i)
                if (!spf[j]) spf[j] = i;
    std::vector<int> chi(m + 1, 0);
    if (m >= 1) chi[1] = 1;
    i64 sum = 0;
    for (i64 n = 2; n < m; ++n) {
        const i64 p = spf[n];
        chi[n] = (p == n ? kronecker(d, p) : chi[p] * chi[n / p]);
    }
    for (i64 n = 1; n < m; ++n) sum += chi[n] * n;
    return -(w * sum) / (2 * m);
}

inline bool squarefree(i64 n)
{
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline bool is_fundamental(i64 d)
{
    const i64 m = -d;
    if (m % 4 == 3) return squarefree(m);
    if (m % 4 != 0) return false;
    const i64 q = m / 4;
    return (q % 4 == 1 || q % 4 == 2) && squarefree(q);
}

inline Form reduce(Form f)
{
    auto& [a, b, c] = f;
    for (;;) {
        if (b > a || b <= -a) {
            // k = floor((a - b) / 2a) puts b + 2ak in (-a, a]
            const i64 num = a - b, den = 2 * a;
            i64 k = num / den;
            if (num % den != 0 && num < 0) --k;
            c = a * k * k + b * k + c;
            b = b + 2 * a * k;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if (a == c && b < 0) b = -b;
    return f;
}

/// Dirichlet composition by brute force: move the second form to an
/// equivalent one with leading coefficient coprime to the first, then scan
/// B modulo 2 a1 a2.
inline Form compose(const Form& f, const Form& g)
{
    const i64 d = f[1] * f[1] - 4 * f[0] * f[2];
    Form h = g;
    if (std::gcd(f[0], h[0]) != 1) {
        bool found = false;
        for (i64 y = 0; y <= 30 && !found; ++y)
            for (i64 x = -30; x <= 30 && !found; ++x) {
                if (std::gcd(std::llabs(x), y) != 1) continue;
                const i64 v = g[0] * x * x + g[1] * x * y + g[2] * y * y;
                if (std::gcd(v, f[0]) != 1) continue;
                // complete (x, y) to a proper unimodular matrix [[x, s], [y, t]]
                i64 s = 0, t = 0;
                for (i64 ss = -60; ss <= 60 && !found; ++ss)
                    if ((1 + ss * y) % x == 0 || x == 0) {
                        if (x == 0) {
                            if (y != 1 && y != -1) break;
                            s = -y, t = 0;
                        } else {
                            s = ss, t = (1 + ss * y) / x;
                        }
                        found = true;
                    }
                if (!found) continue;
                const i64 b2 = 2 * g[0] * x * s + g[1] * (x * t + y * s) + 2 * g[2] * y * t;
                h = Form{v, b2, (b2 * b2 - d) / (4 * v)};
            }
    }
    const i64 a1 = f[0], a2 = h[0];
    for (i64 t = 0; t < a2; ++t) {
        const i64 B = f[1] + 2 * a1 * t;
        if (((B - h[1]) % (2 * a2)) != 0) continue;
        if (((B * B - d) % (4 * a1 * a2)) != 0) continue;
        return reduce(Form{a1 * a2, B, (B * B - d) / (4 * a1 * a2)});
    }
    return Form{0, 0, 0};
}

inline Form principal(i64 d) { return d % 4 == 0 ? Form{1, 0, -d / 4} : Form{1, 1, (1 - d) / 4}; }

inline i64 order(const Form& q)
{
    const i64 d = q[1] * q[1] - 4 * q[0] * q[2];
    const Form e = principal(d);
    Form acc = reduce(q);
    for (i64 k = 1;; ++k) {
        if (acc == e) return k;
        acc = compose(acc, q);
    }
}

/// Composite n with a^(n-1) = 1 (mod n) for every prime a < n coprime to n.
inline bool fermat_carmichael(std::uint64_t n)
{
    if (n < 3 || is_prime(n)) return false;
    for (std::uint64_t a = 2; a < n; ++a) {
        if (!is_prime(a) || std::gcd(a, n) != 1) continue;
        if (powmod(static_cast<i64>(a), static_cast<i64>(n - 1), static_cast<i64>(n)) != 1) return false;
    }
    return true;
}

inline mpz_class sigma_of_cube(std::uint64_t n)
{
    mpz_class s = 1;
    for (std::uint64_t p = 2; p * p <= n || n > 1; ++p) {
        if (p * p > n) p = n;
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        mpz_class pp = p, term = 0, pw = 1;
        for (unsigned i = 0; i <= 3 * e; ++i, pw *= pp) term += pw;
        s *= term;
    }
    return s;
}

/// Squarefree n > 1 over primes <= bound with sigma(n^3) a perfect square,
/// by enumerating every subset.
inline std::vector<mpz_class> sigma_square_subsets(std::uint64_t bound)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p <= bound; ++p)
        if (is_prime(p)) ps.push_back(p);
    std::vector<mpz_class> sig;
    for (auto p : ps) sig.push_back(sigma_of_cube(p));
    std::vector<mpz_class> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        mpz_class n = 1, s = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) n *= ps[i], s *= sig[i];
        if (mpz_perfect_square_p(s.get_mpz_t())) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Prime factorization by trial division.
inline std::map<std::uint64_t, unsigned> factor_td(std::uint64_t n)
{
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) n /= p, ++out[p];
    if (n > 1) ++out[n];
    return out;
}


using ZMatrix = std::vector<std::vector<mpz_class>>;

/// Fraction-free Bareiss determinant.
inline mpz_class determinant(ZMatrix m)
{
    const std::size_t n = m.size();
    mpz_class prev = 1, sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) std::swap(m[piv], m[k]), sign = -sign;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Row-style Hermite form of a full-rank lattice by plain Euclidean row
/// operations: upper triangular, positive diagonal, entries above each pivot
/// in [0, pivot).
inline ZMatrix hermite(ZMatrix rows, std::size_t n)
{
    ZMatrix out;
    for (std::size_t col = 0; col < n; ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            if (best == rows.size()) return {};
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[best][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) {
                if (rows[best][col] < 0)
                    for (auto& x : rows[best]) x = -x;
                out.push_back(rows[best]);
                rows.erase(rows.begin() + best);
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < i; ++r) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), out[r][i].get_mpz_t(), out[i][i].get_mpz_t());
            for (std::size_t j = 0; j < n; ++j) out[r][j] -= q * out[i][j];
        }
    return out;
}

/// Invariant factors > 1 of Z^n / L for a square full-rank basis, from the
/// gcds of k x k minors.
inline std::vector<mpz_class> smith_by_minors(const ZMatrix& m)
{
    const std::size_t n = m.size();
    std::vector<mpz_class> minor_gcd(n + 1, 0);
    minor_gcd[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> rs(k), cs(k);
        auto next = [n](std::vector<std::size_t>& v) {
            const std::size_t k = v.size();
            std::size_t i = k;
            while (i-- > 0)
                if (v[i] != n - k + i) {
                    ++v[i];
                    for (std::size_t j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
                    return true;
                }
            return false;
        };
        std::iota(rs.begin(), rs.end(), 0);
        mpz_class g = 0;
        do {
            std::iota(cs.begin(), cs.end(), 0);
            do {
                ZMatrix sub(k, std::vector<mpz_class>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
                mpz_class d = determinant(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            } while (next(cs));
        } while (next(rs));
        minor_gcd[k] = g;
    }
    std::vector<mpz_class> out;
    for (std::size_t k = 1; k <= n; ++k) {
        mpz_class d = minor_gcd[k] / minor_gcd[k - 1];
        if (d > 1) out.push_back(d);
    }
    return out;
}

/// Membership in the row span of an upper triangular full-rank basis.
inline bool in_lattice(const ZMatrix& h, std::vector<mpz_class> v)
{
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!mpz_divisible_p(v[i].get_mpz_t(), h[i][i].get_mpz_t())) return false;
        const mpz_class q = v[i] / h[i][i];
        for (std::size_t j = i; j < v.size(); ++j) v[j] -= q * h[i][j];
    }
    return true;
}

} // namespace oracle
