#include "simerka/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "simerka/errors.hpp"

namespace simerka {

namespace {

constexpr std::uint64_t small_sieve_limit = std::uint64_t{1} << 20;
constexpr std::uint64_t scan_root_limit = std::uint64_t{1} << 8;

std::vector<std::uint64_t> sieve(std::uint64_t limit)
{
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a)
{
    std::uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

Int tonelli_shanks(const Int& a, const Int& p)
{
    // p odd prime, a a nonzero quadratic residue mod p.
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int m = s;
    Int c = powm(z, q, p);
    Int t = powm(a, q, p);
    Int r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Int t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + 1 + i < m.get_ui(); ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::uint64_t pollard_brent_u64(std::uint64_t n, std::uint64_t c)
{
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

Int pollard_brent(const Int& n, unsigned long c)
{
    if (fits_u64(n)) {
        std::uint64_t g = pollard_brent_u64(to_u64(n), c);
        return from_u64(g);
    }
    auto f = [&](const Int& x) { return Int((x * x + c) % n); };
    Int y = 2, q = 1, g = 1, x, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        do {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(Int(x - y)) % n;
            }
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(Int(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const Int& n, std::vector<Int>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (is_square(n)) {
        Int r = isqrt(n);
        factor_into(r, out);
        factor_into(r, out);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Int d = pollard_brent(n, c);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(exact_div(n, d), out);
            return;
        }
    }
}

} // namespace

int kronecker(const Int& a, const Int& n)
{
    if (n == 0) throw Error(Errc::invalid_argument, "kronecker: n must be nonzero");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::optional<Int> sqrt_mod(const Int& d, const Int& p, const Int& modulus)
{
    if (p < 2) throw Error(Errc::invalid_argument, "sqrt_mod: p must be prime");
    if (modulus != p && modulus != 4 * p)
        throw Error(Errc::invalid_argument, "sqrt_mod: modulus must be p or 4p");
    const bool odd = mpz_odd_p(d.get_mpz_t()) != 0;
    if (p < scan_root_limit) {
        const std::uint64_t m = to_u64(modulus);
        const std::uint64_t target = to_u64(floor_mod(d, modulus));
        for (std::uint64_t b = odd ? 1 : 0; b < m; b += 2) {
            if (mulmod(b, b, m) == target) return from_u64(b);
        }
        return std::nullopt;
    }
    Int dp = floor_mod(d, p);
    Int r;
    if (dp == 0) {
        r = 0;
    } else {
        if (kronecker(dp, p) != 1) return std::nullopt;
        r = tonelli_shanks(dp, p);
    }
    std::optional<Int> best;
    for (const Int& cand : {Int(r), Int(p - r), Int(r + p), Int(2 * p - r)}) {
        if (cand < 0) continue;
        if ((mpz_odd_p(cand.get_mpz_t()) != 0) != odd) continue;
        if (floor_mod(Int(cand * cand - d), modulus) != 0) continue;
        if (!best || cand < *best) best = cand;
    }
    return best;
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (std::uint64_t a : bases)
        if (!strong_probable_prime(n, a)) return false;
    return true;
}

bool is_prime(const Int& n)
{
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), a)) return false;
        Int d = n - 1;
        unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
        Int x = powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s && witness; ++i) {
            x = x * x % n;
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 25) > 0;
}

SmoothFactorization smooth_factor(const Int& n, std::span<const Int> primes)
{
    if (n < 1) throw Error(Errc::invalid_argument, "smooth_factor: n must be positive");
    SmoothFactorization out;
    out.cofactor = n;
    for (const Int& p : primes) {
        if (out.cofactor == 1) break;
        long e = 0;
        while (divides(p, out.cofactor)) {
            out.cofactor = exact_div(out.cofactor, p);
            ++e;
        }
        out.exponents.multiply_prime(p, e);
    }
    return out;
}

SmoothFactorization smooth_factor(const Int& n, std::span<const std::uint64_t> primes)
{
    if (n < 1) throw Error(Errc::invalid_argument, "smooth_factor: n must be positive");
    SmoothFactorization out;
    if (fits_u64(n)) {
        std::uint64_t rest = to_u64(n);
        for (std::uint64_t p : primes) {
            if (rest == 1) break;
            long e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            if (e) out.exponents.multiply_prime(from_u64(p), e);
        }
        out.cofactor = from_u64(rest);
        return out;
    }
    out.cofactor = n;
    for (std::uint64_t p : primes) {
        if (out.cofactor == 1) break;
        long e = 0;
        while (mpz_divisible_ui_p(out.cofactor.get_mpz_t(), p)) {
            mpz_divexact_ui(out.cofactor.get_mpz_t(), out.cofactor.get_mpz_t(), p);
            ++e;
        }
        if (e) out.exponents.multiply_prime(from_u64(p), e);
    }
    return out;
}

Int sigma_prime_power(const Int& p, unsigned long k)
{
    if (p < 2) throw Error(Errc::invalid_argument, "sigma_prime_power: p must be prime");
    return exact_div(Int(ipow(p, k + 1) - 1), Int(p - 1));
}

Int sigma_of(std::span<const std::pair<Int, unsigned>> factorization)
{
    Int s = 1;
    for (const auto& [p, e] : factorization) s *= sigma_prime_power(p, e);
    return s;
}

bool is_carmichael(std::uint64_t n)
{
    if (n < 3 || is_prime_u64(n)) return false;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        rest /= p;
        if (rest % p == 0) return false;
        if ((n - 1) % (p - 1)) return false;
    }
    if (rest > 1 && (n - 1) % (rest - 1)) return false;
    return true;
}

std::vector<std::uint64_t> carmichael_scan_serial(std::uint64_t limit)
{
    if (limit < 2) throw Error(Errc::invalid_argument, "carmichael_scan: limit must be >= 2");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 3; n < limit; n += 2)
        if (is_carmichael(n)) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> carmichael_scan(std::uint64_t limit)
{
    if (limit < 2) throw Error(Errc::invalid_argument, "carmichael_scan: limit must be >= 2");
    // Smallest-prime-factor table; Korselt then costs O(log n) per candidate.
    std::vector<std::uint32_t> spf(limit, 0);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j < limit; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    std::vector<char> hit(limit, 0);
    const std::int64_t top = static_cast<std::int64_t>(limit);
#pragma omp parallel for schedule(dynamic, 4096)
    for (std::int64_t i = 3; i < top; i += 2) {
        const auto n = static_cast<std::uint64_t>(i);
        if (spf[n] == n) continue;
        std::uint64_t rest = n;
        bool ok = true;
        while (rest > 1 && ok) {
            const std::uint64_t p = spf[rest];
            rest /= p;
            if (rest % p == 0 || (n - 1) % (p - 1)) ok = false;
        }
        hit[n] = ok;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 3; n < limit; ++n)
        if (hit[n]) out.push_back(n);
    return out;
}

bool fermat_number_divisible(const Int& k, std::uint64_t n, std::uint64_t budget)
{
    if (k < 2) throw Error(Errc::invalid_argument, "fermat_number_divisible: k must be >= 2");
    if (n > budget)
        throw Error(Errc::budget_exceeded,
                    "fermat_number_divisible: " + std::to_string(n) + " squarings exceed budget " +
                        std::to_string(budget));
    Int x = Int(2) % k;
    for (std::uint64_t i = 0; i < n; ++i) x = x * x % k;
    return floor_mod(Int(x + 1), k) == 0;
}

std::vector<SigmaCubeRow> sigma_cube_table(std::uint64_t prime_bound)
{
    if (prime_bound < 2) throw Error(Errc::invalid_argument, "sigma table: prime bound must be >= 2");
    std::vector<SigmaCubeRow> rows;
    for (std::uint64_t p : primes_up_to(prime_bound)) {
        SigmaCubeRow row;
        row.p = from_u64(p);
        row.sigma = sigma_prime_power(row.p, 3);
        for (const auto& [q, e] : factorize(row.sigma)) row.factorization.multiply_prime(q, static_cast<long>(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Int> sigma_cube_square_search(std::uint64_t prime_bound)
{
    const auto table = sigma_cube_table(prime_bound);
    // Column index for every prime occurring in some sigma(p^3).
    std::map<Int, std::size_t> column;
    for (const auto& row : table)
        for (const auto& [q, e] : row.factorization.entries()) column.try_emplace(q, 0);
    std::size_t c = 0;
    for (auto& [q, idx] : column) idx = c++;

    const std::size_t rows = table.size();
    const std::size_t words = (c + 63) / 64;
    const std::size_t cwords = (rows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> parity(rows, std::vector<std::uint64_t>(words, 0));
    std::vector<std::vector<std::uint64_t>> combo(rows, std::vector<std::uint64_t>(cwords, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (const auto& [q, e] : table[i].factorization.entries()) {
            if (e & 1) {
                std::size_t j = column[q];
                parity[i][j / 64] ^= std::uint64_t{1} << (j % 64);
            }
        }
        combo[i][i / 64] |= std::uint64_t{1} << (i % 64);
    }

    // Row-reduce; rows that vanish carry a nullspace combination.
    std::size_t pivot_row = 0;
    for (std::size_t j = 0; j < c && pivot_row < rows; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << (j % 64);
        std::size_t r = pivot_row;
        while (r < rows && !(parity[r][j / 64] & bit)) ++r;
        if (r == rows) continue;
        std::swap(parity[r], parity[pivot_row]);
        std::swap(combo[r], combo[pivot_row]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != pivot_row && (parity[i][j / 64] & bit)) {
                for (std::size_t w = 0; w < words; ++w) parity[i][w] ^= parity[pivot_row][w];
                for (std::size_t w = 0; w < cwords; ++w) combo[i][w] ^= combo[pivot_row][w];
            }
        }
        ++pivot_row;
    }
    std::vector<std::vector<std::uint64_t>> basis(combo.begin() + static_cast<std::ptrdiff_t>(pivot_row), combo.end());
    if (basis.size() > 24)
        throw Error(Errc::budget_exceeded, "sigma_cube_square_search: nullspace dimension " +
                                               std::to_string(basis.size()) + " too large to enumerate");

    std::vector<Int> out;
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        std::vector<std::uint64_t> v(cwords, 0);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (mask >> b & 1)
                for (std::size_t w = 0; w < cwords; ++w) v[w] ^= basis[b][w];
        Int n = 1;
        Int sigma = 1;
        for (std::size_t i = 0; i < rows; ++i) {
            if (v[i / 64] >> (i % 64) & 1) {
                n *= table[i].p;
                sigma *= table[i].sigma;
            }
        }
        if (n > 1 && is_square(sigma)) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<std::uint64_t>& small_primes()
{
    static const std::vector<std::uint64_t> primes = sieve(small_sieve_limit);
    return primes;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    if (limit <= small_sieve_limit) {
        const auto& all = small_primes();
        return {all.begin(), std::upper_bound(all.begin(), all.end(), limit)};
    }
    return sieve(limit);
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n)
{
    if (n < 1) throw Error(Errc::invalid_argument, "factorize: n must be positive");
    std::vector<Int> primes;
    Int rest = n;
    for (std::uint64_t p : small_primes()) {
        if (p > 65536) break;
        if (Int(from_u64(p) * from_u64(p)) > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            primes.push_back(from_u64(p));
        }
    }
    factor_into(rest, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (const Int& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n)
{
    if (n < 4) return std::nullopt;
    const unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Int r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return std::make_pair(r, static_cast<unsigned>(k));
    }
    return std::nullopt;
}

} // namespace simerka
