#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "simerka/factored_rational.hpp"
#include "simerka/integer.hpp"

namespace simerka {

/// Kronecker symbol (a|n). Throws for n = 0.
int kronecker(const Int& a, const Int& n);

/// Smallest B >= 0 with B^2 = d (mod modulus) and B = d (mod 2), where
/// modulus is p or 4p. Exhaustive scan for p < 256, Tonelli-Shanks above.
std::optional<Int> sqrt_mod(const Int& d, const Int& p, const Int& modulus);

/// Deterministic below 2^64 (Miller-Rabin, first twelve prime bases). Above
/// that, strong probable prime tests followed by GMP's BPSW-based check; no
/// BPSW pseudoprime is known but none is ruled out either.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

struct SmoothFactorization {
    FactoredRational exponents;
    Int cofactor{1};

    bool smooth() const { return cofactor == 1; }
};

SmoothFactorization smooth_factor(const Int& n, std::span<const Int> primes);
SmoothFactorization smooth_factor(const Int& n, std::span<const std::uint64_t> primes);

/// 1 + p + ... + p^k.
Int sigma_prime_power(const Int& p, unsigned long k);

/// Korselt: composite, squarefree, and (p - 1) | (n - 1) for every p | n.
bool is_carmichael(std::uint64_t n);

/// All Carmichael numbers below `limit`. OpenMP sieve kernel.
std::vector<std::uint64_t> carmichael_scan(std::uint64_t limit);
/// Serial reference: Korselt test on every odd n by trial division.
std::vector<std::uint64_t> carmichael_scan_serial(std::uint64_t limit);

inline constexpr std::uint64_t default_fermat_budget = std::uint64_t{1} << 26;

/// Whether k divides F_n = 2^(2^n) + 1. Throws budget_exceeded when the n
/// squarings required exceed `budget`.
bool fermat_number_divisible(const Int& k, std::uint64_t n,
                             std::uint64_t budget = default_fermat_budget);

struct SigmaCubeRow {
    Int p;
    Int sigma;
    FactoredRational factorization;
};

std::vector<SigmaCubeRow> sigma_cube_table(std::uint64_t prime_bound);

/// Squarefree n > 1 built from primes <= prime_bound with sigma(n^3) a perfect
/// square, obtained from the GF(2) nullspace of the sigma(p^3) table.
std::vector<Int> sigma_cube_square_search(std::uint64_t prime_bound);

/// sigma(n) for n given by its factorization.
Int sigma_of(std::span<const std::pair<Int, unsigned>> factorization);

// --- plumbing shared by other modules ---

/// Primes <= limit. Served from a shared sieve below 2^20.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
const std::vector<std::uint64_t>& small_primes();

/// Full factorization (trial division, Pollard-Brent rho, primality checks),
/// ascending primes with multiplicities. Input must be >= 1.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

/// If n = r^k for some k >= 2 returns (r, k) with k maximal.
std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n);

} // namespace simerka
