#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simerka/bqf.hpp"
#include "simerka/factored_rational.hpp"

namespace simerka {

/// I_p = (p, b_p, (b_p^2 - d) / 4p) with b_p the smallest root of
/// b^2 = d (mod 4p); b_p is 0 or p when p divides d.
struct PrimeForm {
    std::uint64_t p = 0;
    Int root;
    QForm form;
    bool ramified = false;
};

PrimeForm prime_form(const Discriminant& disc, std::uint64_t p);

class FactorBase {
public:
    FactorBase(Discriminant disc, std::uint64_t bound, std::vector<PrimeForm> primes);

    const Discriminant& discriminant() const { return disc_; }
    std::uint64_t bound() const { return bound_; }
    const std::vector<PrimeForm>& primes() const { return primes_; }
    const std::vector<std::uint64_t>& prime_values() const { return values_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    const PrimeForm& operator[](std::size_t i) const { return primes_[i]; }

    std::optional<std::size_t> index_of(std::uint64_t p) const;
    std::optional<std::size_t> index_of(const Int& p) const;

private:
    Discriminant disc_;
    std::uint64_t bound_;
    std::vector<PrimeForm> primes_;
    std::vector<std::uint64_t> values_;
};

/// max(50, 6 ln^2 |d|), capped at sqrt(|d|/3) when d is known fundamental.
/// Below the cap reduced forms factor over the base; for other discriminants
/// leading coefficients may share a factor with the conductor.
std::uint64_t default_factor_base_bound(const Discriminant& disc);

/// Non-inert primes up to `bound` whose prime forms are primitive (all of
/// them when d is fundamental).
FactorBase build_factor_base(const Discriminant& disc, std::uint64_t bound);

struct SimerkaValue {
    bool smooth = false;
    FactoredRational value; ///< meaningful when smooth
    Int cofactor{1};        ///< part of the leading coefficient outside the base
};

/// The signed factorization of the leading coefficient A of q: for p^e || A
/// the exponent is +e when (B mod 2p) taken in (-p, p] is >= 0 and -e
/// otherwise; ramified primes contribute e mod 2.
SimerkaValue simerka_value(const QForm& q, const FactorBase& base);

struct SmoothHit {
    FactoredRational value;
    QForm form;             ///< normalized, leading coefficient = represented value
    std::string provenance; ///< "reduced", "neighbor k" or "(x,y)"
};

struct SearchEffort {
    std::uint64_t scan_bound = 10;
    bool neighbors = true;
    std::size_t max_hits = 0; ///< stop after this many hits; 0 for no limit
};

/// Smooth represented values of q: the reduced form, its four neighbors and
/// every primitive (x, y) with |x|, |y| <= scan_bound, deduplicated by
/// normalized form. Empty when nothing is smooth.
std::vector<SmoothHit> smooth_search(const QForm& q, const FactorBase& base,
                                     const SearchEffort& effort = {});

/// Unreduced Dirichlet product of prime-form powers whose leading
/// coefficient is the absolute value of `r` and whose Simerka value is `r`
/// (ramified exponents taken mod 2). Every prime of `r` must be in the base.
QForm form_from_factored(const FactoredRational& r, const FactorBase& base);

/// Exponent vector of `r` indexed by the base; throws if a prime is missing.
std::vector<std::int64_t> exponent_vector(const FactoredRational& r, const FactorBase& base);

/// Inverse of exponent_vector.
FactoredRational factored_from_vector(const std::vector<std::int64_t>& exps, const FactorBase& base);

} // namespace simerka
