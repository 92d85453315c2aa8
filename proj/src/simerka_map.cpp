#include "simerka/simerka_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "simerka/arith.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"

namespace simerka {

namespace {

bool smooth_u64(std::uint64_t v, const std::vector<std::uint64_t>& primes)
{
    for (std::uint64_t p : primes) {
        if (v == 1) return true;
        if (p * p > v) {
            // v is 1 or prime here; prime => smooth only if it is a base prime.
            return std::binary_search(primes.begin(), primes.end(), v);
        }
        while (v % p == 0) v /= p;
    }
    return v == 1;
}

bool smooth_value(const Int& v, const std::vector<std::uint64_t>& primes)
{
    if (fits_u64(v)) return smooth_u64(to_u64(v), primes);
    return smooth_factor(v, std::span<const std::uint64_t>(primes)).smooth();
}

/// Root of b^2 = d (mod 4 p^k) congruent to `root` mod 2p, p not dividing d.
Int lift_root(const Int& root, const Int& disc, std::uint64_t p, unsigned long k)
{
    const Int P = from_u64(p);
    Int B = root;
    Int pk = P;
    for (unsigned long i = 1; i < k; ++i) {
        // (B + 2 p^i t)^2 = d (mod 4 p^(i+1))  <=>  (B^2 - d)/(4 p^i) + B t = 0 (mod p)
        const Int excess = exact_div(Int(B * B - disc), Int(4 * pk));
        Int inv;
        if (p == 2) {
            inv = 1;
        } else {
            mpz_invert(inv.get_mpz_t(), Int(floor_mod(B, P)).get_mpz_t(), P.get_mpz_t());
        }
        const Int t = floor_mod(Int(-excess * inv), P);
        B += 2 * pk * t;
        pk *= P;
    }
    return B;
}

} // namespace

PrimeForm prime_form(const Discriminant& disc, std::uint64_t p)
{
    const Int P = from_u64(p);
    if (!is_prime(P)) throw Error(Errc::invalid_argument, "prime_form: " + P.get_str() + " is not prime");
    if (kronecker(disc.value, P) == -1)
        throw Error(Errc::inert_prime, "prime " + P.get_str() + " is inert in discriminant " + disc.value.get_str());
    auto root = sqrt_mod(disc.value, P, Int(4 * P));
    if (!root) throw Error(Errc::inert_prime, "no square root of the discriminant modulo 4p");
    PrimeForm out;
    out.p = p;
    out.root = *root;
    out.form = QForm{P, *root, exact_div(Int(*root * *root - disc.value), Int(4 * P))};
    out.ramified = divides(P, disc.value);
    return out;
}

FactorBase::FactorBase(Discriminant disc, std::uint64_t bound, std::vector<PrimeForm> primes)
    : disc_(std::move(disc)), bound_(bound), primes_(std::move(primes))
{
    std::sort(primes_.begin(), primes_.end(), [](const PrimeForm& l, const PrimeForm& r) { return l.p < r.p; });
    for (const auto& pf : primes_) {
        if (!values_.empty() && values_.back() == pf.p)
            throw Error(Errc::invalid_argument, "factor base has duplicate prime " + std::to_string(pf.p));
        if (discriminant_value(pf.form) != disc_.value)
            throw Error(Errc::discriminant_mismatch, "prime form discriminant differs from the base");
        values_.push_back(pf.p);
    }
}

std::optional<std::size_t> FactorBase::index_of(std::uint64_t p) const
{
    auto it = std::lower_bound(values_.begin(), values_.end(), p);
    if (it == values_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

std::optional<std::size_t> FactorBase::index_of(const Int& p) const
{
    if (!fits_u64(p)) return std::nullopt;
    return index_of(to_u64(p));
}

std::uint64_t default_factor_base_bound(const Discriminant& disc)
{
    const Int m = abs(disc.value);
    const double ln = std::log(m.get_d());
    const auto bach = std::max<std::uint64_t>(50, static_cast<std::uint64_t>(std::ceil(6.0 * ln * ln)));
    if (disc.fundamental != Fundamentality::fundamental) return bach;
    return std::min(to_u64(isqrt(Int(m / 3))), bach);
}

FactorBase build_factor_base(const Discriminant& disc, std::uint64_t bound)
{
    std::vector<PrimeForm> primes;
    for (std::uint64_t p : primes_up_to(bound)) {
        if (kronecker(disc.value, from_u64(p)) == -1) continue;
        PrimeForm pf = prime_form(disc, p);
        if (!is_primitive(pf.form)) continue;
        primes.push_back(std::move(pf));
    }
    return FactorBase(disc, bound, std::move(primes));
}

SimerkaValue simerka_value(const QForm& q, const FactorBase& base)
{
    validate(q);
    if (discriminant_value(q) != base.discriminant().value)
        throw Error(Errc::discriminant_mismatch, "form " + to_string(q) + " does not match the factor base");
    SimerkaValue out;
    const auto split = smooth_factor(q.a, std::span<const std::uint64_t>(base.prime_values()));
    out.cofactor = split.cofactor;
    out.smooth = split.smooth();
    for (const auto& [p, e] : split.exponents.entries()) {
        const std::size_t idx = *base.index_of(p);
        if (base[idx].ramified) {
            out.value.multiply_prime(p, e % 2);
            continue;
        }
        const std::uint64_t two_p = 2 * base[idx].p;
        auto r = static_cast<std::int64_t>(mpz_fdiv_ui(q.b.get_mpz_t(), two_p));
        if (r > static_cast<std::int64_t>(base[idx].p)) r -= static_cast<std::int64_t>(two_p);
        out.value.multiply_prime(p, r >= 0 ? e : -e);
    }
    return out;
}

std::vector<SmoothHit> smooth_search(const QForm& q, const FactorBase& base, const SearchEffort& effort)
{
    const QForm r = reduce(q);
    if (discriminant_value(r) != base.discriminant().value)
        throw Error(Errc::discriminant_mismatch, "form " + to_string(q) + " does not match the factor base");
    const auto& primes = base.prime_values();
    std::vector<SmoothHit> hits;
    std::set<std::pair<Int, Int>> seen;

    const auto full = [&] { return effort.max_hits != 0 && hits.size() >= effort.max_hits; };
    auto record = [&](const QForm& form, std::string provenance) {
        const QForm f = normalize_b(form);
        if (!seen.emplace(f.a, f.b).second) return;
        SimerkaValue v = simerka_value(f, base);
        if (v.smooth) hits.push_back(SmoothHit{std::move(v.value), f, std::move(provenance)});
    };

    if (smooth_value(r.a, primes)) record(r, "reduced");
    if (effort.neighbors) {
        const auto nb = neighbors(r);
        for (std::size_t i = 0; i < nb.size() && !full(); ++i)
            if (smooth_value(nb[i].a, primes)) record(nb[i], "neighbor " + std::to_string(i));
    }
    const auto lim = static_cast<std::int64_t>(effort.scan_bound);
    // Machine-word screening when every scanned value fits in 64 bits.
    const bool small = lim < (1 << 20) && abs(r.c) < (Int(1) << 20) * (Int(1) << 20) * (Int(1) << 20) / (lim * lim * 3 + 1);
    const std::int64_t ra = small ? to_i64(r.a) : 0, rb = small ? to_i64(r.b) : 0, rc = small ? to_i64(r.c) : 0;
    for (std::int64_t y = 0; y <= lim && !full(); ++y) {
        for (std::int64_t x = (y == 0 ? 1 : -lim); x <= (y == 0 ? 1 : lim) && !full(); ++x) {
            if (std::gcd(x, y) != 1) continue;
            const Int X = from_i64(x), Y = from_i64(y);
            if (small) {
                const std::int64_t v = ra * x * x + rb * x * y + rc * y * y;
                if (!smooth_u64(static_cast<std::uint64_t>(v), primes)) continue;
            } else if (!smooth_value(evaluate(r, X, Y), primes)) {
                continue;
            }
            record(normalize_representation(r, X, Y), "(" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }
    return hits;
}

QForm form_from_factored(const FactoredRational& r, const FactorBase& base)
{
    const Int& disc = base.discriminant().value;
    QForm acc = principal_form(disc);
    acc = QForm{1, acc.b, acc.c};
    for (const auto& [p, e] : r.entries()) {
        const auto idx = base.index_of(p);
        if (!idx) throw Error(Errc::invalid_argument, "prime " + p.get_str() + " is not in the factor base");
        const PrimeForm& pf = base[*idx];
        QForm factor;
        if (pf.ramified) {
            if (e % 2 == 0) continue;
            factor = pf.form;
        } else {
            const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
            const Int root = e < 0 ? Int(-pf.root) : pf.root;
            const Int B = lift_root(root, disc, pf.p, k);
            const Int a = ipow(p, k);
            factor = QForm{a, B, exact_div(Int(B * B - disc), Int(4 * a))};
        }
        acc = dirichlet_compose(acc, factor);
    }
    return normalize_b(acc);
}

std::vector<std::int64_t> exponent_vector(const FactoredRational& r, const FactorBase& base)
{
    std::vector<std::int64_t> v(base.size(), 0);
    for (const auto& [p, e] : r.entries()) {
        const auto idx = base.index_of(p);
        if (!idx) throw Error(Errc::invalid_argument, "prime " + p.get_str() + " is not in the factor base");
        v[*idx] = e;
    }
    return v;
}

FactoredRational factored_from_vector(const std::vector<std::int64_t>& exps, const FactorBase& base)
{
    if (exps.size() != base.size())
        throw Error(Errc::invalid_argument, "exponent vector length does not match the factor base");
    FactoredRational r;
    for (std::size_t i = 0; i < exps.size(); ++i) r.multiply_prime(from_u64(base[i].p), exps[i]);
    return r;
}

} // namespace simerka
