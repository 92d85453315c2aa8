#include "simerka/factorizer.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "simerka/arith.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"

namespace simerka {

namespace {

struct Part {
    Int value;
    unsigned multiplicity;
};

class Pipeline {
public:
    Pipeline(const FactorConfig& cfg, FactorResult& result)
        : cfg_(cfg), out_(result), deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(cfg.time_limit))
    {
    }

    /// Nontrivial divisor of the odd composite non-power m, if one is found.
    std::optional<Int> split(const Int& m)
    {
        std::vector<std::uint64_t> multipliers{1};
        for (std::uint64_t k : small_primes()) {
            if (multipliers.size() > cfg_.multipliers) break;
            if (k > 2 && !divides(from_u64(k), m)) multipliers.push_back(k);
        }
        for (std::uint64_t k : multipliers) {
            if (k != 1) note("multiplier", "retrying with " + std::to_string(k) + " * " + m.get_str());
            if (auto d = split_with(m, from_u64(k))) return d;
        }
        return std::nullopt;
    }

private:
    void note(std::string step, std::string detail, std::optional<QForm> form = std::nullopt)
    {
        out_.trace.push_back(TraceStep{std::move(step), std::move(detail), std::move(form)});
    }

    std::optional<Int> useful(const std::pair<Int, Int>& pair, const Int& m)
    {
        for (const Int& x : {pair.first, pair.second}) {
            const Int g = gcd(x, m);
            if (g > 1 && g < m) return g;
        }
        return std::nullopt;
    }

    std::optional<Int> try_ambiguous(const QForm& amb, const Int& target, const Int& m, const std::string& how)
    {
        note("ambiguous_form", how, amb);
        auto pair = ambiguous_split(amb, target);
        if (!pair) {
            note("trivial_split", to_string(amb) + " gives a trivial split");
            return std::nullopt;
        }
        auto g = useful(*pair, m);
        if (g) note("split", m.get_str() + " = " + g->get_str() + " * " + Int(m / *g).get_str(), amb);
        return g;
    }

    std::optional<Int> split_with(const Int& m, const Int& k)
    {
        const Int target = k * m;
        const Discriminant disc = choose_discriminant(target);
        note("discriminant", "d = " + disc.value.get_str() + " (" + fundamentality_name(disc.fundamental) + ")");
        const std::uint64_t bound = cfg_.fb_bound ? *cfg_.fb_bound : default_factor_base_bound(disc);
        const FactorBase base = build_factor_base(disc, bound);
        note("factor_base", std::to_string(base.size()) + " primes up to " + std::to_string(bound));

        std::vector<QForm> ambiguous;
        if (!base.empty()) {
            auto exponent = lattice_exponent(base);
            if (exponent) {
                for (std::size_t i = 0; i < base.size(); ++i) {
                    if (base[i].ramified) continue;
                    const QForm& q = base[i].form;
                    const Int ord = element_order(q, *exponent);
                    note("order", "order of " + to_string(q) + " is " + ord.get_str(), q);
                    if (ord % 2 != 0) continue;
                    const QForm amb = power(q, Int(ord / 2));
                    if (std::find(ambiguous.begin(), ambiguous.end(), amb) != ambiguous.end()) continue;
                    ambiguous.push_back(amb);
                    if (auto g = try_ambiguous(amb, target, m, "power(" + to_string(q) + ", " + Int(ord / 2).get_str() + ")"))
                        return g;
                }
                for (std::size_t i = 0; i < ambiguous.size(); ++i)
                    for (std::size_t j = i + 1; j < ambiguous.size(); ++j) {
                        const QForm amb = compose(ambiguous[i], ambiguous[j]);
                        if (is_principal(amb)) continue;
                        if (auto g = try_ambiguous(amb, target, m, "product of " + to_string(ambiguous[i]) + " and " + to_string(ambiguous[j])))
                            return g;
                    }
            }
            if (auto g = shortcut(base, target, m)) return g;
            for (const auto& pf : base.primes()) {
                if (!pf.ramified) continue;
                const Int g = gcd(from_u64(pf.p), m);
                if (g > 1 && g < m) {
                    note("ramified_prime", "prime form " + to_string(pf.form) + " is ramified", pf.form);
                    note("split", m.get_str() + " = " + g.get_str() + " * " + Int(m / g).get_str());
                    return g;
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Int> shortcut(const FactorBase& base, const Int& target, const Int& m)
    {
        for (const auto& pf : base.primes()) {
            if (pf.ramified) continue;
            if (Clock::now() > deadline_) throw Error(Errc::timeout, "factorization ran out of time");
            const auto hits = power_walk_hits(pf.form, base, cfg_.power_cap, cfg_.effort);
            if (auto amb = square_shortcut(base, pf.form, hits)) {
                note("square_shortcut", "walk of " + to_string(pf.form) + " yields an ambiguous class", *amb);
                if (auto g = try_ambiguous(*amb, target, m, "square shortcut")) return g;
            }
            break; // one walk, on the default generator
        }
        return std::nullopt;
    }

    std::optional<Int> lattice_exponent(const FactorBase& base)
    {
        CollectConfig cc;
        cc.seed = cfg_.seed;
        cc.effort = cfg_.effort;
        cc.workers = cfg_.workers;
        cc.deadline = deadline_;
        cc.target = base.size() + 10;
        RelationLattice lat(base.size());
        std::uint64_t next = 0;
        std::size_t total = 0;
        while (!lat.full_rank()) {
            if (next >= cfg_.max_trials) throw Error(Errc::budget_exceeded, "relation trial budget exhausted");
            cc.first_trial = next;
            cc.max_trials = cfg_.max_trials - next;
            std::vector<Relation> batch;
            try {
                batch = collect_relations(base, cc, &next);
            } catch (const Error& e) {
                if (e.code() == Errc::timeout && Clock::now() <= deadline_)
                    throw Error(Errc::budget_exceeded, "relation trial budget exhausted");
                throw;
            }
            for (const auto& r : batch) lat.add(r.exponents);
            total += batch.size();
        }
        const Int e = lat.exponent();
        note("relations", std::to_string(total) + " relations, lattice determinant " + lat.determinant().get_str() +
                              ", exponent " + e.get_str());
        return e;
    }

    const FactorConfig& cfg_;
    FactorResult& out_;
    Clock::time_point deadline_;
};

} // namespace

Discriminant choose_discriminant(const Int& n)
{
    if (n < 3 || n % 2 == 0) throw Error(Errc::invalid_argument, "choose_discriminant needs an odd n >= 3");
    const Int value = floor_mod(n, 4) == 3 ? Int(-n) : Int(-4 * n);
    return make_discriminant(value);
}

std::optional<std::pair<Int, Int>> ambiguous_split(const QForm& q, const Int& n)
{
    validate(q);
    if (!is_ambiguous(q)) throw Error(Errc::not_ambiguous, to_string(q) + " is not ambiguous");
    const Int d = discriminant_value(q);
    if (d != -n && d != -4 * n)
        throw Error(Errc::invalid_argument, "discriminant " + d.get_str() + " is neither -n nor -4n for n = " + n.get_str());
    const QForm r = reduce(q);
    for (const Int& x : {r.a, r.c, Int(2 * r.a - r.b), Int(2 * r.a + r.b), Int(4 * r.c - r.a), r.b}) {
        if (x == 0) continue;
        const Int g = gcd(x, n);
        if (g > 1 && g < n) return std::make_pair(g, Int(n / g));
    }
    return std::nullopt;
}

std::vector<PowerHit> power_walk_hits(const QForm& q, const FactorBase& base, unsigned cap, const SearchEffort& effort)
{
    std::vector<PowerHit> out;
    QForm cur = reduce(q);
    for (unsigned k = 1; k <= cap; ++k) {
        if (k > 1) cur = compose(cur, q);
        for (auto& hit : smooth_search(cur, base, effort)) out.push_back(PowerHit{k, std::move(hit)});
    }
    return out;
}

std::optional<QForm> square_shortcut(const FactorBase& base, const QForm& q, const std::vector<PowerHit>& hits)
{
    for (const auto& ph : hits) {
        if (ph.exponent % 2 != 0) continue;
        FactoredRational half;
        bool square = true;
        for (const auto& [p, e] : ph.hit.value.entries()) {
            if (e % 2 != 0) {
                square = false;
                break;
            }
            half.multiply_prime(p, e / 2);
        }
        if (!square) continue;
        const QForm root = reduce(form_from_factored(half, base));
        const QForm cand = compose(power(q, Int(ph.exponent / 2)), inverse(root));
        if (is_ambiguous(cand) && !is_principal(cand)) return cand;
    }
    return std::nullopt;
}

const char* certainty_name(Certainty c)
{
    switch (c) {
    case Certainty::prime: return "PRIME";
    case Certainty::composite: return "COMPOSITE";
    case Certainty::unknown: return "UNKNOWN";
    }
    return "?";
}

FactorResult factor(const Int& n, const FactorConfig& config)
{
    if (n < 2) throw Error(Errc::invalid_argument, "factor needs n >= 2");
    FactorResult res;
    res.n = n;
    std::map<Int, std::pair<unsigned, Certainty>> found;
    auto add = [&](const Int& d, unsigned e, Certainty c) {
        auto& slot = found[d];
        slot.first += e;
        slot.second = c;
    };

    Int rest = n;
    if (config.trial_bound > 0) {
        std::vector<std::string> small;
        for (std::uint64_t p : primes_up_to(config.trial_bound)) {
            const Int P = from_u64(p);
            if (P * P > rest) break;
            unsigned e = 0;
            while (divides(P, rest)) rest /= P, ++e;
            if (e) {
                add(P, e, Certainty::prime);
                small.push_back(std::to_string(p) + (e > 1 ? "^" + std::to_string(e) : ""));
            }
        }
        std::string detail = "bound " + std::to_string(config.trial_bound);
        for (const auto& s : small) detail += ", found " + s;
        res.trace.push_back(TraceStep{"trial_division", detail, std::nullopt});
    }
    // Powers of two are not handled by the class group step.
    if (rest % 2 == 0) {
        unsigned e = 0;
        while (rest % 2 == 0) rest /= 2, ++e;
        add(Int(2), e, Certainty::prime);
    }

    Pipeline pipe(config, res);
    std::deque<Part> work;
    if (rest > 1) work.push_back(Part{rest, 1});
    while (!work.empty()) {
        Part part = work.front();
        work.pop_front();
        const Int& m = part.value;
        if (is_prime(m)) {
            const Certainty c = fits_u64(m) ? Certainty::prime : Certainty::unknown;
            res.trace.push_back(TraceStep{"prime", m.get_str() + (c == Certainty::prime ? " is prime" : " is a probable prime"), std::nullopt});
            add(m, part.multiplicity, c);
            continue;
        }
        if (auto pp = perfect_power(m)) {
            res.trace.push_back(TraceStep{"perfect_power", m.get_str() + " = " + pp->first.get_str() + "^" + std::to_string(pp->second), std::nullopt});
            work.push_back(Part{pp->first, part.multiplicity * pp->second});
            continue;
        }
        std::optional<Int> d;
        if (!res.budget_exhausted) {
            try {
                d = pipe.split(m);
            } catch (const Error& e) {
                if (!e.is_budget()) throw;
                res.budget_exhausted = true;
                res.trace.push_back(TraceStep{"budget", e.what(), std::nullopt});
            }
        }
        if (!d) {
            if (!res.budget_exhausted) res.trace.push_back(TraceStep{"unfactored", m.get_str() + " was not split", std::nullopt});
            add(m, part.multiplicity, Certainty::composite);
            continue;
        }
        // Keep shared factors together so multiplicities merge.
        const Int other = m / *d;
        work.push_back(Part{*d, part.multiplicity});
        work.push_back(Part{other, part.multiplicity});
    }

    // Merge parts that are not coprime (possible for non-squarefree inputs).
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto i = found.begin(); i != found.end() && !changed; ++i)
            for (auto j = std::next(i); j != found.end() && !changed; ++j) {
                const Int g = gcd(i->first, j->first);
                if (g == 1) continue;
                const Int a = i->first, b = j->first;
                const auto ea = i->second, eb = j->second;
                found.erase(a);
                found.erase(b);
                auto put = [&](const Int& v, unsigned e, Certainty c) {
                    if (v == 1 || e == 0) return;
                    auto& s = found[v];
                    s.first += e;
                    s.second = is_prime(v) ? (fits_u64(v) ? Certainty::prime : Certainty::unknown) : c;
                };
                put(g, ea.first + eb.first, Certainty::composite);
                put(Int(a / g), ea.first, ea.second);
                put(Int(b / g), eb.first, eb.second);
                changed = true;
            }
    }

    res.complete = true;
    for (const auto& [d, ec] : found) {
        res.factors.push_back(FactorEntry{d, ec.first, ec.second});
        if (ec.second != Certainty::prime && ec.second != Certainty::unknown) res.complete = false;
    }
    return res;
}

} // namespace simerka
