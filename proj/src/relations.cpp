#include "simerka/relations.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "simerka/arith.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simerka {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Uniform draw in [0, bound) by rejection, independent of the library's
/// distribution implementation.
std::uint64_t draw(std::mt19937_64& gen, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = gen();
    while (r >= limit);
    return r % bound;
}

std::string describe(const std::vector<std::int64_t>& e, const FactorBase& base)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << " * ";
        os << "I" << base[i].p << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

/// Relations from the hits on a form known to equal the product `exps`.
void harvest(const std::vector<std::int64_t>& exps, const QForm& q, const FactorBase& base, const SearchEffort& effort,
             std::vector<Relation>& out)
{
    for (const auto& hit : smooth_search(q, base, effort)) {
        std::vector<std::int64_t> rel = exps;
        const auto s = exponent_vector(hit.value, base);
        for (std::size_t i = 0; i < rel.size(); ++i) rel[i] -= s[i];
        if (std::all_of(rel.begin(), rel.end(), [](std::int64_t x) { return x == 0; })) continue;
        Relation r{std::move(rel), describe(exps, base) + " ~ " + to_string(hit.form) + " " + hit.provenance + " value " +
                                       hit.value.to_string()};
        // The product of `exps` is q by construction, so checking the hit
        // against the form rebuilt from its value verifies the relation.
        if (base.discriminant().fundamental == Fundamentality::fundamental ||
            reduce(form_from_factored(hit.value, base)) == reduce(hit.form))
            out.push_back(std::move(r));
    }
}

std::vector<Relation> random_trial(const FactorBase& base, const CollectConfig& cfg, std::uint64_t trial)
{
    std::mt19937_64 gen(splitmix(cfg.seed * 0x2545F4914F6CDD1DULL + splitmix(trial)));
    const std::size_t n = base.size();
    std::vector<std::int64_t> exps(n, 0);
    exps[trial % n] = 1;
    const std::size_t pool = std::min(cfg.random_pool, n);
    const auto span = static_cast<std::uint64_t>(2 * cfg.exponent_range + 1);
    for (std::size_t k = 0; k < cfg.random_primes; ++k) {
        const std::size_t i = draw(gen, pool);
        exps[i] += static_cast<std::int64_t>(draw(gen, span)) - cfg.exponent_range;
    }
    SearchEffort effort = cfg.effort;
    if (cfg.hits_per_trial) effort.max_hits = cfg.hits_per_trial;
    std::vector<Relation> out;
    harvest(exps, relation_form(exps, base), base, effort, out);
    return out;
}

void check_deadline(const CollectConfig& cfg)
{
    if (cfg.deadline && Clock::now() > *cfg.deadline) throw Error(Errc::timeout, "relation search ran out of time");
}

struct Collector {
    std::size_t target;
    std::set<std::vector<std::int64_t>> seen;
    std::vector<Relation> rels;

    bool add(Relation r)
    {
        if (rels.size() >= target) return false;
        if (!seen.insert(r.exponents).second) return true;
        rels.push_back(std::move(r));
        return true;
    }
    bool done() const { return rels.size() >= target; }
};

std::vector<Relation> collect_random(const FactorBase& base, const CollectConfig& cfg, bool parallel,
                                     std::uint64_t* next_trial)
{
    Collector col{cfg.target ? cfg.target : base.size() + 10, {}, {}};
    std::uint64_t trial = cfg.first_trial;
    const std::uint64_t end = cfg.first_trial + cfg.max_trials;
    int workers = 1;
#ifdef _OPENMP
    if (parallel) workers = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#endif
    const std::uint64_t batch = parallel ? 16 * static_cast<std::uint64_t>(workers) : 16;
    while (!col.done()) {
        check_deadline(cfg);
        if (trial >= end) {
            if (next_trial) *next_trial = trial;
            throw Error(Errc::timeout, "trial budget exhausted after " + std::to_string(cfg.max_trials) +
                                           " trials with " + std::to_string(col.rels.size()) + " relations");
        }
        const std::uint64_t count = std::min(batch, end - trial);
        std::vector<std::vector<Relation>> found(count);
        if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
            for (std::uint64_t i = 0; i < count; ++i) found[i] = random_trial(base, cfg, trial + i);
        } else {
            for (std::uint64_t i = 0; i < count; ++i) found[i] = random_trial(base, cfg, trial + i);
        }
        for (std::uint64_t i = 0; i < count && !col.done(); ++i) {
            for (auto& r : found[i]) col.add(std::move(r));
            if (col.done()) {
                trial += i + 1;
                break;
            }
        }
        if (!col.done()) trial += count;
    }
    if (next_trial) *next_trial = trial;
    return std::move(col.rels);
}

std::vector<Relation> collect_small_powers(const FactorBase& base, const CollectConfig& cfg)
{
    const std::size_t n = base.size();
    Collector col{cfg.target ? cfg.target : std::numeric_limits<std::size_t>::max(), {}, {}};
    std::vector<QForm> cur(n);
    for (unsigned k = 1; k <= cfg.power_cap && !col.done(); ++k) {
        check_deadline(cfg);
        for (std::size_t i = 0; i < n && !col.done(); ++i) {
            cur[i] = k == 1 ? reduce(base[i].form) : compose(cur[i], base[i].form);
            std::vector<std::int64_t> exps(n, 0);
            exps[i] = k;
            std::vector<Relation> found;
            harvest(exps, cur[i], base, cfg.effort, found);
            for (auto& r : found) col.add(std::move(r));
        }
    }
    if (cfg.target && !col.done())
        throw Error(Errc::timeout, "power walk ended with " + std::to_string(col.rels.size()) + " of " +
                                       std::to_string(cfg.target) + " relations");
    return std::move(col.rels);
}

std::vector<Relation> collect(const FactorBase& base, const CollectConfig& cfg, bool parallel, std::uint64_t* next_trial)
{
    if (base.empty()) throw Error(Errc::invalid_argument, "factor base is empty");
    if (cfg.strategy == Strategy::small_powers) return collect_small_powers(base, cfg);
    return collect_random(base, cfg, parallel, next_trial);
}

std::uint64_t count_reduced_forms(const Int& disc)
{
    return reduced_forms(disc).size();
}

} // namespace

const char* strategy_name(Strategy s)
{
    return s == Strategy::small_powers ? "SMALL_POWERS" : "RANDOM_PRODUCTS";
}

Strategy parse_strategy(const std::string& name)
{
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (up == "SMALL_POWERS") return Strategy::small_powers;
    if (up == "RANDOM_PRODUCTS") return Strategy::random_products;
    throw Error(Errc::invalid_argument, "unknown strategy '" + name + "'");
}

const char* certification_name(Certification c)
{
    switch (c) {
    case Certification::enumerated: return "ENUMERATED";
    case Certification::stabilized: return "STABILIZED";
    case Certification::divisor_only: return "DIVISOR_ONLY";
    }
    return "?";
}

QForm relation_form(const std::vector<std::int64_t>& exponents, const FactorBase& base)
{
    if (exponents.size() != base.size())
        throw Error(Errc::invalid_argument, "exponent vector length does not match the factor base");
    QForm acc = principal_form(base.discriminant());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] != 0) acc = compose(acc, power(base[i].form, from_i64(exponents[i])));
    return acc;
}

bool verify_relation(const Relation& rel, const FactorBase& base)
{
    return is_principal(relation_form(rel.exponents, base));
}

std::vector<Relation> collect_relations(const FactorBase& base, const CollectConfig& config, std::uint64_t* next_trial)
{
    return collect(base, config, true, next_trial);
}

std::vector<Relation> collect_relations_serial(const FactorBase& base, const CollectConfig& config)
{
    return collect(base, config, false, nullptr);
}

GroupStructure group_structure(const FactorBase& base, const std::vector<Relation>& rels)
{
    GroupStructure gs;
    const Int& disc = base.discriminant().value;
    if (!base.empty()) {
        RelationLattice lat(base.size());
        for (const auto& r : rels) lat.add(r.exponents);
        if (!lat.full_rank()) throw Error(Errc::rank_deficient, "relation lattice is not of full rank");
        gs.order = lat.determinant();
        gs.divisors = lat.elementary_divisors();
    }
    gs.certified = Certification::divisor_only;
    if (abs(disc) <= kEnumerationLimit && from_u64(count_reduced_forms(disc)) == gs.order)
        gs.certified = Certification::enumerated;
    return gs;
}

RelationLattice saturate(const FactorBase& base, const CollectConfig& config, std::vector<Relation>& out)
{
    RelationLattice lat(base.size());
    for (const auto& r : out) lat.add(r.exponents);
    CollectConfig cfg = config;
    cfg.strategy = Strategy::random_products;
    cfg.target = base.size() + 10;
    std::uint64_t budget_end = config.first_trial + config.max_trials;
    std::optional<Int> last;
    for (;;) {
        std::uint64_t next = cfg.first_trial;
        cfg.max_trials = budget_end - cfg.first_trial;
        auto batch = collect_random(base, cfg, true, &next);
        cfg.first_trial = next;
        for (auto& r : batch) {
            lat.add(r.exponents);
            out.push_back(std::move(r));
        }
        if (!lat.full_rank()) continue;
        const Int det = lat.determinant();
        if (last && *last == det) return lat;
        last = det;
    }
}

ClassGroup compute_class_group(const Discriminant& disc, const ClassGroupConfig& config)
{
    const std::uint64_t bound = config.fb_bound ? *config.fb_bound : default_factor_base_bound(disc);
    ClassGroup out{build_factor_base(disc, bound), {}, {}};
    const FactorBase& base = out.base;
    if (base.empty()) {
        out.structure = group_structure(base, {});
        return out;
    }

    CollectConfig cfg;
    cfg.seed = config.seed;
    cfg.effort = config.effort;
    cfg.power_cap = config.power_cap;
    cfg.workers = config.workers;
    cfg.max_trials = config.max_trials;
    cfg.deadline = config.deadline;

    std::vector<Relation> first;
    if (config.strategy == Strategy::small_powers) {
        cfg.strategy = Strategy::small_powers;
        first = collect_relations(base, cfg);
    }
    RelationLattice a = saturate(base, cfg, first);
    const bool countable = abs(disc.value) <= kEnumerationLimit;
    if (countable && from_u64(count_reduced_forms(disc.value)) == a.determinant()) {
        out.relations = std::move(first);
        out.structure = GroupStructure{a.determinant(), a.elementary_divisors(), Certification::enumerated};
        return out;
    }
    // Disjoint stream: different seed, same trial indices.
    CollectConfig other = cfg;
    other.seed = splitmix(config.seed ^ 0x5DEECE66DULL);
    std::vector<Relation> second;
    RelationLattice b = saturate(base, other, second);

    std::set<std::vector<std::int64_t>> seen;
    for (auto* batch : {&first, &second})
        for (auto& r : *batch)
            if (seen.insert(r.exponents).second) out.relations.push_back(std::move(r));
    out.structure = group_structure(base, out.relations);
    if (out.structure.certified != Certification::enumerated && a.determinant() == b.determinant() &&
        a.determinant() == out.structure.order)
        out.structure.certified = Certification::stabilized;
    return out;
}

Int element_order(const QForm& q, const Int& multiple)
{
    if (multiple <= 0) throw Error(Errc::invalid_argument, "element_order needs a positive multiple");
    if (!is_principal(power(q, multiple)))
        throw Error(Errc::precondition, "power(" + to_string(q) + ", " + multiple.get_str() + ") is not principal");
    Int m = multiple;
    for (const auto& [p, e] : factorize(multiple)) {
        for (unsigned i = 0; i < e; ++i) {
            const Int next = m / p;
            if (!is_principal(power(q, next))) break;
            m = next;
        }
    }
    return m;
}

} // namespace simerka
