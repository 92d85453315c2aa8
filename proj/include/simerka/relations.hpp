#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simerka/bqf.hpp"
#include "simerka/lattice.hpp"
#include "simerka/simerka_map.hpp"

namespace simerka {

using Clock = std::chrono::steady_clock;

struct Relation {
    std::vector<std::int64_t> exponents; ///< indexed like the factor base
    std::string witness;

    bool operator==(const Relation& other) const { return exponents == other.exponents; }
};

enum class Strategy { small_powers, random_products };
const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct CollectConfig {
    Strategy strategy = Strategy::random_products;
    std::uint64_t seed = 1;
    /// Relations wanted; 0 means base size + 10 for random products and the
    /// whole walk for small powers.
    std::size_t target = 0;
    std::uint64_t max_trials = 200000;
    std::uint64_t first_trial = 0; ///< resume point for random products
    unsigned power_cap = 40;
    std::int64_t exponent_range = 1 << 16;
    std::size_t random_primes = 3;
    std::size_t random_pool = 20;
    SearchEffort effort{};
    std::size_t hits_per_trial = 4; ///< random products only; 0 keeps all
    int workers = 0; ///< 0 uses the OpenMP default
    std::optional<Clock::time_point> deadline;
};

/// Reduced product of I_p^e over the base.
QForm relation_form(const std::vector<std::int64_t>& exponents, const FactorBase& base);

bool verify_relation(const Relation& rel, const FactorBase& base);

/// Verified, deduplicated relations with no zero vectors. Deterministic for a
/// fixed seed whatever the worker count.
/// `next_trial`, when given, receives the first unused random-product trial.
std::vector<Relation> collect_relations(const FactorBase& base, const CollectConfig& config,
                                        std::uint64_t* next_trial = nullptr);
/// Single-threaded reference for collect_relations.
std::vector<Relation> collect_relations_serial(const FactorBase& base, const CollectConfig& config);

enum class Certification { enumerated, stabilized, divisor_only };
const char* certification_name(Certification c);

struct GroupStructure {
    Int order{1};
    std::vector<Int> divisors; ///< d1 | d2 | ... , all > 1
    Certification certified = Certification::divisor_only;
};

/// Largest |d| for which reduced forms are counted to certify a result.
inline constexpr std::uint64_t kEnumerationLimit = 100000000;

/// Structure of Z^n modulo the relations; throws rank_deficient.
GroupStructure group_structure(const FactorBase& base, const std::vector<Relation>& rels);

struct ClassGroupConfig {
    std::optional<std::uint64_t> fb_bound;
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::random_products;
    SearchEffort effort{};
    unsigned power_cap = 40;
    int workers = 0;
    std::uint64_t max_trials = 2000000;
    std::optional<Clock::time_point> deadline;
};

struct ClassGroup {
    FactorBase base;
    std::vector<Relation> relations;
    GroupStructure structure;
};

/// Collects relations until the determinant stops changing, twice from
/// disjoint seeds, and merges both batches.
ClassGroup compute_class_group(const Discriminant& disc, const ClassGroupConfig& config);

/// Lattice of `out` extended by random products until one extra batch leaves
/// the determinant unchanged; new relations are appended to `out`.
RelationLattice saturate(const FactorBase& base, const CollectConfig& config, std::vector<Relation>& out);

/// Exact order of q given a multiple of it; throws precondition when
/// q^multiple is not principal.
Int element_order(const QForm& q, const Int& multiple);

} // namespace simerka
