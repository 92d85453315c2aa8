#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simerka/bqf.hpp"
#include "simerka/relations.hpp"
#include "simerka/simerka_map.hpp"

namespace simerka {

/// -n when n = 3 (mod 4), otherwise -4n.
Discriminant choose_discriminant(const Int& n);

/// Nontrivial (d1, d2) with d1 * d2 = n read off a reduced ambiguous form of
/// discriminant -n or -4n; nullopt for a trivial split. Throws not_ambiguous.
std::optional<std::pair<Int, Int>> ambiguous_split(const QForm& q, const Int& n);

struct PowerHit {
    unsigned exponent = 0; ///< hit found on q^exponent
    SmoothHit hit;
};

/// Smooth hits on q, q^2, ..., q^cap.
std::vector<PowerHit> power_walk_hits(const QForm& q, const FactorBase& base, unsigned cap,
                                      const SearchEffort& effort = {});

/// For a hit on q^(2a) whose value is m^2, the class q^a / m is ambiguous;
/// returns the first such class that is not principal.
std::optional<QForm> square_shortcut(const FactorBase& base, const QForm& q, const std::vector<PowerHit>& hits);

enum class Certainty { prime, composite, unknown };
const char* certainty_name(Certainty c);

struct FactorEntry {
    Int divisor;
    unsigned exponent = 1;
    Certainty certainty = Certainty::unknown;
};

struct TraceStep {
    std::string step;
    std::string detail;
    std::optional<QForm> form;
};

struct FactorConfig {
    std::uint64_t trial_bound = 1000; ///< 0 skips trial division
    std::optional<std::uint64_t> fb_bound;
    std::uint64_t seed = 1;
    SearchEffort effort{};
    unsigned power_cap = 40;
    int workers = 0;
    std::uint64_t max_trials = 1000000;
    std::chrono::duration<double> time_limit = std::chrono::minutes(10);
    unsigned multipliers = 6;
};

struct FactorResult {
    Int n;
    std::vector<FactorEntry> factors; ///< ascending by divisor
    std::vector<TraceStep> trace;
    bool complete = false;         ///< every factor is prime
    bool budget_exhausted = false; ///< a time or trial budget ran out
};

FactorResult factor(const Int& n, const FactorConfig& config = {});

} // namespace simerka
