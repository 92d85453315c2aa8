#pragma once

#include <stdexcept>
#include <string>

namespace simerka {

enum class Errc {
    invalid_argument,
    parse_error,
    discriminant_mismatch,
    inert_prime,
    condition_violated,
    not_primitive,
    not_ambiguous,
    precondition,
    rank_deficient,
    timeout,
    budget_exceeded,
};

const char* errc_name(Errc code);

/// Domain error raised by every module. `code()` distinguishes the failure
/// classes callers are expected to react to (budget exhaustion vs bad input).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

    bool is_budget() const noexcept
    {
        return code_ == Errc::timeout || code_ == Errc::budget_exceeded;
    }

private:
    Errc code_;
};

} // namespace simerka
