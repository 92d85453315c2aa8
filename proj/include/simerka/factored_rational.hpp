#pragma once

#include <map>
#include <string>
#include <string_view>

#include "simerka/integer.hpp"

namespace simerka {

/// A nonzero rational number kept in factored shape: prime -> signed exponent.
/// No key ever carries exponent 0.
class FactoredRational {
public:
    using Map = std::map<Int, long>;

    FactoredRational() = default;

    static FactoredRational prime_power(const Int& p, long e);

    long exponent(const Int& p) const;
    void multiply_prime(const Int& p, long e);

    FactoredRational& operator*=(const FactoredRational& other);
    friend FactoredRational operator*(FactoredRational lhs, const FactoredRational& rhs)
    {
        lhs *= rhs;
        return lhs;
    }

    FactoredRational inverse() const;
    FactoredRational pow(long k) const;

    bool is_one() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    Int numerator() const;
    Int denominator() const;

    /// "p1^e1 * p2^e2 * ..." with signed exponents, "1" when empty.
    std::string to_string() const;
    static FactoredRational parse(std::string_view text);

    bool operator==(const FactoredRational& other) const = default;

private:
    Map entries_;
};

} // namespace simerka
