#pragma once

#include <cstdint>

#include "simerka/bqf.hpp"

namespace simerka {

/// Reduced representative of the class product. Works for any pair of
/// primitive forms of equal discriminant, including leading coefficients
/// with a common factor (Dirichlet's united forms through two gcd steps).
QForm compose(const QForm& lhs, const QForm& rhs);

/// Dirichlet's construction as stated classically, without reduction:
/// when gcd(a1, a2) = 1 returns (a1 a2, B, (B^2 - d) / (4 a1 a2)) with
/// B = b1 mod 2a1 and B = b2 mod 2a2. Otherwise `rhs` is first replaced by
/// an equivalent form whose leading coefficient is a represented value
/// coprime to a1, scanning representations up to `scan_bound`.
QForm dirichlet_compose(const QForm& lhs, const QForm& rhs, std::uint64_t scan_bound = 20);

/// reduce((a, -b, c)).
QForm inverse(const QForm& q);

/// Reduced representative of q^n; n < 0 goes through the inverse.
QForm power(const QForm& q, const Int& n);

} // namespace simerka
