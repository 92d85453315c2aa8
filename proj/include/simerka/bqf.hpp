#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "simerka/integer.hpp"

namespace simerka {

/// Binary quadratic form a x^2 + b xy + c y^2.
struct QForm {
    Int a;
    Int b;
    Int c;

    bool operator==(const QForm& other) const = default;
};

enum class Fundamentality { fundamental, not_fundamental, unknown };

const char* fundamentality_name(Fundamentality f);

struct Discriminant {
    Int value;
    Fundamentality fundamental = Fundamentality::unknown;
};

inline constexpr std::uint64_t default_fundamental_trial_bound = 1'000'000;

/// Validates a negative discriminant (= 0 or 1 mod 4) and classifies it.
/// Fundamentality comes from trial division up to `trial_bound` plus a
/// primality test of what remains; UNKNOWN if the remainder resists both.
Discriminant make_discriminant(const Int& value,
                               std::uint64_t trial_bound = default_fundamental_trial_bound);

Int discriminant_value(const QForm& q);
Discriminant discriminant(const QForm& q);

/// Positive definite with a valid discriminant; throws invalid_argument otherwise.
void validate(const QForm& q);
bool is_primitive(const QForm& q);

Int evaluate(const QForm& q, const Int& x, const Int& y);

/// |b| <= a <= c, b >= 0 whenever |b| = a or a = c.
bool is_reduced(const QForm& q);
QForm reduce(const QForm& q);

/// Translate b into (-a, a] (x -> x + k y), keeping the discriminant.
QForm normalize_b(const QForm& q);

/// Proper equivalence; throws discriminant_mismatch.
bool is_equivalent(const QForm& lhs, const QForm& rhs);

QForm principal_form(const Int& disc);
QForm principal_form(const Discriminant& disc);

bool is_principal(const QForm& q);

/// Reduced shapes b = 0, a = b or a = c. Reduces first.
bool is_ambiguous(const QForm& q);

/// (A+B+C, -B-2A, A), (A-B+C, 2A-B, A), (A+B+C, B+2C, C), (A-B+C, B-2C, C):
/// equivalent forms whose leading coefficients are Q(1, 1) and Q(1, -1).
std::array<QForm, 4> neighbors(const QForm& q);

/// The form (Q(x,y), B, C) with -Q(x,y) < B <= Q(x,y) reached by a proper
/// substitution whose first column is (x, y). gcd(x, y) must be 1.
QForm normalize_representation(const QForm& q, const Int& x, const Int& y);

struct Representation {
    Int value;
    QForm form;
    Int x;
    Int y;
};

/// Primitive representations with |x|, |y| <= bound, one per distinct
/// (value, normalized form), ascending by value then middle coefficient.
std::vector<Representation> scan_represented(const QForm& q, std::uint64_t bound);

struct PowerResidueForm {
    QForm form;
    Discriminant disc;
    Int determinant; ///< D = a^m - b^2
};

/// (a, 2b, a^(m-1)) of discriminant -4(a^m - b^2). Requires 0 < 2b <= a^(m/2),
/// so that the period (a^k, 2b, a^(m-k)) holds a reduced non-principal form.
PowerResidueForm power_residue_form(const Int& a, const Int& b, unsigned long m);

/// All reduced primitive forms of discriminant d, sorted by (a, b).
/// OpenMP kernel over the leading coefficient.
std::vector<QForm> reduced_forms(const Int& disc);
std::vector<QForm> reduced_forms_serial(const Int& disc);

std::string to_string(const QForm& q);
/// Accepts "A,B,C" or "(A, B, C)".
QForm parse_form(std::string_view text);
std::ostream& operator<<(std::ostream& os, const QForm& q);

} // namespace simerka
