#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "simerka/bqf.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"

using namespace simerka;

namespace {
QForm F(long a, long b, long c) { return QForm{Int(a), Int(b), Int(c)}; }

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::invalid_argument;
}
} // namespace

TEST_SUITE("bqf") {

TEST_CASE("discriminant")
{
    CHECK(discriminant_value(F(5, 1, 504)) == -10079);
    CHECK(discriminant_value(F(1, 0, 5)) == -20);
    CHECK(discriminant_value(QForm{2, 1, Int("1388888888888889")}) == Int("-11111111111111111"));
    CHECK(discriminant(F(1, 0, 5)).fundamental == Fundamentality::fundamental);
    CHECK(make_discriminant(Int(-80)).fundamental == Fundamentality::not_fundamental);
    CHECK(make_discriminant(Int(-104)).fundamental == Fundamentality::fundamental);
    CHECK(code_of([] { make_discriminant(Int(-10)); }) == Errc::invalid_argument);
    CHECK(code_of([] { make_discriminant(Int(5)); }) == Errc::invalid_argument);
    CHECK(code_of([] { validate(F(-1, 0, -5)); }) == Errc::invalid_argument);
}

TEST_CASE("reduce")
{
    CHECK(reduce(F(504, -1, 5)) == F(5, 1, 504));
    CHECK(reduce(F(36, 17, 72)) == F(36, 17, 72));
    CHECK(reduce(F(1, 0, 5)) == F(1, 0, 5));
    CHECK(reduce(F(3795, -13, 8)) == reduce(F(8, 13, 3795)));
    CHECK(reduce(F(2, -2, 3)) == F(2, 2, 3));
    CHECK(reduce(F(3, -2, 3)) == F(3, 2, 3));
    CHECK(is_reduced(F(5, 1, 504)));
    CHECK_FALSE(is_reduced(F(5, -5, 506)));
    CHECK(normalize_b(F(5, 11, 507)).b == 1);
}

TEST_CASE("is_equivalent")
{
    CHECK(is_equivalent(F(8, 13, 3795), F(3795, -13, 8)));
    CHECK_FALSE(is_equivalent(F(5, 1, 504), F(5, -1, 504)));
    CHECK(is_equivalent(F(5, 1, 504), F(5, 1, 504)));
    CHECK(code_of([] { is_equivalent(F(1, 0, 5), F(1, 1, 2520)); }) == Errc::discriminant_mismatch);
}

TEST_CASE("principal form")
{
    CHECK(principal_form(Int(-20)) == F(1, 0, 5));
    CHECK(principal_form(Int(-10079)) == F(1, 1, 2520));
    CHECK(principal_form(Int("-44444444444444444")) == QForm{1, 0, Int("11111111111111111")});
    CHECK(is_principal(F(1, 3, 2522)));
    CHECK_FALSE(is_principal(F(5, 1, 504)));
}

TEST_CASE("is_ambiguous")
{
    CHECK(is_ambiguous(F(1511, 1511, 5695)));
    CHECK(is_ambiguous(QForm{Int(2071723), Int(2071723), Int(1341323520)}));
    CHECK_FALSE(is_ambiguous(F(5, 1, 504)));
    CHECK(is_ambiguous(F(1, 0, 5)));
    CHECK(is_ambiguous(F(2, 2, 3)));
}

TEST_CASE("neighbors")
{
    const auto n0 = neighbors(F(1, 0, 5));
    CHECK(std::find(n0.begin(), n0.end(), F(6, 2, 1)) != n0.end());
    CHECK(std::find(n0.begin(), n0.end(), F(6, -2, 1)) != n0.end());
    const auto n1 = neighbors(F(3, 1, 10106));
    CHECK(std::any_of(n1.begin(), n1.end(), [](const QForm& q) { return q.a == 10110; }));
    const auto n2 = neighbors(F(3, 0, 7));
    CHECK(n2[0].a == 10);
    CHECK(n2[1].a == 10);
    for (const auto& q : n1) CHECK(is_equivalent(q, F(3, 1, 10106)));
}

TEST_CASE("normalize_representation")
{
    // The substitution with first column (x, y) = (1, 1) gives B = -2; the
    // (6, 2, 1) shape comes from (1, -1). Both are properly equivalent to Q0.
    CHECK(normalize_representation(F(1, 0, 5), 1, 1) == F(6, -2, 1));
    CHECK(normalize_representation(F(1, 0, 5), 1, -1) == F(6, 2, 1));
    CHECK(normalize_representation(F(1, 0, 5), 2, 1) == F(9, -4, 1));
    CHECK(normalize_representation(F(1, 0, 5), 2, -1) == F(9, 4, 1));
    CHECK(is_equivalent(F(6, 2, 1), F(1, 0, 5)));
    CHECK(is_equivalent(F(9, 4, 1), F(1, 0, 5)));
    CHECK(normalize_representation(F(5, 11, 507), 1, 0) == normalize_b(F(5, 11, 507)));
    CHECK(code_of([] { normalize_representation(F(1, 0, 5), 2, 2); }) == Errc::not_primitive);
}

TEST_CASE("scan_represented")
{
    auto values = [](const QForm& q, std::uint64_t bound) {
        std::vector<Int> out;
        for (const auto& r : scan_represented(q, bound)) out.push_back(r.value);
        return out;
    };
    const auto v0 = values(F(1, 0, 5), 2);
    for (long want : {1, 5, 6, 9}) CHECK(std::find(v0.begin(), v0.end(), Int(want)) != v0.end());
    const auto v1 = values(F(2, 2, 3), 2);
    for (long want : {2, 3, 7}) CHECK(std::find(v1.begin(), v1.end(), Int(want)) != v1.end());
    const QForm q = F(5, 1, 504);
    const std::vector<Int> corners{evaluate(q, 1, 0), evaluate(q, 0, 1), evaluate(q, 1, 1), evaluate(q, 1, -1)};
    for (const auto& v : values(q, 1)) CHECK(std::find(corners.begin(), corners.end(), v) != corners.end());
    for (const auto& r : scan_represented(q, 4)) {
        CHECK(r.form.a == r.value);
        CHECK(evaluate(q, r.x, r.y) == r.value);
        CHECK(is_equivalent(r.form, q));
    }
}

TEST_CASE("power_residue_form")
{
    const auto j1 = power_residue_form(Int(3), Int(1), 3);
    CHECK(j1.determinant == 26);
    CHECK(j1.form == F(3, 2, 9));
    CHECK(j1.disc.value == -104);
    const auto j2 = power_residue_form(Int(3), Int(2), 5);
    CHECK(j2.determinant == 239);
    CHECK(j2.form == F(3, 4, 81));
    CHECK(j2.disc.value == -956);
    CHECK(code_of([] { power_residue_form(Int(3), Int(2), 3); }) == Errc::condition_violated);
}

TEST_CASE("reduced_forms against the enumerator")
{
    for (long d : {-3L, -4L, -20L, -23L, -104L, -956L, -10079L}) {
        std::vector<QForm> expected;
        for (const auto& f : oracle::reduced_forms(d)) expected.push_back(F(f[0], f[1], f[2]));
        CHECK(reduced_forms(Int(d)) == expected);
    }
    CHECK(reduced_forms(Int(-10079)).size() == 135);
    CHECK(reduced_forms(Int(-121271)).size() == 525);
}

TEST_CASE("text format")
{
    CHECK(to_string(F(5, 1, 504)) == "(5,1,504)");
    CHECK(parse_form("504,-1,5") == F(504, -1, 5));
    CHECK(parse_form(" ( 5 , 1 , 504 ) ") == F(5, 1, 504));
    std::ostringstream os;
    os << F(1, 0, 5);
    CHECK(os.str() == "(1,0,5)");
    CHECK(code_of([] { parse_form("1,2"); }) == Errc::parse_error);
    CHECK(code_of([] { parse_form("a,b,c"); }) == Errc::parse_error);
}

}
