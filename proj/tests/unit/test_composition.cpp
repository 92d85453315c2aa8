#include "doctest.h"

#include "oracles.hpp"
#include "simerka/composition.hpp"

using namespace simerka;

namespace {
QForm F(long a, long b, long c) { return QForm{Int(a), Int(b), Int(c)}; }
} // namespace

TEST_SUITE("composition") {

TEST_CASE("compose examples")
{
    CHECK(compose(F(2, 2, 3), F(2, 2, 3)) == F(1, 0, 5));
    CHECK(compose(F(1058, 918, 251023), F(529, 140, 501657)) == reduce(F(2, 918, 132791167)));
    CHECK(compose(F(1, 1, 2520), F(504, -1, 5)) == F(5, 1, 504));
    CHECK(compose(F(504, -1, 5), F(1, 1, 2520)) == F(5, 1, 504));
}

TEST_CASE("compose matches the brute-force oracle")
{
    const long d = -10079;
    const auto forms = oracle::reduced_forms(d);
    for (std::size_t i = 0; i < forms.size(); i += 7)
        for (std::size_t j = 0; j < forms.size(); j += 11) {
            const auto& f = forms[i];
            const auto& g = forms[j];
            const auto want = oracle::compose(f, g);
            CHECK(compose(F(f[0], f[1], f[2]), F(g[0], g[1], g[2])) == F(want[0], want[1], want[2]));
        }
}

TEST_CASE("dirichlet_compose")
{
    // coprime leading coefficients: united forms directly
    const QForm u = dirichlet_compose(F(5, 1, 504), F(7, 1, 360));
    CHECK(u.a == 35);
    CHECK(discriminant_value(u) == -10079);
    CHECK(reduce(u) == compose(F(5, 1, 504), F(7, 1, 360)));
    // common factor forces a representation scan on the second form
    const QForm v = dirichlet_compose(F(5, 1, 504), F(5, 1, 504));
    CHECK(discriminant_value(v) == -10079);
    CHECK(reduce(v) == F(25, 11, 102));
    CHECK(reduce(v) == power(F(5, 1, 504), 2));
}

TEST_CASE("inverse")
{
    CHECK(inverse(F(5, 1, 504)) == F(5, -1, 504));
    CHECK(inverse(F(1511, 1511, 5695)) == F(1511, 1511, 5695));
    CHECK(inverse(F(2, 2, 3)) == F(2, 2, 3));
    CHECK(inverse(F(1, 0, 5)) == F(1, 0, 5));
    CHECK(compose(F(5, 1, 504), inverse(F(5, 1, 504))) == F(1, 1, 2520));
}

TEST_CASE("power")
{
    CHECK(power(F(5, 1, 504), 3) == F(36, 17, 72));
    CHECK(power(F(2, 1, 15159), 3) == reduce(F(8, 13, 3795)));
    CHECK(is_equivalent(power(F(2, 1, 15159), 3), F(3795, -13, 8)));
    CHECK(power(F(5, 1, 504), 0) == F(1, 1, 2520));
    CHECK(power(F(5, 1, 504), 135) == F(1, 1, 2520));
    CHECK(power(F(5, 1, 504), -1) == F(5, -1, 504));
    CHECK(power(F(5, 1, 504), -3) == inverse(F(36, 17, 72)));
    const QForm big{Int(2), Int(1), Int("1388888888888889")};
    CHECK(power(big, Int(53509655)) == QForm{Int(2071723), Int(2071723), Int(1341323520)});
}

TEST_CASE("power on a large discriminant takes the multiprecision path")
{
    const QForm q{Int(2), Int(1), Int("138888888888888888888888888889")};
    const Int d = discriminant_value(q);
    const QForm p = power(q, Int(1000003));
    CHECK(discriminant_value(p) == d);
    CHECK(is_reduced(p));
    CHECK(compose(p, power(q, Int(-1000003))) == principal_form(d));
}

}
