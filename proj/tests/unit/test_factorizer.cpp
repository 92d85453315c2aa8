#include "doctest.h"

#include "oracles.hpp"
#include "simerka/arith.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"
#include "simerka/factorizer.hpp"

using namespace simerka;

namespace {
QForm F(long a, long b, long c) { return QForm{Int(a), Int(b), Int(c)}; }

Int product(const FactorResult& r)
{
    Int p = 1;
    for (const auto& f : r.factors) p *= ipow(f.divisor, f.exponent);
    return p;
}

bool has_step(const FactorResult& r, const std::string& step)
{
    for (const auto& t : r.trace)
        if (t.step == step) return true;
    return false;
}
} // namespace

TEST_SUITE("factorizer") {

TEST_CASE("choose_discriminant")
{
    CHECK(choose_discriminant(Int("11111111111111111")).value == Int("-11111111111111111"));
    CHECK(choose_discriminant(Int(32137459)).value == -32137459);
    CHECK(choose_discriminant(Int(5)).value == -20);
}

TEST_CASE("ambiguous_split")
{
    const Int N("11111111111111111");
    const auto s1 = ambiguous_split(QForm{Int(2071723), Int(2071723), Int(1341323520)}, N);
    REQUIRE(s1.has_value());
    CHECK(s1->first == 2071723);
    CHECK(s1->second == Int("5363222357"));

    const auto s2 = ambiguous_split(F(1511, 1511, 5695), Int(32137459));
    REQUIRE(s2.has_value());
    CHECK(*s2 == std::pair<Int, Int>{1511, 21269});

    const Int n(32137459);
    CHECK_FALSE(ambiguous_split(principal_form(-n), n).has_value());

    // b = 0 shape at -4n: n = 21 = 3 * 7, (3,0,7)
    const auto s3 = ambiguous_split(F(3, 0, 7), Int(21));
    REQUIRE(s3.has_value());
    CHECK(s3->first * s3->second == 21);
    CHECK(s3->first == 3);

    try {
        ambiguous_split(F(5, 1, 504), Int(10079));
        FAIL("expected not_ambiguous");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_ambiguous);
    }
}

TEST_CASE("square_shortcut")
{
    const auto disc = choose_discriminant(Int(32137459));
    const auto base = build_factor_base(disc, default_factor_base_bound(disc));
    const QForm q = F(5, 1, 1606873);
    const auto hits = power_walk_hits(q, base, 30);
    bool eleven_squared = false;
    for (const auto& h : hits)
        if (h.exponent == 26 && h.hit.value.numerator() * h.hit.value.denominator() == 121) eleven_squared = true;
    CHECK(eleven_squared);
    const auto amb = square_shortcut(base, q, hits);
    REQUIRE(amb.has_value());
    CHECK(*amb == F(1511, 1511, 5695));

    std::vector<PowerHit> trivial_only;
    for (const auto& h : hits)
        if (h.hit.value.is_one()) trivial_only.push_back(h);
    CHECK_FALSE(square_shortcut(base, q, trivial_only).has_value());

    const auto d20 = make_discriminant(Int(-20));
    const auto b20 = build_factor_base(d20, 10);
    const auto h20 = power_walk_hits(F(2, 2, 3), b20, 6);
    const auto a20 = square_shortcut(b20, F(2, 2, 3), h20);
    REQUIRE(a20.has_value());
    CHECK(*a20 == F(2, 2, 3));
}

TEST_CASE("factor small inputs")
{
    const auto r = factor(Int(10403));
    CHECK(r.complete);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].divisor == 101);
    CHECK(r.factors[1].divisor == 103);
    CHECK(r.factors[0].certainty == Certainty::prime);

    const auto td = oracle::factor_td(2 * 2 * 3 * 10403);
    const auto r2 = factor(Int(2 * 2 * 3 * 10403));
    REQUIRE(r2.factors.size() == td.size());
    std::size_t i = 0;
    for (auto [p, e] : td) {
        CHECK(r2.factors[i].divisor == static_cast<unsigned long>(p));
        CHECK(r2.factors[i].exponent == e);
        ++i;
    }

    const auto prime = factor(Int(1000003));
    CHECK(prime.complete);
    REQUIRE(prime.factors.size() == 1);
    CHECK(has_step(prime, "prime"));

    FactorConfig no_td;
    no_td.trial_bound = 0;
    const auto pp = factor(Int(10403) * 10403 * 10403, no_td);
    CHECK(pp.complete);
    CHECK(has_step(pp, "perfect_power"));
    REQUIRE(pp.factors.size() == 2);
    CHECK(pp.factors[0].exponent == 3);
    CHECK(product(pp) == Int(10403) * 10403 * 10403);

    CHECK_THROWS_AS(factor(Int(1)), Error);
}

TEST_CASE("factor 32137459")
{
    FactorConfig cfg;
    cfg.workers = 1;
    const auto r = factor(Int(32137459), cfg);
    CHECK(r.complete);
    CHECK_FALSE(r.budget_exhausted);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].divisor == 1511);
    CHECK(r.factors[1].divisor == 21269);
    CHECK(product(r) == 32137459);
    bool found = false;
    for (const auto& t : r.trace)
        if (t.form && *t.form == F(1511, 1511, 5695)) {
            found = true;
            CHECK(is_ambiguous(*t.form));
            CHECK(discriminant_value(*t.form) == -32137459);
        }
    CHECK(found);
}

TEST_CASE("budget exhaustion returns a partial result")
{
    FactorConfig cfg;
    cfg.workers = 1;
    cfg.max_trials = 1;
    cfg.multipliers = 0;
    const auto r = factor(Int(32137459), cfg);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.complete);
    CHECK(product(r) == 32137459);
    CHECK(has_step(r, "budget"));
    CHECK(r.factors.back().certainty == Certainty::composite);
}

}
