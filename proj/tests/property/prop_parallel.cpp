#include "doctest.h"

#include <omp.h>

#include <random>

#include "oracles.hpp"
#include "simerka/arith.hpp"
#include "simerka/bqf.hpp"
#include "simerka/lattice.hpp"
#include "simerka/relations.hpp"

using namespace simerka;

TEST_SUITE("parallel") {

TEST_CASE("carmichael scan: kernel, serial twin and oracle")
{
    std::vector<std::uint64_t> brute;
    for (std::uint64_t n = 3; n < 30000; n += 2)
        if (oracle::fermat_carmichael(n)) brute.push_back(n);
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        CHECK(carmichael_scan(30000) == brute);
        CHECK(carmichael_scan(2000000) == carmichael_scan_serial(2000000));
    }
}

TEST_CASE("reduced forms: kernel and serial twin")
{
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        for (const char* d : {"-3", "-20", "-10079", "-121271", "-1061486612", "-4000004"})
            CHECK(reduced_forms(Int(d)) == reduced_forms_serial(Int(d)));
    }
}

TEST_CASE("modular determinant: kernel, serial twin and Bareiss")
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 12;
        Matrix m(n, std::vector<Int>(n));
        oracle::ZMatrix z(n, std::vector<mpz_class>(n));
        const bool wide = t % 4 == 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Int x = static_cast<long>(rng() % 2001) - 1000;
                if (wide) x *= Int("123456789012345678901234567890");
                m[i][j] = x;
                z[i][j] = x;
            }
        if (t % 7 == 0 && n > 1) m[n - 1] = m[0], z[n - 1] = z[0];
        const Int want = oracle::determinant(z);
        for (int threads : {1, 4}) {
            omp_set_num_threads(threads);
            CHECK(modular_determinant(m) == want);
        }
        CHECK(modular_determinant_serial(m) == want);
    }
}

TEST_CASE("relation collection does not depend on the worker count")
{
    for (long d : {-121271L, -1061486612L}) {
        const auto disc = make_discriminant(Int(d));
        const auto base = build_factor_base(disc, default_factor_base_bound(disc));
        for (auto strategy : {Strategy::random_products, Strategy::small_powers}) {
            CollectConfig cfg;
            cfg.strategy = strategy;
            cfg.seed = 77;
            cfg.target = 80;
            cfg.power_cap = 10;
            cfg.workers = 1;
            const auto serial = collect_relations_serial(base, cfg);
            for (int workers : {1, 2, 4}) {
                cfg.workers = workers;
                CHECK(collect_relations(base, cfg) == serial);
            }
        }
    }
    omp_set_num_threads(omp_get_num_procs());
}

}
