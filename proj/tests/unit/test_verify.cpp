#include <cmath>

#include "doctest.h"
#include "wealth/families.hpp"
#include "wealth/verify.hpp"

using namespace wealth;

TEST_SUITE("verify") {
    TEST_CASE("result relations") {
        CHECK(make_result("a", Relation::at_most, 1.0, 1.0).passed);
        CHECK_FALSE(make_result("a", Relation::at_most, 1.5, 1.0).passed);
        CHECK(make_result("a", Relation::at_least, 1.5, 1.0).passed);
        CHECK_FALSE(make_result("a", Relation::at_least, 0.5, 1.0).passed);
        CHECK_FALSE(make_result("a", Relation::at_most, NAN, 1.0).passed);
        CHECK_FALSE(make_result("a", Relation::at_least, NAN, 1.0).passed);
    }

    TEST_CASE("random densities") {
        const Grid g = make_grid(kDefaultGridPoints, 40.0);
        Xoshiro256 rng(1);
        for (int i = 0; i < 20; ++i) {
            const double target = 0.25 + 0.1 * i;
            const Density y = random_density(g, rng, target);
            CHECK(quad_norm(y) == doctest::Approx(target).epsilon(1e-14));
            CHECK(quad_mean(y) / target >= 0.5);
            CHECK(quad_mean(y) / target <= 1.5);
            CHECK(truncation_healthy(y));
        }
        for (int i = 0; i < 20; ++i) {
            const Density y = near_exponential_density(g, rng);
            CHECK(quad_norm(y) == doctest::Approx(1.0).epsilon(1e-14));
            const double rate = quad_norm(y) / quad_mean(y);
            const Density e = sample_family(FamilySpec::exponential(rate), g);
            CHECK(l1_distance(y, e) < 0.25);
        }
    }

    TEST_CASE("default suite passes") {
        const VerifyReport r = run_property_suite();
        for (const auto& p : r.properties) {
            CAPTURE(p.name);
            CAPTURE(p.measured);
            CHECK(p.passed);
        }
        CHECK(r.all_passed());
        CHECK(r.failed().empty());
        CHECK(r.properties.size() == 14);
    }

    TEST_CASE("coarse grids are caught") {
        VerifyOptions o;
        o.n_points = 64;
        const PropertyResult r = check_norm_squaring(o);
        CHECK_FALSE(r.passed);
        CHECK(r.measured > kNormSquaringTolerance);
        const VerifyReport report = run_property_suite(o);
        CHECK_FALSE(report.all_passed());
    }

    TEST_CASE("the suite is reproducible for a seed") {
        VerifyOptions o;
        o.samples = 10;
        const auto a = check_lipschitz(o);
        const auto b = check_lipschitz(o);
        CHECK(a[0].measured == b[0].measured);
        o.seed += 1;
        CHECK(check_lipschitz(o)[0].measured != a[0].measured);
    }

    TEST_CASE("failures inside a check become failed properties") {
        VerifyOptions o;
        o.n_points = 8;  // below the grid minimum
        const VerifyReport r = run_property_suite(o);
        CHECK_FALSE(r.all_passed());
        CHECK(r.failed().size() == r.properties.size());
    }
}
