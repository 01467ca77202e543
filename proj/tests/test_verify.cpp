#include <doctest.h>

#include <nctorus/io.hpp>
#include <nctorus/verify.hpp>

#include <cmath>
#include <stdexcept>

using namespace nctorus;

TEST_CASE("scalar region minimum lands on 3 - sqrt 5") {
    auto r = scalar_region_min(1e-3);
    CHECK(std::abs(r.w_min - 0.7639320225002102) <= 2e-3);
    CHECK(std::abs(r.t_at_min - 0.3819660112501051) <= 2e-3);
    CHECK(std::abs(r.s_at_min - 0.3819660112501051) <= 2e-3);
    CHECK(r.t_at_min <= r.s_at_min);

    // refining the grid tightens the result
    auto r4 = scalar_region_min(2.5e-4);
    CHECK(std::abs(r4.w_min - 0.7639320225002102) <= 5e-4);

    // the feasibility constraint holds at the reported argmin
    CHECK((1.0 - r.t_at_min) * (1.0 - r.s_at_min) <= r.t_at_min + 1e-12);

    CHECK_THROWS_AS(scalar_region_min(0.0), std::invalid_argument);
    CHECK_THROWS_AS(scalar_region_min(0.5), std::invalid_argument);
}

TEST_CASE("endo bound harness certifies the monomial family") {
    for (double theta : {0.3, 0.5, 2.0 / 3.0}) {
        CAPTURE(theta);
        auto rep = verify_endo_bound(theta, 3);
        CHECK(rep.pass);
        REQUIRE(rep.checks.size() == 3);
        // family minimum is the identity matrix at 8 pi^2
        const auto& fm = rep.checks[2];
        CHECK(fm.name == "family_minimum");
        CHECK(std::abs(fm.value - 8.0 * M_PI * M_PI) <= 1e-9);
        CHECK(!rep.table.empty());
    }
    CHECK_THROWS_AS(verify_endo_bound(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_endo_bound(0.3, 0), std::invalid_argument);
}

TEST_CASE("pair bound harness passes on mixed monomial and conjugated pairs") {
    // Bandwidth 12: conjugation by a decay-0.5 unitary keeps truncation far
    // below the commutation gate, so no trial degenerates.
    auto batch = verify_lemma(0.3, 12, 77, 12);
    CHECK(batch.summary.pass);
    CHECK(batch.reports.size() == 12);
    CHECK(batch.summary.table.size() == 12);
    for (const auto& lr : batch.reports) {
        CHECK(lr.w >= pair_floor_w() - 1e-6);
        CHECK(lr.tr_uv_abs <= 1e-8);
    }
    CHECK_THROWS_AS(verify_lemma(1.0, 4, 0, 8), std::invalid_argument);
}

TEST_CASE("theorem harness relaxes perturbed monomials to the floor") {
    FlowConfig fc;
    // Bandwidth 10 keeps the perturbation's window discards orders below the
    // spill gate for every seed; 2e-4 sits under the stability bound there.
    fc.step_size = 2e-4;
    fc.grad_tol = 1e-8;
    fc.max_iters = 20000;
    auto rep = verify_theorem(0.3, 1, 0, 3, fc, 10, 99, 0.15);
    CHECK(rep.pass);
    CHECK(rep.table.size() == 3);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }
    CHECK_THROWS_AS(verify_theorem(0.3, 5, 0, 1, fc, 8), std::invalid_argument);
}

TEST_CASE("oracle harness wraps the certification") {
    auto rep = verify_oracle({5, 8}, 10, 3);
    CHECK(rep.pass);
    CHECK(rep.checks.size() == 2);
    CHECK(rep.table.size() == 2);
}

TEST_CASE("harness output is deterministic") {
    auto a = verify_lemma(0.3, 6, 123, 8);
    auto b = verify_lemma(0.3, 6, 123, 8);
    CHECK(lemma_batch_to_json(a) == lemma_batch_to_json(b));
    CHECK(summary_to_csv(a.summary) == summary_to_csv(b.summary));

    FlowConfig fc;
    fc.step_size = 3.5e-4;
    auto t1 = verify_theorem(0.3, 1, 0, 2, fc, 8, 5, 0.1);
    auto t2 = verify_theorem(0.3, 1, 0, 2, fc, 8, 5, 0.1);
    CHECK(summary_to_json(t1) == summary_to_json(t2));
}

TEST_CASE("reports echo the full configuration") {
    auto rep = verify_endo_bound(0.5, 2);
    bool has_theta = false;
    for (const auto& [k, v] : rep.config) {
        if (k == "theta") {
            has_theta = true;
            CHECK(v == format_g17(0.5));
        }
    }
    CHECK(has_theta);
    CHECK(rep.harness.find("monomial family only") != std::string::npos);
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {0.3, 1.0 / 3.0, 0.7071067811, 39.47841760435743, 1e-300}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}
