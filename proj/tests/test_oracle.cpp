#include <doctest.h>

#include <nctorus/algebra.hpp>
#include <nctorus/matrix_oracle.hpp>

#include <cmath>
#include <stdexcept>

using namespace nctorus;

TEST_CASE("clock and shift at q = 2 are the Pauli pair") {
    auto c = clock(2, 1);
    auto s = shift(2);
    CHECK(std::abs(c.at(0, 0) - cplx(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(c.at(1, 1) - cplx(-1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(c.at(0, 1)) == 0.0);
    CHECK(s.at(1, 0) == cplx(1.0, 0.0));
    CHECK(s.at(0, 1) == cplx(1.0, 0.0));
    CHECK(s.at(0, 0) == cplx(0.0, 0.0));
    // anticommute: CS = -SC
    CHECK(mat_max_abs_diff(mat_mul(c, s), mat_scale(mat_mul(s, c), -1.0)) <= 1e-15);
}

TEST_CASE("clock-shift commutation CS = omega SC") {
    const int qp[][2] = {{5, 2}, {8, 3}, {13, 6}, {7, 3}, {9, 4}};
    for (auto [q, p] : qp) {
        auto c = clock(q, p);
        auto s = shift(q);
        cplx omega = std::polar(1.0, 2.0 * M_PI * p / double(q));
        CHECK(mat_max_abs_diff(mat_mul(c, s), mat_scale(mat_mul(s, c), omega)) <= 1e-14);
        // both unitary
        CHECK(mat_max_abs_diff(mat_mul(c, mat_adjoint(c)), MatrixRep::identity_mat(q)) <= 1e-14);
        CHECK(mat_max_abs_diff(mat_mul(s, mat_adjoint(s)), MatrixRep::identity_mat(q)) <= 1e-14);
    }
}

TEST_CASE("normalized matrix trace kills every nonzero mode below q") {
    const int q = 5, p = 2;
    const double theta = double(p) / q;
    TruncationPolicy pol{4, ClipMode::track_spill, 0.0};
    for (int m = -4; m <= 4; ++m) {
        for (int n = -4; n <= 4; ++n) {
            auto r = represent(monomial(theta, m, n, 1.0, pol), q, p);
            cplx t = mat_normalized_trace(r);
            if (m == 0 && n == 0) {
                CHECK(std::abs(t - cplx(1.0, 0.0)) <= 1e-14);
            } else {
                CHECK(std::abs(t) <= 1e-14);
            }
        }
    }
}

TEST_CASE("represent maps the identity to the identity matrix") {
    const int q = 8, p = 3;
    auto one = identity(double(p) / q, TruncationPolicy{6, ClipMode::track_spill, 0.0});
    CHECK(mat_max_abs_diff(represent(one, q, p), MatrixRep::identity_mat(q)) == 0.0);
}

TEST_CASE("represent rejects a mismatched theta") {
    auto u = monomial(0.3, 1, 0, 1.0, TruncationPolicy{4, ClipMode::track_spill, 0.0});
    CHECK_THROWS_AS(represent(u, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(clock(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(certify_at(4, 5, 0), std::invalid_argument);
}

TEST_CASE("generator order in products matches the representation") {
    const int q = 5, p = 2;
    const double theta = double(p) / q;
    TruncationPolicy pol{4, ClipMode::track_spill, 0.0};
    auto u = monomial(theta, 1, 0, 1.0, pol);
    auto v = monomial(theta, 0, 1, 1.0, pol);
    auto c = clock(q, p);
    auto s = shift(q);
    CHECK(mat_max_abs_diff(represent(multiply(u, v), q, p), mat_mul(c, s)) <= 1e-14);
    CHECK(mat_max_abs_diff(represent(multiply(v, u), q, p), mat_mul(s, c)) <= 1e-14);
    CHECK(mat_max_abs_diff(represent(adjoint(u), q, p), mat_adjoint(c)) <= 1e-14);
    CHECK(mat_max_abs_diff(represent(adjoint(v), q, p), mat_adjoint(s)) <= 1e-14);
}

TEST_CASE("default oracle exponent is the largest coprime below q/2") {
    CHECK(default_oracle_p(5) == 2);
    CHECK(default_oracle_p(8) == 3);
    CHECK(default_oracle_p(13) == 6);
    CHECK(default_oracle_p(6) == 1);
}

TEST_CASE("multiply, adjoint and trace certify against the finite representation") {
    auto reports = oracle_certify({5, 8, 13}, 25, 20260819);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CAPTURE(r.q);
        CHECK(r.pass);
        CHECK(r.trials == 25);
        CHECK(r.max_product_dev <= 1e-10);
        CHECK(r.max_adjoint_dev <= 1e-10);
        CHECK(r.max_trace_dev <= 1e-10);
    }
    CHECK(reports[0].p == 2);
    CHECK(reports[1].p == 3);
    CHECK(reports[2].p == 6);
}

TEST_CASE("certification deviations are deterministic in the seed") {
    auto a = certify_at(5, 10, 42);
    auto b = certify_at(5, 10, 42);
    CHECK(a.max_product_dev == b.max_product_dev);
    CHECK(a.max_adjoint_dev == b.max_adjoint_dev);
    CHECK(a.max_trace_dev == b.max_trace_dev);
}
