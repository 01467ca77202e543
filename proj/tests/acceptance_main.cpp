// Acceptance gate: eight end-to-end criteria, one [PASS]/[FAIL] line each,
// exit 1 if any fail. Runtime budgets are part of the criteria.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <nctorus/algebra.hpp>
#include <nctorus/energy.hpp>
#include <nctorus/flow.hpp>
#include <nctorus/matrix_oracle.hpp>
#include <nctorus/verify.hpp>

using namespace nctorus;

namespace {

constexpr double kTwoPi2 = 2.0 * 3.14159265358979323846 * 3.14159265358979323846;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TruncationPolicy pol(int bw) { return TruncationPolicy{bw, ClipMode::track_spill, 0.0}; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---- criterion 1: monomial energies -------------------------------------

Outcome monomial_energies() {
    Outcome out;
    double worst = 0.0;
    for (int m = -8; m <= 8; ++m) {
        for (int n = -8; n <= 8; ++n) {
            auto u = monomial(0.3, m, n, 1.0, pol(16));
            double expect = kTwoPi2 * (double(m) * m + double(n) * n);
            worst = std::max(worst, std::abs(energy(u) - expect));
        }
    }
    if (worst > 1e-10) out.fail("max energy deviation " + fmt(worst));
    out.detail = "max |E - 2pi^2(m^2+n^2)| = " + fmt(worst);
    return out;
}

// ---- criterion 2: oracle certification -----------------------------------

Outcome oracle_certification() {
    Outcome out;
    auto reports = oracle_certify({5, 8, 13}, 25, 20260819, 1e-10);
    double worst = 0.0;
    for (const auto& r : reports) {
        worst = std::max({worst, r.max_product_dev, r.max_adjoint_dev, r.max_trace_dev});
        if (!r.pass) out.fail("q=" + std::to_string(r.q) + " deviation above 1e-10");
    }
    out.detail = "50 elements per q in {5,8,13}, max deviation " + fmt(worst);
    return out;
}

// ---- criterion 3: energy floor for the (1,1) class -----------------------

Outcome theorem_floor() {
    Outcome out;
    FlowConfig fc;
    fc.step_size = 9.5e-5; // just under 2 / (4 pi^2 * 2 * 16^2)
    fc.max_iters = 50000;
    fc.grad_tol = 1e-8;
    fc.reunitarize_every = 10;
    fc.exp_terms = 12;
    auto rep = verify_theorem(0.3, 1, 1, 100, fc, 16, 20260819, 0.2);
    for (const auto& c : rep.checks) {
        if (!c.pass)
            out.fail(c.name + " (value " + fmt(c.value) + ", bound " + fmt(c.bound) + ")");
    }
    std::string conv = "?", err = "?", drift = "?", dist = "?";
    for (const auto& c : rep.checks) {
        if (c.name == "converged_runs") conv = fmt(c.value);
        if (c.name == "final_energy_err") err = fmt(c.value);
        if (c.name == "winding_drift") drift = fmt(c.value);
        if (c.name == "distance_to_scalar_line") dist = fmt(c.value);
    }
    out.detail = "converged " + conv + "/100, max |E-4pi^2| = " + err +
                 ", drift " + drift + ", line dist " + dist;
    return out;
}

// ---- criterion 4: pair bound over three thetas ----------------------------

Outcome pair_bound() {
    Outcome out;
    double min_esum = 1e300, max_truv = 0.0;
    for (double theta : {0.3, 0.5, 0.7071067811}) {
        auto batch = verify_lemma(theta, 100, 20260819, 16);
        if (!batch.summary.pass) {
            for (const auto& c : batch.summary.checks)
                if (!c.pass)
                    out.fail("theta " + fmt(theta) + ": " + c.name + " (value " +
                             fmt(c.value) + ")");
        }
        for (const auto& c : batch.summary.checks) {
            if (c.name == "energy_sum_floor") min_esum = std::min(min_esum, c.value);
            if (c.name == "tr_uv_zero") max_truv = std::max(max_truv, c.value);
        }
    }
    out.detail = "300 pairs, min E(u)+E(v) = " + fmt(min_esum) +
                 " >= " + fmt(pair_floor_energy()) + ", max |tr(uv)| = " + fmt(max_truv);
    return out;
}

// ---- criterion 5: scalar region scan --------------------------------------

Outcome scalar_region() {
    Outcome out;
    auto r = scalar_region_min(1e-3);
    if (std::abs(r.w_min - 0.7639320225) > 2e-3)
        out.fail("w_min " + fmt(r.w_min));
    if (std::abs(r.t_at_min - 0.3819660113) > 2e-3 ||
        std::abs(r.s_at_min - 0.3819660113) > 2e-3)
        out.fail("argmin (" + fmt(r.t_at_min) + ", " + fmt(r.s_at_min) + ")");
    out.detail = "w_min = " + fmt(r.w_min) + " at t = " + fmt(r.t_at_min) +
                 ", s = " + fmt(r.s_at_min);
    return out;
}

// ---- criterion 6: endomorphism bound --------------------------------------

Outcome endo_bound() {
    Outcome out;
    double fam_min = 1e300;
    for (double theta : {0.3, 0.5, 2.0 / 3.0}) {
        auto rep = verify_endo_bound(theta, 3);
        if (!rep.pass) out.fail("theta " + fmt(theta) + " harness failed");
        for (const auto& c : rep.checks)
            if (c.name == "family_minimum") fam_min = std::min(fam_min, c.value);
    }
    out.detail = "family minimum " + fmt(fam_min) + " (8 pi^2 = " +
                 fmt(4.0 * kTwoPi2) + "), floor " + fmt(endo_floor_energy());
    return out;
}

// ---- criterion 7: property suites ------------------------------------------

Outcome property_suites() {
    Outcome out;
    double worst_assoc = 0.0, worst_star = 0.0, worst_leibniz = 0.0;
    double worst_parseval = 0.0, worst_trace = 0.0, worst_poincare = 0.0;
    long elements = 0;

    for (int bw : {8, 16}) {
        const int support_assoc = bw / 3;   // triple products never clip
        const int support_pair = bw / 2;    // double products never clip
        std::mt19937_64 seeds(20260819 + bw);

        for (int trial = 0; trial < 170; ++trial) {
            auto a = random_element(0.3, bw, 0.1, seeds(), support_assoc);
            auto b = random_element(0.3, bw, 0.1, seeds(), support_assoc);
            auto c = random_element(0.3, bw, 0.1, seeds(), support_assoc);
            elements += 3;
            worst_assoc = std::max(
                worst_assoc,
                max_abs_diff(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
        }

        for (int trial = 0; trial < 250; ++trial) {
            auto a = random_element(0.3, bw, 0.1, seeds(), support_pair);
            auto b = random_element(0.3, bw, 0.1, seeds(), support_pair);
            elements += 2;
            auto ab = multiply(a, b);
            worst_star = std::max(
                worst_star,
                max_abs_diff(adjoint(ab), multiply(adjoint(b), adjoint(a))));
            for (int j = 1; j <= 2; ++j) {
                auto lhs = derivation(ab, j);
                auto rhs = add(multiply(derivation(a, j), b),
                               multiply(a, derivation(b, j)));
                worst_leibniz = std::max(worst_leibniz, max_abs_diff(lhs, rhs));
            }
            auto tab = trace_of_product(a, b);
            auto tba = trace_of_product(b, a);
            worst_trace = std::max(worst_trace, std::abs(tab - tba));
        }

        for (int trial = 0; trial < 500; ++trial) {
            auto a = random_element(0.3, bw, 0.05, seeds());
            elements += 1;
            double n2 = hs_norm(a) * hs_norm(a);
            double tr = trace_of_product(adjoint(a), a).real();
            worst_parseval = std::max(worst_parseval, std::abs(n2 - tr));
            auto [lhs, rhs] = poincare_gap(a);
            worst_poincare = std::max(worst_poincare, lhs - rhs);
        }
    }

    if (worst_assoc > 1e-11) out.fail("associativity " + fmt(worst_assoc));
    if (worst_star > 1e-12) out.fail("*-antihomomorphism " + fmt(worst_star));
    if (worst_leibniz > 1e-11) out.fail("Leibniz " + fmt(worst_leibniz));
    if (worst_parseval > 1e-12) out.fail("Parseval " + fmt(worst_parseval));
    if (worst_trace > 1e-12) out.fail("trace property " + fmt(worst_trace));
    if (worst_poincare > 1e-11) out.fail("Poincare " + fmt(worst_poincare));
    out.detail = std::to_string(elements) +
                 " elements; worst: assoc " + fmt(worst_assoc) + ", star " +
                 fmt(worst_star) + ", Leibniz " + fmt(worst_leibniz) +
                 ", Parseval " + fmt(worst_parseval) + ", trace " +
                 fmt(worst_trace) + ", Poincare " + fmt(worst_poincare);
    return out;
}

// ---- criterion 8: gradient vs finite differences ---------------------------

Outcome gradient_check() {
    Outcome out;
    const double t = 1e-5;
    double worst = 0.0;
    std::mt19937_64 seeds(20260819);
    const int classes[10][2] = {{1, 0}, {0, 1}, {1, 1},  {2, 0},  {1, -1},
                                {2, 1}, {0, 0}, {-1, 2}, {3, 0},  {2, 2}};
    for (int bp = 0; bp < 10; ++bp) {
        auto mono = monomial(0.3, classes[bp][0], classes[bp][1], 1.0, pol(16));
        auto h = random_selfadjoint(0.3, 16, 0.5, seeds());
        auto u = multiply(mono, exp_skew(scale(h, cplx(0.0, 0.15 / hs_norm(h))), 16));
        auto grad = riemannian_grad(u);
        double gn = hs_norm(grad);

        for (int dir = 0; dir < 10; ++dir) {
            // direction 0 is the gradient itself, the rest are random skews
            FourierElement s = scale(multiply(adjoint(u), grad), 1.0 / gn);
            if (dir > 0) {
                auto hd = random_selfadjoint(0.3, 16, 0.4, seeds());
                s = scale(hd, cplx(0.0, 1.0 / hs_norm(hd)));
            }
            double analytic = inner(grad, multiply(u, s)).real();
            double ep = energy(multiply(u, exp_skew(scale(s, t), 16)));
            double em = energy(multiply(u, exp_skew(scale(s, -t), 16)));
            double fd = (ep - em) / (2.0 * t);
            // The natural scale of any directional derivative here is
            // ||grad|| (||s|| = 1); plain |analytic| would blow up the ratio
            // exactly when the direction is near-orthogonal to the gradient.
            double rel = std::abs(fd - analytic) / std::max(std::abs(analytic), gn);
            worst = std::max(worst, rel);
        }
    }
    if (worst > 1e-5) out.fail("max relative error " + fmt(worst));
    out.detail = "10 base points x 10 directions, max relative error " + fmt(worst);
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        Outcome (*run)();
        double budget_s;
    };
    const Criterion criteria[] = {
        {1, "monomial energies, |m|,|n| <= 8", monomial_energies, 1.0},
        {2, "oracle certification, q in {5,8,13}", oracle_certification, 5.0},
        {3, "class (1,1) energy floor and flow convergence", theorem_floor, 600.0},
        {4, "pair bound over three thetas, 100 pairs each", pair_bound, 120.0},
        {5, "scalar region scan, grid 1e-3", scalar_region, 5.0},
        {6, "endomorphism bound, exponent bound 3", endo_bound, 5.0},
        {7, "algebra property suites at bandwidths 8 and 16", property_suites, 60.0},
        {8, "gradient vs central differences", gradient_check, 60.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double dt = seconds_since(t0);
        if (dt > c.budget_s) o.fail("runtime " + fmt(dt) + " s exceeds " + fmt(c.budget_s) + " s");
        std::printf("[%s] criterion %d: %s (%.2f s) - %s\n",
                    o.pass ? "PASS" : "FAIL", c.id, c.label, dt, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures) {
        std::printf("%d of 8 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
