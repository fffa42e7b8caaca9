#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "fiscomp/rng.hpp"
#include "fiscomp/simulator.hpp"

using namespace fiscomp;

namespace {

// Plain-array reference recursion, written against the update equations
// directly. Kept independent of the engine so the two can disagree.
struct RefPath {
    std::vector<double> dY, dK, dB;
    double pv = 0.0;
};

RefPath reference_path(const ModelParams& p, const std::array<double, 4>& w) {
    const double D = 1.0 - p.cbar + p.m + p.omega_f + p.omega_rho +
                     p.omega_d * std::max(p.d0 - p.d_bar, 0.0);
    const std::array<double, 4> coef = {1.0 - p.mu_C, 1.0 - p.mu_I, p.c_p * (1.0 - p.mu_p),
                                        p.c_r * (1.0 - p.mu_r)};
    RefPath ref;
    const int T = p.horizon;
    ref.dY.assign(T, 0.0);
    ref.dK.assign(T, 0.0);
    ref.dB.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
        double demand = 0.0;
        if (t == 0)
            for (int j = 0; j < 4; ++j) demand += w[j] * p.shock * coef[j];
        const double dYstar = p.psi * (p.Y0 / p.Kg0) * ref.dK[t];
        ref.dY[t] = demand / D + (p.zeta * ref.dK[t] + dYstar) / D - p.rho_drag * ref.dB[t];
        if (t + 1 < T) {
            ref.dK[t + 1] = (1.0 - p.delta_g) * ref.dK[t] + p.phi * (t == 0 ? w[1] * p.shock : 0.0);
            ref.dB[t + 1] = (1.0 + p.r) * ref.dB[t] + (t == 0 ? p.shock : 0.0) - p.tau * ref.dY[t];
        }
    }
    for (int t = 0; t < T; ++t) ref.pv += std::pow(p.beta, t) * ref.dY[t];
    return ref;
}

constexpr std::array<double, 4> kPure[4] = {
    {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

} // namespace

TEST_CASE("engine matches the reference recursion") {
    const ModelParams p;
    for (int j = 0; j < 4; ++j) {
        const SimulationPath path = simulate(p, pure_scenario(static_cast<Instrument>(j)));
        const RefPath ref = reference_path(p, kPure[j]);
        for (int t = 0; t < p.horizon; ++t) {
            CHECK(path.dY[t] == doctest::Approx(ref.dY[t]).epsilon(1e-12));
            CHECK(path.dKg[t] == doctest::Approx(ref.dK[t]).epsilon(1e-12));
            CHECK(path.dB[t] == doctest::Approx(ref.dB[t]).epsilon(1e-12));
        }
        CHECK(path.pv_y == doctest::Approx(ref.pv).epsilon(1e-12));
    }
    const SimulationPath mixed = simulate(p, mixed_scenario());
    const RefPath ref = reference_path(p, {0.25, 0.25, 0.25, 0.25});
    CHECK(mixed.pv_y == doctest::Approx(ref.pv).epsilon(1e-12));
}

TEST_CASE("baseline impact column") {
    const ModelParams p;
    const auto rows = baseline_table(p);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].name == "current_spending");
    CHECK(rows[0].impact == doctest::Approx(5.064935064935).epsilon(1e-12));
    CHECK(rows[1].impact == doctest::Approx(4.675324675325).epsilon(1e-12));
    CHECK(rows[2].impact == doctest::Approx(4.792207792208).epsilon(1e-12));
    CHECK(rows[3].impact == doctest::Approx(1.870129870130).epsilon(1e-12));
    CHECK(rows[4].impact == doctest::Approx(4.100649350649).epsilon(1e-12));
}

TEST_CASE("baseline PV column and ordering") {
    const ModelParams p;
    const auto rows = baseline_table(p);
    // Within half a unit in the fourth decimal of the calibrated targets.
    CHECK(std::abs(rows[0].pv - 5.0548) < 5e-5);
    CHECK(std::abs(rows[1].pv - 12.3784) < 5e-5);
    CHECK(std::abs(rows[2].pv - 4.7820) < 5e-5);
    CHECK(std::abs(rows[3].pv - 1.8586) < 5e-5);
    CHECK(std::abs(rows[4].pv - 6.0184) < 5e-5);
    // investment > mixed > current > poor > rich
    CHECK(rows[1].pv > rows[4].pv);
    CHECK(rows[4].pv > rows[0].pv);
    CHECK(rows[0].pv > rows[2].pv);
    CHECK(rows[2].pv > rows[3].pv);
}

TEST_CASE("investment capital path") {
    const ModelParams p;
    const SimulationPath path = simulate(p, pure_scenario(Instrument::investment));
    CHECK(path.dKg[0] == 0.0);
    CHECK(path.dB[0] == 0.0);
    CHECK(path.dKg[1] == doctest::Approx(3.75).epsilon(1e-12));
    CHECK(path.dKg[2] == doctest::Approx(3.75 * 0.93).epsilon(1e-12));
}

TEST_CASE("drag-free investment PV") {
    ModelParams p;
    p.rho_drag = 0.0;
    const double pv = simulate(p, pure_scenario(Instrument::investment)).pv_y;
    CHECK(pv == doctest::Approx(12.386421).epsilon(1e-6));
}

TEST_CASE("present value") {
    const ModelParams p;
    SimulationPath path = simulate(p, pure_scenario(Instrument::current));
    SUBCASE("single nonzero period returns itself") {
        path.dY.setZero();
        path.dY[0] = 3.25;
        CHECK(present_value(path, 0.96) == doctest::Approx(3.25).epsilon(1e-15));
    }
    SUBCASE("all-zero path") {
        path.dY.setZero();
        CHECK(present_value(path, 0.5) == doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("invalid discount") {
        CHECK_THROWS_AS(present_value(path, 1.0), InvalidParameterError);
    }
}

TEST_CASE("scalar-G prediction") {
    ModelParams p;
    CHECK(scalar_g_prediction(p) == doctest::Approx(6.493506493506).epsilon(1e-12));
    p.shock = 1.0;
    p.cbar = 0.5;
    p.m = 0.2;
    p.omega_f = 0.2;
    p.omega_rho = 0.1;
    CHECK(scalar_g_prediction(p) == doctest::Approx(1.0).epsilon(1e-12));
    p = ModelParams{};
    p.shock = 10.0;
    CHECK(scalar_g_prediction(p) == doctest::Approx(12.987012987013).epsilon(1e-12));
}

TEST_CASE("finite-difference impact derivatives") {
    const ModelParams p;
    const std::array<double, 4> expected = {1.0129870129870, 0.9350649350649, 0.9584415584416,
                                            0.3740259740260};
    for (int j = 0; j < 4; ++j) {
        const auto which = static_cast<Instrument>(j);
        const double fd = finite_difference_impact(p, which, 1e-4 * p.shock);
        const double an = analytic_impact_derivative(p, which);
        CHECK(std::abs(fd - an) <= 1e-8);
        CHECK(an == doctest::Approx(expected[static_cast<std::size_t>(j)]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(finite_difference_impact(p, Instrument::current, 1e-10 * p.shock),
                    ArgumentError);
    CHECK_THROWS_AS(finite_difference_impact(p, Instrument::current, 0.0), ArgumentError);
}

TEST_CASE("shock linearity with drag off") {
    ModelParams p;
    p.rho_drag = 0.0;
    p.shock = 2.0;
    const SimulationPath small = simulate(p, pure_scenario(Instrument::current));
    p.shock = 4.0;
    const SimulationPath big = simulate(p, pure_scenario(Instrument::current));
    CHECK(std::abs(big.impact - 2.0 * small.impact) <= 1e-10);
    CHECK(std::abs(big.pv_y - 2.0 * small.pv_y) <= 1e-10);
}

TEST_CASE("without drag or capital, PV collapses to the impact") {
    ModelParams p;
    p.rho_drag = 0.0;
    p.horizon = 2;  // shortest admissible horizon: one post-impulse period
    for (const Instrument which :
         {Instrument::current, Instrument::poor_transfer, Instrument::rich_transfer}) {
        const SimulationPath path = simulate(p, pure_scenario(which));
        CHECK(path.dY[1] == 0.0);
        CHECK(path.pv_y == doctest::Approx(path.impact).epsilon(1e-14));
    }
    // Investment is the exception: its capital stock pays off from t = 1 on.
    const SimulationPath inv = simulate(p, pure_scenario(Instrument::investment));
    CHECK(inv.pv_y > inv.impact);
}

TEST_CASE("accounting identities on baseline scenarios") {
    const ModelParams p;
    const Spending import_coef = import_coefficients(p);
    for (const Scenario& s : baseline_scenarios()) {
        const SimulationPath path = simulate(p, s);
        for (int t = 0; t + 1 < p.horizon; ++t) {
            const double cost = t == s.shock_period ? p.shock : 0.0;
            const double invest = t == s.shock_period ? s.weights[1] * p.shock : 0.0;
            CHECK(std::abs(path.dB[t + 1] -
                           ((1.0 + p.r) * path.dB[t] + cost - p.tau * path.dY[t])) <= 1e-10);
            CHECK(std::abs(path.dKg[t + 1] -
                           ((1.0 - p.delta_g) * path.dKg[t] + p.phi * invest)) <= 1e-10);
        }
        for (int t = 0; t < p.horizon; ++t) {
            const double imports =
                t == s.shock_period ? p.shock * s.weights.dot(import_coef) : 0.0;
            CHECK(std::abs(path.nx[t] -
                           (-imports - p.n_x * path.dY[t] + p.chi * path.dKg[t])) <= 1e-10);
            CHECK(std::abs(path.pi[t] - p.lambda_pi * (path.dY[t] - path.dYstar[t])) <= 1e-10);
        }
    }
}

TEST_CASE("deterministic reruns") {
    const ModelParams p;
    const SimulationPath a = simulate(p, pure_scenario(Instrument::investment));
    const SimulationPath b = simulate(p, pure_scenario(Instrument::investment));
    CHECK(a.pv_y == b.pv_y);
    for (int t = 0; t < p.horizon; ++t) CHECK(a.dY[t] == b.dY[t]);
}

TEST_CASE("parameter and scenario guards") {
    ModelParams p;
    SUBCASE("cbar above one") {
        p.cbar = 1.2;
        CHECK_THROWS_AS(validate(p), InvalidParameterError);
        CHECK_THROWS_AS(simulate(p, pure_scenario(Instrument::current)), InvalidParameterError);
    }
    SUBCASE("horizon too short") {
        p.horizon = 1;
        CHECK_THROWS_AS(validate(p), InvalidParameterError);
    }
    SUBCASE("range checking is opt-in") {
        p.omega_f = 0.9;  // structurally fine, outside the documented interval
        CHECK_NOTHROW(validate(p));
        CHECK_THROWS_AS(validate(p, true), InvalidParameterError);
    }
    SUBCASE("weights must sum to one") {
        Scenario s = mixed_scenario();
        s.weights[0] = 0.3;
        CHECK_THROWS_AS(simulate(p, s), WeightSumError);
    }
    SUBCASE("shock period inside horizon") {
        Scenario s = pure_scenario(Instrument::current);
        s.shock_period = p.horizon;
        CHECK_THROWS_AS(simulate(p, s), InvalidParameterError);
    }
}

TEST_CASE("late shock period shifts the impulse") {
    ModelParams p;
    Scenario s = pure_scenario(Instrument::current);
    s.shock_period = 3;
    const SimulationPath path = simulate(p, s);
    CHECK(path.dY[0] == 0.0);
    CHECK(path.dY[2] == 0.0);
    CHECK(path.impact == doctest::Approx(5.064935064935).epsilon(1e-12));
    CHECK(path.dY[3] == path.impact);
}

TEST_CASE("path CSV layout") {
    const ModelParams p;
    const SimulationPath path = simulate(p, pure_scenario(Instrument::investment));
    std::ostringstream out;
    write_path_csv(path, out);
    const std::string text = out.str();
    CHECK(text.rfind("t,dY,dYstar,dKg,dB,nx,pi\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == p.horizon + 1);
    CHECK(text.back() == '\n');
}

TEST_CASE("rho_drag default matches its calibration solve") {
    const ModelParams p;
    const double solved = calibrate_rho_drag(p, 5.0548);
    CHECK(std::abs(solved - p.rho_drag) <= 1e-6 * p.rho_drag);
    // And the calibration target is hit.
    ModelParams q = p;
    q.rho_drag = solved;
    CHECK(simulate(q, pure_scenario(Instrument::current)).pv_y ==
          doctest::Approx(5.0548).epsilon(1e-10));
}

TEST_CASE("simulate_spending drives the derivative probe") {
    const ModelParams p;
    Spending spend = Spending::Zero();
    spend[0] = 1.0;
    const SimulationPath path = simulate_spending(p, spend, 0, "probe");
    CHECK(path.impact == doctest::Approx((1.0 - p.mu_C) / 0.77).epsilon(1e-12));
}
