#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfsq/metrology.hpp"

using namespace rfsq;

TEST_CASE("squeezed vacuum mean difference") {
    SqueezedVacuumInput in;
    in.coherent_power = 1.0;

    in.path_parameter = std::numbers::pi / 2;
    in.xi_magnitude = 0.8;
    CHECK(sv_mean_difference(in) == doctest::Approx(0.0).epsilon(1e-15));

    in.path_parameter = 0.0;
    in.xi_magnitude = 0.0;
    CHECK(sv_mean_difference(in) == doctest::Approx(-1.0).epsilon(1e-14));

    in.xi_magnitude = 0.5 * std::log(3.0); // sinh^2 = 1/3
    CHECK(sv_mean_difference(in) == doctest::Approx(1.0 / 3.0 - 1.0).epsilon(1e-12));
}

TEST_CASE("squeezed vacuum variance and its reduction") {
    SqueezedVacuumInput in;
    in.coherent_power = 1.0;
    in.path_parameter = std::numbers::pi / 2;

    // xi = 0: coherent benchmark.
    in.xi_magnitude = 0.0;
    CHECK(sv_variance(in) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(figure_of_merit(in) == doctest::Approx(1.0).epsilon(1e-14));

    // Optimal phases: Delta phi = 2 phi_alpha - phi_xi = pi.
    in.xi_magnitude = 0.5 * std::log(3.0);
    in.coherent_phase = 0.0;
    in.xi_phase = -std::numbers::pi;
    CHECK(sv_variance(in) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(figure_of_merit(in) == doctest::Approx(0.5).epsilon(1e-12));

    // Reduction identity against the closed form, random xi.
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    for (int i = 0; i < 100; ++i) {
        const double xi = u(rng);
        in.xi_magnitude = xi;
        CHECK(sv_variance(in) ==
              doctest::Approx(sv_variance_reduced(xi, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("squeezed vacuum optimum") {
    const SqueezedVacuumOptimum opt1 = sv_optimal(1.0);
    CHECK(opt1.xi_magnitude == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
    CHECK(opt1.figure_of_merit == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(sv_optimal(1e-12).figure_of_merit == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(sv_optimal(4.0).figure_of_merit == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(sv_optimal(0.0), std::invalid_argument);

    // Numeric minimization over |xi| agrees with the closed form.
    for (double p_alpha : {0.3, 1.0, 4.0}) {
        auto fom = [&](double xi) {
            return sv_variance_reduced(xi, p_alpha) / (sv_power(xi) + p_alpha);
        };
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = 1e-6, b = 4.0;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        while (b - a > 1e-12) {
            if (fom(c) < fom(d)) b = d;
            else a = c;
            c = b - gr * (b - a);
            d = a + gr * (b - a);
        }
        const SqueezedVacuumOptimum opt = sv_optimal(p_alpha);
        CHECK(0.5 * (a + b) == doctest::Approx(opt.xi_magnitude).epsilon(1e-8));
        CHECK(fom(0.5 * (a + b)) == doctest::Approx(opt.figure_of_merit).epsilon(1e-8));
    }
}

TEST_CASE("squeezed vacuum optimum over random phases") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> uxi(0.0, 2.0);
    std::uniform_real_distribution<double> uph(0.0, 2 * std::numbers::pi);
    SqueezedVacuumInput best;
    best.coherent_power = 1.0;
    best.path_parameter = std::numbers::pi / 2;
    best.xi_magnitude = sv_optimal(1.0).xi_magnitude;
    best.coherent_phase = 0.0;
    best.xi_phase = -std::numbers::pi;
    const double floor = figure_of_merit(best);
    for (int i = 0; i < 100; ++i) {
        SqueezedVacuumInput in = best;
        in.xi_magnitude = uxi(rng);
        in.xi_phase = uph(rng);
        in.coherent_phase = uph(rng);
        CHECK(figure_of_merit(in) >= floor - 1e-12);
    }
}

TEST_CASE("resonance fluorescence variance") {
    ResonanceFluorescenceInput in;
    in.coherent_power = 1.0;

    // No coherence: P + P_alpha.
    in.total_power = 0.37;
    in.frame_coherent_power = 0.0;
    CHECK(rf_variance(in) == doctest::Approx(1.37).epsilon(1e-14));

    // The theta = 2pi/3 optimal state: variance 1/2, F = 0.4.
    in.total_power = 0.25;
    in.frame_coherent_power = 3.0 / 16.0;
    in.sideband_b = 1.0;
    CHECK(rf_variance(in) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(figure_of_merit(in) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(figure_of_merit(in) < 0.5); // beats the squeezed-vacuum floor

    // Atomic S = 1/3 point: variance 3/4, F = 2/3.
    in.total_power = 0.125;
    in.frame_coherent_power = 3.0 / 32.0;
    CHECK(rf_variance(in) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(figure_of_merit(in) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(
        rf_variance(ResonanceFluorescenceInput{.total_power = 0.1,
                                               .frame_coherent_power = 0.3}),
        std::invalid_argument);
}

TEST_CASE("rf variance is minimized at matched phases") {
    ResonanceFluorescenceInput in;
    in.total_power = 0.25;
    in.frame_coherent_power = 3.0 / 16.0;
    in.dipole_phase = 0.7;
    in.coherent_phase = 0.7;
    const double at_zero = rf_variance(in);
    for (int i = 1; i <= 64; ++i) {
        in.coherent_phase = 0.7 + 2 * std::numbers::pi * i / 65.0;
        CHECK(rf_variance(in) >= at_zero - 1e-14);
    }
}

TEST_CASE("flux matching") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double p = u(rng);
        CHECK(sv_power(xi_for_power(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(figure_of_merit_coherent() == 1.0);
}
