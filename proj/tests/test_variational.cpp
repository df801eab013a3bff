#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfsq/constants.hpp"
#include "rfsq/spectral.hpp"
#include "rfsq/variational.hpp"

using namespace rfsq;

namespace {

const PhononParams qd{0.027, 2.2, 4.0};

SystemParams drive(double s, double detuning_mev) {
    SystemParams sp;
    sp.emission_rate = 1.0 / 700.0;
    sp.rabi_magnitude = SystemParams::rabi_from_s(s, sp.emission_rate);
    sp.detuning = energy_to_angular_frequency(detuning_mev);
    return sp;
}

} // namespace

TEST_CASE("no phonons: trivial solution") {
    SystemParams sp = drive(2.0, 0.4);
    PhononParams none = qd;
    none.alpha = 0.0;
    const VariationalSolution vs = solve_variational(sp, none);
    CHECK(vs.coherence_b == 1.0);
    CHECK(vs.omega_r == doctest::Approx(sp.rabi_magnitude).epsilon(1e-14));
    CHECK(vs.delta_r == doctest::Approx(sp.detuning).epsilon(1e-14));
    CHECK(vs.iterations <= 1);
    CHECK(vs.converged);
}

TEST_CASE("forced polaron frame at low temperature") {
    // F == 1, coth -> 1: B = exp(-alpha wc^2 / 4) = exp(-0.06534 / 2).
    SystemParams sp = drive(1e6, 0.0);
    PhononParams cold = qd;
    cold.temperature = 1e-3;
    VariationalOptions opt;
    opt.frame = FrameMode::full_polaron;
    const VariationalSolution vs = solve_variational(sp, cold, opt);
    CHECK(vs.coherence_b == doctest::Approx(std::exp(-0.5 * 0.06534)).epsilon(1e-6));
    CHECK(vs.omega_r == doctest::Approx(sp.rabi_magnitude * vs.coherence_b).epsilon(1e-12));
    // Full polaron shift: delta_r = delta - int J/w dw.
    const double shift = polaron_shift(cold, QuadratureSettings{});
    CHECK(vs.delta_r == doctest::Approx(sp.detuning - shift).epsilon(1e-9));
}

TEST_CASE("polaron shift closed form") {
    const double shift = polaron_shift(qd, QuadratureSettings{});
    CHECK(shift == doctest::Approx(0.027 * std::sqrt(std::numbers::pi) / 4.0 *
                                   std::pow(2.2, 3))
                       .epsilon(1e-10));
}

TEST_CASE("displacement fraction limits and bounds") {
    const double hbeta = qd.hbar_beta();
    // Large omega: F -> 1.
    CHECK(displacement_fraction(1e6, 1.0, 2.0, hbeta) == doctest::Approx(1.0).epsilon(1e-6));
    // Small omega: F -> 0 when the drive is on.
    CHECK(displacement_fraction(1e-9, 1.0, 2.0, hbeta) < 1e-6);
    CHECK_THROWS_AS(displacement_fraction(0.0, 1.0, 2.0, hbeta), std::invalid_argument);

    // 0 <= F <= 1 across a 1000-point grid for a converged solution.
    const VariationalSolution vs = solve_variational(drive(3.16e6, 1.0), qd);
    for (int i = 1; i <= 1000; ++i) {
        const double w = 12.0 * qd.cutoff * i / 1000.0;
        const double f = vs.displacement_fraction(w, qd);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("self-consistency residual at the fixed point") {
    const VariationalSolution vs = solve_variational(drive(3.16e6, 1.0), qd);
    REQUIRE(vs.converged);
    // Re-evaluate the update map at the solution.
    QuadratureSettings s;
    const double hbeta = qd.hbar_beta();
    const double small = 1e-6 * qd.cutoff;
    const double kap0 = integrate_frequency(
        [&](double w) {
            if (w <= 0.0) return 0.0;
            const double f = vs.displacement_fraction(w, qd);
            return spectral_density(w, qd) * f * f / (w * w) *
                   thermal_coth(w, hbeta, small);
        },
        qd.cutoff, s);
    const double b_new = std::exp(-0.5 * kap0);
    const double delta_new =
        vs.detuning_bare + integrate_frequency(
                               [&](double w) {
                                   if (w <= 0.0) return 0.0;
                                   const double f = vs.displacement_fraction(w, qd);
                                   return spectral_density(w, qd) * f * (f - 2.0) / w;
                               },
                               qd.cutoff, s);
    CHECK(vs.rabi_magnitude * b_new ==
          doctest::Approx(vs.omega_r).epsilon(1e-9));
    CHECK(delta_new == doctest::Approx(vs.delta_r).epsilon(1e-9));
}

TEST_CASE("coherence factor decreases with coupling strength") {
    double prev = 1.0;
    for (double alpha : {0.005, 0.015, 0.027, 0.05, 0.1}) {
        PhononParams pp = qd;
        pp.alpha = alpha;
        const VariationalSolution vs = solve_variational(drive(3.16e6, 1.0), pp);
        CHECK(vs.coherence_b > 0.0);
        CHECK(vs.coherence_b <= 1.0);
        CHECK(vs.coherence_b < prev);
        prev = vs.coherence_b;
    }
}

TEST_CASE("decoupling at strong driving") {
    // eta_r >> wc pushes F off the support of J and B -> 1.
    double prev = 0.0;
    for (double s : {1e6, 1e7, 1e8, 1e9}) {
        const VariationalSolution vs = solve_variational(drive(s, 0.0), qd);
        CHECK(vs.coherence_b >= prev);
        prev = vs.coherence_b;
    }
    CHECK(prev > 0.99);
}

TEST_CASE("continuity at vanishing coupling") {
    PhononParams tiny = qd;
    tiny.alpha = 1e-8;
    const SystemParams sp = drive(3.16e6, 1.0);
    const VariationalSolution vs = solve_variational(sp, tiny);
    CHECK(vs.omega_r == doctest::Approx(sp.rabi_magnitude).epsilon(1e-5));
    CHECK(vs.delta_r == doctest::Approx(sp.detuning).epsilon(1e-5));
}

TEST_CASE("omega_r never exceeds the bare drive") {
    for (double s : {1e2, 1e4, 1e6, 3e7}) {
        for (double d : {-1.0, 0.0, 1.0}) {
            const VariationalSolution vs = solve_variational(drive(s, d), qd);
            CHECK(vs.omega_r <= vs.rabi_magnitude * (1.0 + 1e-12));
            CHECK(vs.eta_r ==
                  doctest::Approx(std::hypot(vs.omega_r, vs.delta_r)).epsilon(1e-14));
        }
    }
}

TEST_CASE("free energy bound") {
    // alpha = 0: A_B = -kBT ln[2 cosh(hbar beta eta / 2)].
    SystemParams sp = drive(1e6, 0.7);
    PhononParams none = qd;
    none.alpha = 0.0;
    const VariationalSolution vs = solve_variational(sp, none);
    const double hbeta = none.hbar_beta();
    const double expected = -kb_mev_per_k * none.temperature *
                            std::log(2.0 * std::cosh(0.5 * hbeta * vs.eta_r));
    CHECK(vs.free_energy_mev == doctest::Approx(expected).epsilon(1e-12));
    CHECK(free_energy_bound(vs, sp, none) ==
          doctest::Approx(vs.free_energy_mev).epsilon(1e-14));

    // Low-temperature limit: A_B -> -hbar eta / 2.
    PhononParams cold = none;
    cold.temperature = 1e-3;
    const VariationalSolution vs2 = solve_variational(sp, cold);
    CHECK(vs2.free_energy_mev ==
          doctest::Approx(-0.5 * hbar_mev_ps * vs2.eta_r).epsilon(1e-9));

    // Selection rule: the candidate with the smaller bound wins.
    VariationalSolution a = vs;
    VariationalSolution b = vs;
    b.delta_r += 0.5;
    b.eta_r = std::hypot(b.delta_r, b.omega_r);
    CHECK(free_energy_bound(a, sp, none) != free_energy_bound(b, sp, none));
}

TEST_CASE("non-convergence carries the last iterate") {
    VariationalOptions opt;
    opt.max_iterations = 1;
    opt.tolerance = 1e-16;
    CHECK_THROWS_AS((void)solve_variational(drive(3.16e6, 1.0), qd, opt),
                    ConvergenceError);
    try {
        (void)solve_variational(drive(3.16e6, 1.0), qd, opt);
    } catch (const ConvergenceError& e) {
        CHECK(e.last_iterate().residual > 0.0);
        CHECK_FALSE(e.last_iterate().converged);
    }
}

TEST_CASE("delta_r sign convention flag") {
    VariationalOptions main_text;
    VariationalOptions supp;
    supp.delta_r_form = DeltaRForm::supp_note;
    const SystemParams sp = drive(3.16e6, 1.0);
    const VariationalSolution v1 = solve_variational(sp, qd, main_text);
    const VariationalSolution v2 = solve_variational(sp, qd, supp);
    // main_text shifts the detuning down, supp_note up.
    CHECK(v1.delta_r < sp.detuning);
    CHECK(v2.delta_r > sp.detuning);
}
