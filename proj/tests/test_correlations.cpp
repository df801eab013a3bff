#include <doctest.h>

#include <cmath>

#include "rfsq/constants.hpp"
#include "rfsq/correlations.hpp"

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

CorrelationContext make_ctx(double s, double detuning_mev,
                            FrameMode frame = FrameMode::variational,
                            PhononParams pp = qd) {
    VariationalOptions opt;
    opt.frame = frame;
    return CorrelationContext(solve_variational(drive(s, detuning_mev), pp, opt), pp);
}

} // namespace

TEST_CASE("kappa at the origin ties to the coherence factor") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    const double b = ctx.solution().coherence_b;
    const complexd k0 = ctx.kappa(0.0);
    CHECK(k0.real() == doctest::Approx(-2.0 * std::log(b)).epsilon(1e-9));
    CHECK(std::abs(k0.imag()) < 1e-10);
    // B^2 e^{kappa(0)} = 1.
    CHECK(b * b * std::exp(k0.real()) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kappa decays") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    CHECK(std::abs(ctx.kappa(50.0 / qd.cutoff)) < 1e-8);
}

TEST_CASE("lambda_xx and lambda_yy at tau = 0") {
    // Substituting e^{kappa(0)} = B^-2: Lambda_xx(0) = (1 - B^2)^2 / 2 and
    // Lambda_yy(0) = (1 - B^4) / 2.
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    const double b2 = ctx.solution().coherence_b * ctx.solution().coherence_b;
    CHECK(ctx.lambda_xx(0.0).real() ==
          doctest::Approx(0.5 * (1.0 - b2) * (1.0 - b2)).epsilon(1e-6));
    CHECK(std::abs(ctx.lambda_xx(0.0).imag()) < 1e-10);
    CHECK(ctx.lambda_yy(0.0).real() ==
          doctest::Approx(0.5 * (1.0 - b2 * b2)).epsilon(1e-6));
}

TEST_CASE("no phonons: every correlation vanishes") {
    PhononParams none = qd;
    none.alpha = 0.0;
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0, FrameMode::variational, none);
    for (double tau : {0.0, 0.5, 2.0, 10.0}) {
        CHECK(std::abs(ctx.kappa(tau)) == 0.0);
        CHECK(std::abs(ctx.lambda_xx(tau)) == 0.0);
        CHECK(std::abs(ctx.lambda_yy(tau)) == 0.0);
        CHECK(std::abs(ctx.lambda_zz(tau)) == 0.0);
        CHECK(std::abs(ctx.lambda_yz(tau)) == 0.0);
        CHECK(ctx.sideband_g(tau) == complexd(1.0, 0.0));
    }
    CHECK(ctx.response_coefficient(ResponseKind::xx, 0.7) == complexd(0.0, 0.0));
}

TEST_CASE("forced frames kill the expected channels") {
    const CorrelationContext polaron = make_ctx(3.16e6, 1.0, FrameMode::full_polaron);
    const CorrelationContext weak = make_ctx(3.16e6, 1.0, FrameMode::weak_coupling);
    for (double tau : {0.0, 0.7, 3.1, 9.4}) {
        // F == 1: (1 - F) factors vanish.
        CHECK(std::abs(polaron.lambda_zz(tau)) < 1e-14);
        CHECK(std::abs(polaron.lambda_yz(tau)) < 1e-14);
        // F == 0: B = 1, kappa = 0.
        CHECK(std::abs(weak.lambda_xx(tau)) < 1e-14);
        CHECK(std::abs(weak.lambda_yy(tau)) < 1e-14);
        CHECK(std::abs(weak.lambda_yz(tau)) < 1e-14);
    }
    CHECK(weak.solution().coherence_b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sideband correlation anchors") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    const double b2 = ctx.solution().coherence_b * ctx.solution().coherence_b;
    CHECK(std::abs(ctx.sideband_g(0.0) - complexd(1.0, 0.0)) < 1e-9);
    CHECK(std::abs(ctx.sideband_g(50.0 / qd.cutoff) - complexd(b2, 0.0)) < 1e-6);
}

TEST_CASE("correlation envelope decays") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    auto max_over = [&](double lo, double hi, auto&& f) {
        double m = 0.0;
        for (int i = 0; i <= 200; ++i)
            m = std::max(m, std::abs(f(lo + (hi - lo) * i / 200.0)));
        return m;
    };
    const double wc = qd.cutoff;
    auto all = [&](double tau) {
        return std::abs(ctx.lambda_xx(tau)) + std::abs(ctx.lambda_yy(tau)) +
               std::abs(ctx.lambda_zz(tau)) + std::abs(ctx.lambda_yz(tau));
    };
    CHECK(max_over(10.0 / wc, 20.0 / wc, all) < max_over(0.0, 10.0 / wc, all));
}

TEST_CASE("tables match direct adaptive quadrature") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    for (double tau : {0.0, 0.3, 1.7, 5.0}) {
        CHECK(std::abs(ctx.kappa(tau) - ctx.kappa_direct(tau)) < 1e-9);
        CHECK(std::abs(ctx.lambda_zz(tau) - ctx.lambda_zz_direct(tau)) < 1e-9);
        CHECK(std::abs(ctx.lambda_yz(tau) - ctx.lambda_yz_direct(tau)) < 1e-9);
    }
}

TEST_CASE("response coefficient against a trapezoid oracle") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    const complexd k0 = ctx.response_coefficient(ResponseKind::xx, 0.0);
    // Dense trapezoid of Lambda_xx over [0, tau_max].
    const int n = 40000;
    const double h = ctx.tau_max() / n;
    complexd acc = 0.5 * (ctx.lambda_xx(0.0) + ctx.lambda_xx(ctx.tau_max()));
    for (int i = 1; i < n; ++i) acc += ctx.lambda_xx(i * h);
    acc *= h;
    CHECK(std::abs(k0 - acc) < 1e-6 * std::max(1.0, std::abs(k0)));
}

TEST_CASE("response memoization is reproducible") {
    const CorrelationContext ctx = make_ctx(3.16e6, 1.0);
    const double lam = ctx.solution().eta_r;
    const complexd first = ctx.response_coefficient(ResponseKind::zz, lam);
    const complexd second = ctx.response_coefficient(ResponseKind::zz, lam);
    CHECK(first == second); // bitwise: cache hit
    // A perturbation below the 1e-12 relative quantum hits the same entry.
    const complexd third =
        ctx.response_coefficient(ResponseKind::zz, lam * (1.0 + 1e-14));
    CHECK(first == third);
}
