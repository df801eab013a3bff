#include "rfsq/variational.hpp"

#include <cmath>

#include "rfsq/constants.hpp"
#include "rfsq/spectral.hpp"

namespace rfsq {

double displacement_fraction(double omega, double delta_r, double omega_r,
                             double hbeta) {
    if (!(omega > 0.0))
        throw std::invalid_argument("displacement_fraction: omega must be > 0");
    const double eta = std::hypot(delta_r, omega_r);
    if (eta == 0.0) return 1.0; // undriven, resonant: polaron frame is exact
    const double th = std::tanh(0.5 * hbeta * eta);
    // coth with its small-omega series keeps the denominator finite digits.
    const double cth = thermal_coth(omega, hbeta, 1e-12);
    const double num = eta - delta_r * th;
    const double den = eta - th * (delta_r - 0.5 * omega_r * omega_r / omega * cth);
    double f = num / den;
    // num and den are nonnegative with den >= num; clamp only roundoff noise.
    if (f < 0.0 && f > -1e-12) f = 0.0;
    if (f > 1.0 && f < 1.0 + 1e-12) f = 1.0;
    return f;
}

double VariationalSolution::displacement_fraction(double omega,
                                                  const PhononParams& p) const {
    switch (frame) {
        case FrameMode::full_polaron:
            return 1.0;
        case FrameMode::weak_coupling:
            return 0.0;
        case FrameMode::variational:
            break;
    }
    if (rabi_magnitude == 0.0) return 1.0;
    return rfsq::displacement_fraction(omega, delta_r, omega_r, p.hbar_beta());
}

double polaron_shift(const PhononParams& p, const QuadratureSettings& s) {
    if (p.alpha == 0.0) return 0.0;
    const RealIntegrand f = [&p](double w) {
        return w <= 0.0 ? 0.0 : spectral_density(w, p) / w;
    };
    return integrate_frequency(f, p.cutoff, s);
}

namespace {

struct UpdateResult {
    double omega_r;
    double delta_r;
    double coherence_b;
};

// One evaluation of the self-consistency map at fixed F(.) profile.
UpdateResult update_map(double rabi, double delta_bare, const PhononParams& pp,
                        const std::function<double(double)>& F, DeltaRForm form,
                        const QuadratureSettings& quad) {
    const double hbeta = pp.hbar_beta();
    const double small = 1e-6 * pp.cutoff;
    const RealIntegrand b_exponent = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double f = F(w);
        return spectral_density(w, pp) * f * f / (w * w) *
               thermal_coth(w, hbeta, small);
    };
    const RealIntegrand shift = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double f = F(w);
        const double factor = (form == DeltaRForm::main_text) ? (f - 2.0) : (2.0 - f);
        return spectral_density(w, pp) * f * factor / w;
    };
    UpdateResult r;
    r.coherence_b = std::exp(-0.5 * integrate_frequency(b_exponent, pp.cutoff, quad));
    r.omega_r = rabi * r.coherence_b;
    r.delta_r = delta_bare + integrate_frequency(shift, pp.cutoff, quad);
    return r;
}

double ln_2cosh(double x) {
    // log(2 cosh x) without overflow for large |x|.
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

double free_energy_rel(double delta_r, double delta_bare, double eta_r,
                       const PhononParams& pp) {
    const double hbeta = pp.hbar_beta();
    const double kbt = kb_mev_per_k * pp.temperature;
    return 0.5 * hbar_mev_ps * (delta_r - delta_bare) - kbt * ln_2cosh(0.5 * hbeta * eta_r);
}

VariationalSolution iterate(const SystemParams& sp, const PhononParams& pp,
                            const VariationalOptions& opt, double delta_bare,
                            bool polaron_init) {
    const double rabi = sp.rabi_magnitude;
    const double hbeta = pp.hbar_beta();

    VariationalSolution vs;
    vs.rabi_magnitude = rabi;
    vs.detuning_bare = delta_bare;
    vs.frame = opt.frame;

    auto profile = [&](double dr, double orr) {
        return [=, &pp](double w) -> double {
            switch (opt.frame) {
                case FrameMode::full_polaron: return 1.0;
                case FrameMode::weak_coupling: return 0.0;
                case FrameMode::variational: break;
            }
            return displacement_fraction(w, dr, orr, hbeta);
        };
    };

    // Initial guess: F == 1 (polaron) or F == 0 (weak coupling).
    auto init_profile = [&](double w) -> double {
        (void)w;
        return polaron_init ? 1.0 : 0.0;
    };
    UpdateResult cur = update_map(rabi, delta_bare, pp, init_profile,
                                  opt.delta_r_form, opt.quad);
    if (opt.frame != FrameMode::variational || rabi == 0.0) {
        // Forced frames and the undriven case need no iteration: the map is
        // independent of (omega_r, delta_r).
        vs.omega_r = cur.omega_r;
        vs.delta_r = cur.delta_r;
        vs.coherence_b = cur.coherence_b;
        vs.eta_r = std::hypot(cur.delta_r, cur.omega_r);
        vs.converged = true;
        vs.iterations = (opt.frame == FrameMode::variational && rabi == 0.0 &&
                         !polaron_init)
                            ? 1
                            : 0;
        if (opt.frame == FrameMode::variational && rabi == 0.0) {
            // Undriven: the variational optimum is the full polaron.
            UpdateResult pol = update_map(rabi, delta_bare, pp,
                                          [](double) { return 1.0; },
                                          opt.delta_r_form, opt.quad);
            vs.omega_r = pol.omega_r;
            vs.delta_r = pol.delta_r;
            vs.coherence_b = pol.coherence_b;
            vs.eta_r = std::hypot(pol.delta_r, pol.omega_r);
        }
        vs.free_energy_mev = free_energy_rel(vs.delta_r, delta_bare, vs.eta_r, pp);
        return vs;
    }

    double damping = opt.damping;
    double omega_r = cur.omega_r;
    double delta_r = cur.delta_r;
    double b = cur.coherence_b;
    double prev_d_omega = 0.0, prev_d_delta = 0.0;
    double change = 1.0;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        const UpdateResult next = update_map(rabi, delta_bare, pp,
                                             profile(delta_r, omega_r),
                                             opt.delta_r_form, opt.quad);
        const double d_omega = next.omega_r - omega_r;
        const double d_delta = next.delta_r - delta_r;
        change = std::max(
            std::abs(d_omega) / std::max(std::abs(next.omega_r), 1e-300),
            std::abs(d_delta) / std::max(std::abs(next.delta_r), 1e-9));
        b = next.coherence_b;
        if (change < opt.tolerance) {
            omega_r = next.omega_r;
            delta_r = next.delta_r;
            ++it;
            break;
        }
        // Oscillation detection: sign-alternating updates on either
        // coordinate drop the damping to 0.1.
        if (it > 0 && (d_omega * prev_d_omega < 0.0 || d_delta * prev_d_delta < 0.0))
            damping = std::min(damping, 0.1);
        prev_d_omega = d_omega;
        prev_d_delta = d_delta;
        omega_r += damping * d_omega;
        delta_r += damping * d_delta;
    }

    vs.omega_r = omega_r;
    vs.delta_r = delta_r;
    vs.coherence_b = b;
    vs.eta_r = std::hypot(delta_r, omega_r);
    vs.iterations = it;
    vs.converged = change < opt.tolerance;
    vs.residual = change;
    vs.free_energy_mev = free_energy_rel(delta_r, delta_bare, vs.eta_r, pp);
    return vs;
}

} // namespace

VariationalSolution solve_variational(const SystemParams& sp, const PhononParams& pp,
                                      const VariationalOptions& opt) {
    sp.validate();
    pp.validate();
    const double delta_bare = sp.detuning;

    if (pp.alpha == 0.0) {
        VariationalSolution vs;
        vs.omega_r = sp.rabi_magnitude;
        vs.delta_r = delta_bare;
        vs.coherence_b = 1.0;
        vs.eta_r = std::hypot(vs.delta_r, vs.omega_r);
        vs.converged = true;
        vs.iterations = 1;
        vs.rabi_magnitude = sp.rabi_magnitude;
        vs.detuning_bare = delta_bare;
        vs.frame = FrameMode::weak_coupling;
        vs.free_energy_mev = free_energy_rel(vs.delta_r, delta_bare, vs.eta_r, pp);
        return vs;
    }

    if (opt.frame != FrameMode::variational) {
        return iterate(sp, pp, opt, delta_bare, opt.frame == FrameMode::full_polaron);
    }

    const VariationalSolution from_polaron = iterate(sp, pp, opt, delta_bare, true);
    const VariationalSolution from_weak = iterate(sp, pp, opt, delta_bare, false);
    const bool ok_p = from_polaron.converged;
    const bool ok_w = from_weak.converged;
    if (!ok_p && !ok_w) {
        throw ConvergenceError("solve_variational: fixed point not reached",
                               from_weak);
    }
    if (ok_p && !ok_w) return from_polaron;
    if (ok_w && !ok_p) return from_weak;
    return (from_polaron.free_energy_mev <= from_weak.free_energy_mev)
               ? from_polaron
               : from_weak;
}

double free_energy_bound(const VariationalSolution& candidate,
                         const SystemParams& sp, const PhononParams& pp) {
    (void)sp;
    return free_energy_rel(candidate.delta_r, candidate.detuning_bare,
                           candidate.eta_r, pp);
}

} // namespace rfsq
