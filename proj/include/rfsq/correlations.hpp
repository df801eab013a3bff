#ifndef RFSQ_CORRELATIONS_HPP
#define RFSQ_CORRELATIONS_HPP

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "rfsq/chebyshev.hpp"
#include "rfsq/quadrature.hpp"
#include "rfsq/types.hpp"
#include "rfsq/variational.hpp"

namespace rfsq {

enum class ResponseKind { xx, yy, zz, yz };

// Variational-frame phonon correlation functions and their half-line Fourier
// coefficients. kappa, Lambda_zz and Lambda_yz are tabulated once on a
// Chebyshev grid over [0, tau_max] (tau_max from the decay of the
// integrands); Lambda_xx and Lambda_yy are composed analytically from kappa.
// The frequency integrals behind the tables run on a fixed composite
// Gauss-Legendre grid sized to resolve e^{i w tau} up to tau_max; the
// adaptive integrator remains available as a cross-check (see tests).
class CorrelationContext {
public:
    CorrelationContext(VariationalSolution vs, PhononParams pp,
                       QuadratureSettings qs = {});

    const VariationalSolution& solution() const { return vs_; }
    const PhononParams& phonons() const { return pp_; }
    double tau_max() const { return tau_max_; }

    // kappa(tau) = int J F^2 w^-2 [coth(hb w/2) cos(w tau) - i sin(w tau)] dw
    complexd kappa(double tau) const;
    // Lambda_xx = (B^2/2)(e^k + e^-k - 2), Lambda_yy = (B^2/2)(e^k - e^-k)
    complexd lambda_xx(double tau) const;
    complexd lambda_yy(double tau) const;
    // Lambda_zz = int J (1-F)^2 C_par dw
    complexd lambda_zz(double tau) const;
    // Lambda_yz = -2B int J w^-1 F(1-F) [coth sin(w tau) + i cos(w tau)] dw
    complexd lambda_yz(double tau) const;
    // G(tau) = B^2 exp[int J F^2 w^-2 (coth cos + i sin) dw] ; G(0) = 1 and
    // G -> B^2 as tau -> infinity.
    complexd sideband_g(double tau) const;

    // int_0^inf e^{i lambda tau} Lambda_kind(tau) dtau, memoized per
    // (kind, lambda) with lambda quantized at 1e-12 relative. Thread-safe:
    // concurrent lookups may duplicate work but always store the same value.
    complexd response_coefficient(ResponseKind kind, double lambda) const;

    // Direct (non-tabulated) evaluation by adaptive quadrature; the fallback
    // path used to validate the tables.
    complexd kappa_direct(double tau) const;
    complexd lambda_zz_direct(double tau) const;
    complexd lambda_yz_direct(double tau) const;

private:
    complexd eval_grid(const std::vector<double>& cos_env,
                       const std::vector<double>& sin_env, double tau) const;
    complexd lambda_by_kind(ResponseKind kind, double tau) const;

    VariationalSolution vs_;
    PhononParams pp_;
    QuadratureSettings qs_;
    double hbeta_ = 1.0;
    double tau_max_ = 0.0;
    bool trivial_ = false; // alpha == 0: every correlation vanishes

    FixedGrid grid_;
    Eigen::ArrayXd nodes_;
    // Envelopes on the frequency grid (weights folded in).
    std::vector<double> kappa_cos_, kappa_sin_;
    std::vector<double> zz_cos_, zz_sin_;
    std::vector<double> yz_sin_, yz_cos_;

    ChebyshevSeries kappa_tab_, zz_tab_, yz_tab_;

    mutable std::mutex memo_mutex_;
    mutable std::map<std::pair<int, double>, complexd> memo_;
};

} // namespace rfsq

#endif
