#ifndef RFSQ_QUADRATURE_HPP
#define RFSQ_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfsq {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    // Frequency integrals run over [0, freq_cutoff_mult * omega_c].
    double freq_cutoff_mult = 12.0;   // m >= 6
    // half_fourier grows the horizon by doubling until the integrand has
    // decayed; tau_ceiling is the hard stop (callers set it to 1e4/omega_c).
    double tau_initial = 1.0;
    double tau_ceiling = 1e4;
    int max_intervals = 4000;

    void validate() const;
};

// Thrown when an adaptive integral fails to converge; carries the best
// estimate and the achieved error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, std::complex<double> estimate,
                    double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    std::complex<double> estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    std::complex<double> estimate_;
    double error_bound_;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;
using RealIntegrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Deterministic: intervals are
// refined in a fixed worst-first order with index tie-breaking.
std::complex<double> integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                        const QuadratureSettings& s);
double integrate_adaptive(const RealIntegrand& f, double a, double b,
                          const QuadratureSettings& s);

// Half-line frequency integral over [0, m*omega_c]; integrands are assumed
// to inherit the Gaussian decay of J(omega).
std::complex<double> integrate_frequency(const ComplexIntegrand& f, double omega_c,
                                         const QuadratureSettings& s);
double integrate_frequency(const RealIntegrand& f, double omega_c,
                           const QuadratureSettings& s);

// int_0^tau_max e^{i lambda tau} f(tau) dtau with tau_max chosen adaptively:
// grown by doubling until |f(tau_max)| < abs_tol and a further doubling
// changes the result by < rel_tol. Oscillation is resolved with >= 20
// quadrature points per period 2pi/|lambda|. Throws QuadratureError if the
// integrand has not decayed by s.tau_ceiling.
std::complex<double> half_fourier(const ComplexIntegrand& f, double lambda,
                                  const QuadratureSettings& s);

// Fixed composite Gauss-Legendre rule, used for the correlation-table
// Fourier transforms where thousands of related integrals share one grid.
struct FixedGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    // Panels sized to resolve e^{i w tau} factors up to |tau| <= tau_resolve.
    static FixedGrid fourier(double a, double b, double tau_resolve);
};

} // namespace rfsq

#endif
