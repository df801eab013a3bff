#include "rfsq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace rfsq {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric; nonnegative half).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    std::complex<double> value;
    double error;
};

PanelResult gk15(const ComplexIntegrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    std::complex<double> kronrod = wgk[7] * fv[7];
    std::complex<double> gauss = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += wgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) {
            gauss += wg[i / 2] * (fv[i] + fv[14 - i]);
        }
    }
    kronrod *= h;
    gauss *= h;
    // |K - G| is a conservative error estimate for the Kronrod value.
    return {kronrod, std::abs(kronrod - gauss)};
}

struct Interval {
    double a, b, error;
    std::complex<double> value;
    long seq; // creation order, ties broken deterministically
};

struct IntervalLess {
    bool operator()(const Interval& x, const Interval& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.seq > y.seq;
    }
};

std::complex<double> adaptive_impl(const ComplexIntegrand& f, double a, double b,
                                   const QuadratureSettings& s) {
    if (a == b) return 0.0;
    std::priority_queue<Interval, std::vector<Interval>, IntervalLess> heap;
    long seq = 0;
    PanelResult r0 = gk15(f, a, b);
    heap.push({a, b, r0.error, r0.value, seq++});
    std::complex<double> total = r0.value;
    double total_err = r0.error;
    int n_intervals = 1;
    while (total_err > std::max(s.abs_tol, s.rel_tol * std::abs(total))) {
        if (n_intervals >= s.max_intervals) {
            throw QuadratureError("integrate_adaptive: interval budget exhausted",
                                  total, total_err);
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw QuadratureError("integrate_adaptive: interval underflow",
                                  total, total_err);
        }
        PanelResult rl = gk15(f, worst.a, mid);
        PanelResult rr = gk15(f, mid, worst.b);
        total += rl.value + rr.value - worst.value;
        total_err += rl.error + rr.error - worst.error;
        heap.push({worst.a, mid, rl.error, rl.value, seq++});
        heap.push({mid, worst.b, rr.error, rr.value, seq++});
        ++n_intervals;
    }
    return total;
}

} // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSettings: tolerances must be > 0");
    if (!(freq_cutoff_mult >= 6.0))
        throw std::invalid_argument("QuadratureSettings: cutoff multiplier must be >= 6");
}

std::complex<double> integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                        const QuadratureSettings& s) {
    return adaptive_impl(f, a, b, s);
}

double integrate_adaptive(const RealIntegrand& f, double a, double b,
                          const QuadratureSettings& s) {
    return adaptive_impl([&f](double x) { return std::complex<double>(f(x), 0.0); },
                         a, b, s)
        .real();
}

std::complex<double> integrate_frequency(const ComplexIntegrand& f, double omega_c,
                                         const QuadratureSettings& s) {
    s.validate();
    return adaptive_impl(f, 0.0, s.freq_cutoff_mult * omega_c, s);
}

double integrate_frequency(const RealIntegrand& f, double omega_c,
                           const QuadratureSettings& s) {
    s.validate();
    return adaptive_impl([&f](double x) { return std::complex<double>(f(x), 0.0); },
                         0.0, s.freq_cutoff_mult * omega_c, s)
        .real();
}

std::complex<double> half_fourier(const ComplexIntegrand& f, double lambda,
                                  const QuadratureSettings& s) {
    const ComplexIntegrand g = [&f, lambda](double tau) {
        return f(tau) * std::exp(std::complex<double>(0.0, lambda * tau));
    };
    // Panel width resolving the oscillation: GK15 places 15 nodes per panel,
    // so a quarter period per panel gives 60 points per period (>= 20).
    const double max_panel =
        (lambda == 0.0) ? std::numeric_limits<double>::infinity()
                        : 0.5 * std::numbers::pi / std::abs(lambda);

    auto segment = [&](double a, double b) {
        std::complex<double> acc = 0.0;
        const int n_panels =
            std::isfinite(max_panel)
                ? std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)))
                : 1;
        const double h = (b - a) / n_panels;
        for (int i = 0; i < n_panels; ++i) {
            acc += adaptive_impl(g, a + i * h, a + (i + 1) * h, s);
        }
        return acc;
    };

    // Grow the horizon until the integrand magnitude has decayed.
    double tmax = std::min(s.tau_initial, s.tau_ceiling);
    while (std::abs(f(tmax)) >= s.abs_tol) {
        if (tmax >= s.tau_ceiling) {
            throw QuadratureError(
                "half_fourier: integrand not decayed at tau ceiling", 0.0,
                std::abs(f(tmax)));
        }
        tmax = std::min(2.0 * tmax, s.tau_ceiling);
    }

    std::complex<double> result = segment(0.0, tmax);
    // Doubling check on the horizon.
    while (tmax < s.tau_ceiling) {
        const double t2 = std::min(2.0 * tmax, s.tau_ceiling);
        const std::complex<double> tail = segment(tmax, t2);
        result += tail;
        tmax = t2;
        if (std::abs(tail) <= std::max(s.abs_tol, s.rel_tol * std::abs(result)))
            return result;
    }
    throw QuadratureError("half_fourier: horizon doubling did not converge",
                          result, std::abs(result) * s.rel_tol);
}

FixedGrid FixedGrid::fourier(double a, double b, double tau_resolve) {
    // 10-point Gauss-Legendre per panel; panel width <= (2pi/tau)/1.5 keeps
    // at most ~1.5 oscillation periods per panel.
    static const double gl_x[5] = {0.148874338981631210884826001130,
                                   0.433395394129247190799265943166,
                                   0.679409568299024406234327365115,
                                   0.865063366688984510732096688423,
                                   0.973906528517171720077964012084};
    static const double gl_w[5] = {0.295524224714752870173892994651,
                                   0.269266719309996355091226921569,
                                   0.219086362515982043995534934228,
                                   0.149451349150580593145776339657,
                                   0.066671344308688137593568809893};
    const double span = b - a;
    const double min_period = 2.0 * std::numbers::pi / std::max(tau_resolve, 1e-12);
    int panels = std::max(64, static_cast<int>(std::ceil(1.5 * span / min_period)) + 4);
    FixedGrid grid;
    grid.nodes.reserve(10 * panels);
    grid.weights.reserve(10 * panels);
    const double h = span / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (int i = 4; i >= 0; --i) {
            grid.nodes.push_back(c - 0.5 * h * gl_x[i]);
            grid.weights.push_back(0.5 * h * gl_w[i]);
        }
        for (int i = 0; i < 5; ++i) {
            grid.nodes.push_back(c + 0.5 * h * gl_x[i]);
            grid.weights.push_back(0.5 * h * gl_w[i]);
        }
    }
    return grid;
}

} // namespace rfsq
