#include "rfsq/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfsq {

namespace {

// Chebyshev coefficients from samples at the extrema grid x_k = cos(k pi / n),
// k = 0..n (type-I DCT, direct evaluation; n stays small enough here).
std::vector<std::complex<double>>
coefficients(const std::vector<std::complex<double>>& fx) {
    const int n = static_cast<int>(fx.size()) - 1;
    std::vector<std::complex<double>> c(n + 1);
    for (int j = 0; j <= n; ++j) {
        std::complex<double> acc = 0.5 * (fx[0] + (j % 2 == 0 ? 1.0 : -1.0) * fx[n]);
        for (int k = 1; k < n; ++k) {
            acc += fx[k] * std::cos(j * k * std::numbers::pi / n);
        }
        c[j] = (2.0 / n) * acc;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
}

double tail_of(const std::vector<std::complex<double>>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    double cmax = 0.0;
    for (const auto& v : c) cmax = std::max(cmax, std::abs(v));
    if (cmax == 0.0) return 0.0;
    double tail = 0.0;
    for (int j = n - n / 8; j <= n; ++j) tail = std::max(tail, std::abs(c[j]));
    return tail / cmax;
}

} // namespace

ChebyshevSeries ChebyshevSeries::from_samples(
    const std::vector<std::complex<double>>& fx, double a, double b) {
    if (fx.size() < 3) throw std::invalid_argument("ChebyshevSeries: too few samples");
    if (!(b > a)) throw std::invalid_argument("ChebyshevSeries: empty interval");
    ChebyshevSeries s;
    s.a_ = a;
    s.b_ = b;
    s.coef_ = coefficients(fx);
    s.tail_ratio_ = tail_of(s.coef_);
    return s;
}

ChebyshevSeries::ChebyshevSeries(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tail_tol, int n_min, int n_max)
    : a_(a), b_(b) {
    if (!(b > a)) throw std::invalid_argument("ChebyshevSeries: empty interval");
    int n = n_min - 1; // polynomial degree; node count n+1
    std::vector<std::complex<double>> fx;
    while (true) {
        fx.assign(n + 1, 0.0);
        for (int k = 0; k <= n; ++k) {
            const double t = std::cos(k * std::numbers::pi / n);
            fx[k] = f(0.5 * (a + b) + 0.5 * (b - a) * t);
        }
        coef_ = coefficients(fx);
        tail_ratio_ = tail_of(coef_);
        double cmax = 0.0;
        for (const auto& c : coef_) cmax = std::max(cmax, std::abs(c));
        if (cmax == 0.0 || tail_ratio_ <= tail_tol || 2 * n + 1 > n_max) {
            // Drop negligible trailing coefficients.
            int keep = static_cast<int>(coef_.size());
            while (keep > 2 && std::abs(coef_[keep - 1]) < 0.25 * tail_tol * cmax)
                --keep;
            coef_.resize(keep);
            return;
        }
        n *= 2;
    }
}

std::complex<double> ChebyshevSeries::operator()(double x) const {
    const double t = (2.0 * x - (a_ + b_)) / (b_ - a_);
    // Clenshaw recurrence.
    std::complex<double> b1 = 0.0, b2 = 0.0;
    for (int j = static_cast<int>(coef_.size()) - 1; j >= 1; --j) {
        const std::complex<double> tmp = b1;
        b1 = 2.0 * t * b1 - b2 + coef_[j];
        b2 = tmp;
    }
    return t * b1 - b2 + coef_[0];
}

} // namespace rfsq
