#ifndef RFSQ_CHEBYSHEV_HPP
#define RFSQ_CHEBYSHEV_HPP

#include <complex>
#include <functional>
#include <vector>

namespace rfsq {

// Chebyshev interpolant of a smooth complex function on [a, b], evaluated by
// Clenshaw recurrence. The node count doubles until the high-order
// coefficient tail falls below tail_tol relative to the largest coefficient.
class ChebyshevSeries {
public:
    ChebyshevSeries() = default;
    ChebyshevSeries(const std::function<std::complex<double>(double)>& f,
                    double a, double b, double tail_tol = 1e-12,
                    int n_min = 65, int n_max = 4097);

    // Interpolant through given samples at the extrema grid
    // x_k = (a+b)/2 + (b-a)/2 cos(k pi / n), k = 0..n.
    static ChebyshevSeries from_samples(const std::vector<std::complex<double>>& fx,
                                        double a, double b);

    std::complex<double> operator()(double x) const;
    double lower() const { return a_; }
    double upper() const { return b_; }
    int size() const { return static_cast<int>(coef_.size()); }
    // max |c_k| over the top eighth relative to max |c_k|; the resolution
    // check used when building from samples.
    double tail_ratio() const { return tail_ratio_; }

private:
    double a_ = 0.0, b_ = 1.0;
    double tail_ratio_ = 0.0;
    std::vector<std::complex<double>> coef_;
};

} // namespace rfsq

#endif
