#ifndef RFSQ_SPECTRAL_HPP
#define RFSQ_SPECTRAL_HPP

#include <cmath>
#include <stdexcept>

#include "rfsq/types.hpp"

namespace rfsq {

// J(omega) = alpha omega^3 exp(-omega^2/omega_c^2), omega >= 0.
inline double spectral_density(double omega, const PhononParams& p) {
    if (omega < 0.0)
        throw std::invalid_argument("spectral_density: omega must be >= 0");
    const double r = omega / p.cutoff;
    return p.alpha * omega * omega * omega * std::exp(-r * r);
}

} // namespace rfsq

#endif
