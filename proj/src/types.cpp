#include "rfsq/types.hpp"

#include <cmath>

#include "rfsq/constants.hpp"

namespace rfsq {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

double wrap_phase(double phi) {
    double p = std::fmod(phi, two_pi);
    if (p < 0.0) p += two_pi;
    return p;
}
} // namespace

Matrix2c sigma_minus() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1.0;
    return m;
}

Matrix2c sigma_plus() { return sigma_minus().adjoint(); }

Matrix2c sigma_x() { return sigma_minus() + sigma_plus(); }

Matrix2c sigma_y() {
    return complexd(0.0, 1.0) * (sigma_minus() - sigma_plus());
}

Matrix2c sigma_z() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Matrix2c number_op() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 1) = 1.0;
    return m;
}

void SystemParams::validate() const {
    if (!(rabi_magnitude >= 0.0) || !std::isfinite(rabi_magnitude))
        throw std::invalid_argument("SystemParams: rabi_magnitude must be >= 0");
    if (!(emission_rate > 0.0) || !std::isfinite(emission_rate))
        throw std::invalid_argument("SystemParams: emission_rate must be > 0");
    if (!(pure_dephasing_rate >= 0.0) || !std::isfinite(pure_dephasing_rate))
        throw std::invalid_argument("SystemParams: pure_dephasing_rate must be >= 0");
    if (!std::isfinite(detuning) || !std::isfinite(rabi_phase))
        throw std::invalid_argument("SystemParams: non-finite parameter");
}

double SystemParams::scaled_driving_s() const {
    const double r = rabi_magnitude / emission_rate;
    return 2.0 * r * r;
}

double SystemParams::rabi_from_s(double s, double emission_rate) {
    if (s < 0.0) throw std::invalid_argument("scaled driving s must be >= 0");
    return emission_rate * std::sqrt(0.5 * s);
}

void PhononParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("PhononParams: alpha must be >= 0");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw std::invalid_argument("PhononParams: cutoff must be > 0");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("PhononParams: temperature must be > 0 (beta finite)");
}

double PhononParams::hbar_beta() const {
    return hbar_mev_ps / (kb_mev_per_k * temperature);
}

DensityOperator2::DensityOperator2(const Matrix2c& m, double eig_tol) : m_(m) {
    const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-12)
        throw std::invalid_argument("DensityOperator2: not Hermitian");
    const double trace_defect = std::abs(m.trace() - complexd(1.0, 0.0));
    if (trace_defect > 1e-12)
        throw std::invalid_argument("DensityOperator2: trace != 1");
    m_ = 0.5 * (m + m.adjoint().eval());
    if (min_eigenvalue() < -eig_tol)
        throw std::invalid_argument("DensityOperator2: negative eigenvalue");
}

DensityOperator2 DensityOperator2::ground() {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = 1.0;
    return DensityOperator2(m);
}

DensityOperator2 DensityOperator2::excited() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 1) = 1.0;
    return DensityOperator2(m);
}

DensityOperator2 DensityOperator2::maximally_mixed() {
    return DensityOperator2(Matrix2c::Identity() * 0.5);
}

double DensityOperator2::min_eigenvalue() const {
    const double a = m_(0, 0).real();
    const double d = m_(1, 1).real();
    const double off = std::abs(m_(0, 1));
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
    return mean - rad;
}

BlochVector bloch_from_density(const DensityOperator2& rho) {
    const Matrix2c& m = rho.matrix();
    // rho_eg = (r_x - i r_y)/2 with r_a = <sigma_a>
    const double rx = 2.0 * m(1, 0).real();
    const double ry = -2.0 * m(1, 0).imag();
    const double rz = 2.0 * m(1, 1).real() - 1.0;

    BlochVector b;
    b.length = std::sqrt(rx * rx + ry * ry + rz * rz);
    const double transverse = std::hypot(rx, ry);
    b.polar = (b.length == 0.0) ? 0.0 : std::atan2(transverse, rz);
    // <sigma> = (rx - i ry)/2 = |<sigma>| e^{-i phi}  =>  phi = atan2(ry, rx)
    b.phase = (transverse <= 1e-300) ? 0.0 : wrap_phase(std::atan2(ry, rx));
    return b;
}

DensityOperator2 density_from_bloch(const BlochVector& b) {
    if (b.length > 1.0 + 1e-12)
        throw std::invalid_argument("BlochVector: length > 1");
    const double l = std::min(b.length, 1.0);
    const double rx = l * std::sin(b.polar) * std::cos(b.phase);
    const double ry = l * std::sin(b.polar) * std::sin(b.phase);
    const double rz = l * std::cos(b.polar);
    Matrix2c m;
    m(0, 0) = 0.5 * (1.0 - rz);
    m(1, 1) = 0.5 * (1.0 + rz);
    m(1, 0) = 0.5 * complexd(rx, -ry);
    m(0, 1) = std::conj(m(1, 0));
    return DensityOperator2(m);
}

} // namespace rfsq
