#ifndef RFSQ_TYPES_HPP
#define RFSQ_TYPES_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace rfsq {

using complexd = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Basis convention: index 0 = |g>, index 1 = |e>. The dipole operator is
// sigma = |g><e|, so <sigma> of a density matrix rho is rho(1,0).
Matrix2c sigma_minus();   // |g><e|
Matrix2c sigma_plus();    // |e><g|
Matrix2c sigma_x();       // sigma + sigma^dag
Matrix2c sigma_y();       // i(sigma - sigma^dag)
Matrix2c sigma_z();       // 2 sigma^dag sigma - 1
Matrix2c number_op();     // sigma^dag sigma = |e><e|

// Driven two-level emitter parameters, all angular frequencies in ps^-1.
struct SystemParams {
    double rabi_magnitude = 0.0;    // |Omega| >= 0
    double rabi_phase = 0.0;        // arg(Omega), radians in [0, 2pi)
    double detuning = 0.0;          // delta, signed
    double emission_rate = 1.0;     // Gamma > 0
    double pure_dephasing_rate = 0.0; // gamma >= 0

    void validate() const;
    // s = 2 (Omega/Gamma)^2 and back.
    double scaled_driving_s() const;
    static double rabi_from_s(double s, double emission_rate);
};

// Super-Ohmic phonon environment J(w) = alpha w^3 exp(-w^2/wc^2).
struct PhononParams {
    double alpha = 0.0;        // ps^2, >= 0
    double cutoff = 1.0;       // omega_c, ps^-1, > 0
    double temperature = 1.0;  // kelvin, > 0

    void validate() const;
    double hbar_beta() const;  // ps
};

struct BlochVector {
    double length = 0.0;  // l in [0, 1]
    double polar = 0.0;   // theta in [0, pi]
    double phase = 0.0;   // phi in [0, 2pi)
};

// 2x2 Hermitian unit-trace state in the {|g>, |e>} basis.
class DensityOperator2 {
public:
    DensityOperator2() : m_(Matrix2c::Identity() * 0.5) {}
    // Validates hermiticity (1e-12), unit trace (1e-12) and eigenvalues
    // >= -eig_tol; throws std::invalid_argument otherwise. Steady states of
    // the variational master equation are built with eig_tol = 1e-8 (the
    // equations are not guaranteed completely positive).
    explicit DensityOperator2(const Matrix2c& m, double eig_tol = 1e-10);

    const Matrix2c& matrix() const { return m_; }
    complexd operator()(int i, int j) const { return m_(i, j); }

    double excited_population() const { return m_(1, 1).real(); }
    complexd dipole_expectation() const { return m_(1, 0); } // <sigma>

    static DensityOperator2 ground();
    static DensityOperator2 excited();
    static DensityOperator2 maximally_mixed();

    // Smallest eigenvalue (exact 2x2 formula), for positivity reporting.
    double min_eigenvalue() const;

private:
    Matrix2c m_;
};

// rho = (1/2)(1 + l [cos(theta)(2 n - 1) + sin(theta) X(phi)]) with
// X(phi) = e^{i phi} sigma + e^{-i phi} sigma^dag. The dipole phase follows
// <sigma> = |<sigma>| e^{-i phi}; degenerate phase (l sin(theta) = 0)
// returns phi = 0.
BlochVector bloch_from_density(const DensityOperator2& rho);
DensityOperator2 density_from_bloch(const BlochVector& b);

} // namespace rfsq

#endif
