#ifndef RFSQ_MASTER_EQUATION_HPP
#define RFSQ_MASTER_EQUATION_HPP

#include <stdexcept>

#include "rfsq/correlations.hpp"
#include "rfsq/types.hpp"
#include "rfsq/variational.hpp"

namespace rfsq {

// Eigensystem of H_r = delta_r n + (Omega_r/2) sigma_x (real rotated drive).
// Eigenvalues ascend; gap(j, k) = psi_j - psi_k in ps^-1.
struct DressedBasis {
    Eigen::Vector2d eigenvalues;   // psi_1 <= psi_2, ps^-1
    Matrix2c eigenvectors;         // columns |psi_j>
    double gap(int j, int k) const { return eigenvalues[j] - eigenvalues[k]; }
    // Matrix elements <psi_j| O |psi_k> of a lab-basis operator.
    Matrix2c dressed(const Matrix2c& op) const {
        return eigenvectors.adjoint() * op * eigenvectors;
    }
};

DressedBasis dressed_basis(const VariationalSolution& vs);

// Superoperators act on row-major vectorized 2x2 matrices:
// vec(rho) = (rho_gg, rho_ge, rho_eg, rho_ee); left multiplication by A maps
// to kron(A, I), right multiplication by B to kron(I, B^T). This layout is
// the bit-exact contract for the diagnostic JSON dump.
Vector4c vectorize(const Matrix2c& m);
Matrix2c unvectorize(const Vector4c& v);
Matrix4c superop_left(const Matrix2c& a);
Matrix4c superop_right(const Matrix2c& b);
Matrix4c superop_lindblad(double rate, const Matrix2c& jump);
Matrix4c superop_commutator(const Matrix2c& h); // rho -> -i [h, rho]

struct Liouvillian {
    Matrix4c hamiltonian = Matrix4c::Zero();
    Matrix4c phonon = Matrix4c::Zero();
    Matrix4c emission = Matrix4c::Zero();
    Matrix4c dephasing = Matrix4c::Zero();
    Matrix4c total() const { return hamiltonian + phonon + emission + dephasing; }
    Matrix2c apply(const Matrix2c& rho) const {
        return unvectorize(total() * vectorize(rho));
    }
};

// Phonon dissipator superoperator. Each bath channel (i, j) with system
// operators A_i in {sigma_x, sigma_y, n} and correlation C_ij contributes
//   c_i c_j ( [Xi_ij rho, A_i] + [A_i, rho Xi_ij^dag] ),
//   Xi_ij = sum_jk (A_j)^{jk} K_ij(lambda_kj) |psi_j><psi_k|,
// where K_ij(lambda) is the half-line Fourier coefficient of C_ij and the
// response argument lambda_kj = psi_k - psi_j is the frequency handed to the
// bath by the k -> j transition. The cross channels carry C_yz = Lambda_yz/2
// and C_zy = -Lambda_yz/2. Prefactors use the bare Omega, not Omega_r.
Matrix4c phonon_dissipator(const DressedBasis& db, const CorrelationContext& ctx,
                           const SystemParams& sp);

// L = -i[H_r, .] + K_ph + Gamma L_sigma + gamma L_dephasing, assembled for
// the drive rotated real (sigma -> sigma e^{i phase} bookkeeping is undone
// by apply_drive_phase on the steady state).
Liouvillian assemble_liouvillian(const VariationalSolution& vs,
                                 const SystemParams& sp,
                                 const CorrelationContext& ctx);
Liouvillian assemble_liouvillian(const VariationalSolution& vs,
                                 const SystemParams& sp, const PhononParams& pp,
                                 const QuadratureSettings& qs = {});

struct SteadyStateResult {
    DensityOperator2 state;
    double residual = 0.0;   // ||L[rho]||_2 of the vectorized image
    long steps = 0;          // propagation steps (0 for the null-space path)
};

class DegenerateLiouvillianError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Null-space steady state: smallest singular direction, Hermitized and
// trace-normalized. Throws DegenerateLiouvillianError unless the kernel is
// one-dimensional within tolerance.
SteadyStateResult steady_state(const Liouvillian& L);

// Independent oracle: fixed-step RK4 on rho' = L[rho] until ||L[rho]|| < tol.
// dt = 0 picks 0.1 / ||L||_inf. Throws ConvergenceError past the step budget.
SteadyStateResult propagate_to_steady_state(const Liouvillian& L,
                                            const DensityOperator2& rho0,
                                            double dt = 0.0, double tol = 1e-10,
                                            long max_steps = 100000000L);

// Undo the global drive-phase rotation on a steady state computed for real
// Omega: rho_phys = U^dag rho U with U = diag(1, e^{i phase}).
DensityOperator2 apply_drive_phase(const DensityOperator2& rho, double phase);

} // namespace rfsq

#endif
