#include "rfsq/master_equation.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rfsq {

DressedBasis dressed_basis(const VariationalSolution& vs) {
    Matrix2c h = Matrix2c::Zero();
    h(1, 1) = vs.delta_r;
    h(0, 1) = 0.5 * vs.omega_r;
    h(1, 0) = 0.5 * vs.omega_r;
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(h);
    DressedBasis db;
    db.eigenvalues = es.eigenvalues();
    db.eigenvectors = es.eigenvectors();
    return db;
}

Vector4c vectorize(const Matrix2c& m) {
    Vector4c v;
    v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return v;
}

Matrix2c unvectorize(const Vector4c& v) {
    Matrix2c m;
    m << v(0), v(1), v(2), v(3);
    return m;
}

namespace {
Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}
} // namespace

Matrix4c superop_left(const Matrix2c& a) { return kron2(a, Matrix2c::Identity()); }

Matrix4c superop_right(const Matrix2c& b) {
    return kron2(Matrix2c::Identity(), b.transpose());
}

Matrix4c superop_lindblad(double rate, const Matrix2c& jump) {
    const Matrix2c jd = jump.adjoint();
    const Matrix2c jdj = jd * jump;
    return rate * (superop_left(jump) * superop_right(jd) -
                   0.5 * (superop_left(jdj) + superop_right(jdj)));
}

Matrix4c superop_commutator(const Matrix2c& h) {
    return complexd(0.0, -1.0) * (superop_left(h) - superop_right(h));
}

Matrix4c phonon_dissipator(const DressedBasis& db, const CorrelationContext& ctx,
                           const SystemParams& sp) {
    if (ctx.phonons().alpha == 0.0) return Matrix4c::Zero();

    const Matrix2c sx = sigma_x();
    const Matrix2c sy = sigma_y();
    const Matrix2c n = number_op();
    const double omega = sp.rabi_magnitude;

    // Xi_ij built from the dressed elements of A_j with the response of C_ij
    // evaluated at lambda_kj = psi_k - psi_j on |psi_j><psi_k|.
    auto xi = [&](const Matrix2c& a_j, ResponseKind kind, double scale) {
        const Matrix2c ad = db.dressed(a_j);
        Matrix2c out = Matrix2c::Zero();
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const complexd resp =
                    ctx.response_coefficient(kind, db.gap(k, j));
                out += ad(j, k) * scale * resp *
                       (db.eigenvectors.col(j) * db.eigenvectors.col(k).adjoint());
            }
        }
        return out;
    };

    auto channel = [&](double prefactor, const Matrix2c& a_i, const Matrix2c& xi_ij) {
        // rho -> prefactor * ([Xi rho, A] + [A, rho Xi^dag])
        const Matrix2c xid = xi_ij.adjoint();
        Matrix4c s = superop_right(a_i) * superop_left(xi_ij) -
                     superop_left(a_i * xi_ij) +
                     superop_left(a_i) * superop_right(xid) -
                     superop_right(xid * a_i);
        return (prefactor * s).eval();
    };

    Matrix4c k_ph = Matrix4c::Zero();
    k_ph += channel(0.25 * omega * omega, sx, xi(sx, ResponseKind::xx, 1.0));
    k_ph += channel(0.25 * omega * omega, sy, xi(sy, ResponseKind::yy, 1.0));
    k_ph += channel(1.0, n, xi(n, ResponseKind::zz, 1.0));
    // Cross channels: C_yz = +Lambda_yz/2 couples A_i = sigma_y to A_j = n;
    // C_zy = -Lambda_yz/2 couples A_i = n to A_j = sigma_y.
    k_ph += channel(0.5 * omega, sy, xi(n, ResponseKind::yz, 0.5));
    k_ph += channel(0.5 * omega, n, xi(sy, ResponseKind::yz, -0.5));
    return k_ph;
}

Liouvillian assemble_liouvillian(const VariationalSolution& vs,
                                 const SystemParams& sp,
                                 const CorrelationContext& ctx) {
    Matrix2c h = Matrix2c::Zero();
    h(1, 1) = vs.delta_r;
    h(0, 1) = 0.5 * vs.omega_r;
    h(1, 0) = 0.5 * vs.omega_r;

    Liouvillian L;
    L.hamiltonian = superop_commutator(h);
    L.phonon = phonon_dissipator(dressed_basis(vs), ctx, sp);
    L.emission = superop_lindblad(sp.emission_rate, sigma_minus());
    if (sp.pure_dephasing_rate > 0.0)
        L.dephasing = superop_lindblad(sp.pure_dephasing_rate, number_op());
    return L;
}

Liouvillian assemble_liouvillian(const VariationalSolution& vs,
                                 const SystemParams& sp, const PhononParams& pp,
                                 const QuadratureSettings& qs) {
    const CorrelationContext ctx(vs, pp, qs);
    return assemble_liouvillian(vs, sp, ctx);
}

SteadyStateResult steady_state(const Liouvillian& L) {
    const Matrix4c M = L.total();
    Eigen::JacobiSVD<Matrix4c> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0)
        throw DegenerateLiouvillianError("steady_state: zero Liouvillian");
    if (sv(3) > 1e-8 * smax)
        throw DegenerateLiouvillianError("steady_state: no kernel direction");
    if (sv(2) < 1e-8 * smax)
        throw DegenerateLiouvillianError("steady_state: kernel dimension > 1");

    Matrix2c rho = unvectorize(svd.matrixV().col(3));
    rho = 0.5 * (rho + rho.adjoint().eval());
    const complexd tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw DegenerateLiouvillianError("steady_state: traceless kernel vector");
    rho /= tr;

    SteadyStateResult out{DensityOperator2(rho, 1e-8), (M * vectorize(rho)).norm(), 0};
    return out;
}

SteadyStateResult propagate_to_steady_state(const Liouvillian& L,
                                            const DensityOperator2& rho0,
                                            double dt, double tol,
                                            long max_steps) {
    const Matrix4c M = L.total();
    const double norm_inf = M.cwiseAbs().rowwise().sum().maxCoeff();
    if (dt <= 0.0) dt = (norm_inf > 0.0) ? 0.1 / norm_inf : 1.0;
    if (norm_inf > 0.0 && dt > 0.1 / norm_inf)
        throw std::invalid_argument("propagate_to_steady_state: dt too large");

    Vector4c v = vectorize(rho0.matrix());
    long step = 0;
    double residual = (M * v).norm();
    while (residual >= tol) {
        if (step >= max_steps)
            throw std::runtime_error(
                "propagate_to_steady_state: step budget exceeded");
        const Vector4c k1 = M * v;
        const Vector4c k2 = M * (v + 0.5 * dt * k1);
        const Vector4c k3 = M * (v + 0.5 * dt * k2);
        const Vector4c k4 = M * (v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++step;
        if (step % 16 == 0 || step < 16) residual = (M * v).norm();
    }
    Matrix2c rho = unvectorize(v);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace();
    return {DensityOperator2(rho, 1e-8), (M * vectorize(rho)).norm(), step};
}

DensityOperator2 apply_drive_phase(const DensityOperator2& rho, double phase) {
    if (phase == 0.0) return rho;
    Matrix2c u = Matrix2c::Identity();
    u(1, 1) = std::exp(complexd(0.0, phase));
    return DensityOperator2((u.adjoint() * rho.matrix() * u).eval());
}

} // namespace rfsq
