#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rfsq/constants.hpp"
#include "rfsq/master_equation.hpp"

using namespace rfsq;

namespace {

const PhononParams qd{0.027, 2.2, 4.0};

SystemParams drive(double s, double detuning_mev, double gamma_pd = 0.0) {
    SystemParams sp;
    sp.emission_rate = 1.0 / 700.0;
    sp.rabi_magnitude = SystemParams::rabi_from_s(s, sp.emission_rate);
    sp.detuning = energy_to_angular_frequency(detuning_mev);
    sp.pure_dephasing_rate = gamma_pd;
    return sp;
}

// Detuning measured from the polaron-shifted line.
SystemParams drive_shifted(double s, double detuning_mev, const PhononParams& pp) {
    SystemParams sp = drive(s, detuning_mev);
    sp.detuning += polaron_shift(pp, QuadratureSettings{});
    return sp;
}

Matrix2c random_hermitian(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix2c m;
    m(0, 0) = u(rng);
    m(1, 1) = u(rng);
    m(0, 1) = complexd(u(rng), u(rng));
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

} // namespace

TEST_CASE("dressed basis limits") {
    VariationalSolution vs;
    vs.omega_r = 1.3;
    vs.delta_r = 0.0;
    DressedBasis db = dressed_basis(vs);
    CHECK(db.gap(1, 0) == doctest::Approx(1.3).epsilon(1e-14));
    // Eigenstates (|g> -/+ |e>)/sqrt(2).
    for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(db.eigenvectors(0, j)) == doctest::Approx(std::numbers::sqrt2 / 2));
        CHECK(std::abs(db.eigenvectors(1, j)) == doctest::Approx(std::numbers::sqrt2 / 2));
    }

    vs.omega_r = 0.0;
    vs.delta_r = 0.9;
    db = dressed_basis(vs);
    CHECK(db.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(db.eigenvalues[1] == doctest::Approx(0.9));

    vs.omega_r = 0.7;
    vs.delta_r = -0.4;
    db = dressed_basis(vs);
    CHECK(db.gap(1, 0) == doctest::Approx(std::hypot(0.7, 0.4)).epsilon(1e-14));
    // Orthonormality and reconstruction.
    CHECK((db.eigenvectors.adjoint() * db.eigenvectors - Matrix2c::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    Matrix2c h = Matrix2c::Zero();
    h(1, 1) = vs.delta_r;
    h(0, 1) = h(1, 0) = 0.5 * vs.omega_r;
    const Matrix2c rebuilt = db.eigenvectors *
                             db.eigenvalues.cast<complexd>().asDiagonal() *
                             db.eigenvectors.adjoint();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("superoperator conventions") {
    std::mt19937 rng(3);
    const Matrix2c a = random_hermitian(rng);
    const Matrix2c b = random_hermitian(rng);
    const Matrix2c rho = random_hermitian(rng);
    CHECK((unvectorize(superop_left(a) * vectorize(rho)) - a * rho)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((unvectorize(superop_right(b) * vectorize(rho)) - rho * b)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_CASE("liouvillian preserves hermiticity and annihilates trace") {
    const SystemParams sp = drive_shifted(3.16e6, 1.0, qd);
    const VariationalSolution vs = solve_variational(sp, qd);
    const Liouvillian L = assemble_liouvillian(vs, sp, qd);

    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Matrix2c rho = random_hermitian(rng);
        const Matrix2c img = L.apply(rho);
        CHECK((img - img.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(img.trace()) < 1e-10);
    }
}

TEST_CASE("phonon dissipator structure") {
    const SystemParams sp = drive_shifted(3.16e6, 1.0, qd);
    const VariationalSolution vs = solve_variational(sp, qd);

    PhononParams none = qd;
    none.alpha = 0.0;
    const CorrelationContext trivial_ctx(vs, none);
    CHECK(phonon_dissipator(dressed_basis(vs), trivial_ctx, sp).cwiseAbs().maxCoeff() ==
          0.0);

    const CorrelationContext ctx(vs, qd);
    const Matrix4c k_ph = phonon_dissipator(dressed_basis(vs), ctx, sp);
    Liouvillian only_ph;
    only_ph.phonon = k_ph;
    const Matrix2c img = only_ph.apply(Matrix2c::Identity() * 0.5);
    CHECK(std::abs(img.trace()) < 1e-12);
    CHECK((img - img.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("phonons thermalize the dressed states toward Gibbs weights") {
    // Emission off: evolution under H_r + K_ph alone from |g> must land on a
    // dressed-basis-diagonal state with near-Gibbs populations.
    const SystemParams sp = drive_shifted(3.16e6, 1.0, qd);
    const VariationalSolution vs = solve_variational(sp, qd);
    const CorrelationContext ctx(vs, qd);
    const DressedBasis db = dressed_basis(vs);

    Liouvillian L;
    Matrix2c h = Matrix2c::Zero();
    h(1, 1) = vs.delta_r;
    h(0, 1) = h(1, 0) = 0.5 * vs.omega_r;
    L.hamiltonian = superop_commutator(h);
    L.phonon = phonon_dissipator(db, ctx, sp);

    const SteadyStateResult ss =
        propagate_to_steady_state(L, DensityOperator2::ground(), 0.0, 1e-9);
    const Matrix2c rho_d = db.dressed(ss.state.matrix());
    const double upper = rho_d(1, 1).real();
    const double x = qd.hbar_beta() * vs.eta_r;
    const double gibbs_upper = std::exp(-x) / (1.0 + std::exp(-x));
    CHECK(std::abs(upper - gibbs_upper) < 0.05);
    CHECK(std::abs(rho_d(0, 1)) < 0.02); // diagonal in the dressed basis
}

TEST_CASE("steady state reference points") {
    // Undriven dissipative: ground state.
    SystemParams sp = drive(0.0, 0.3);
    PhononParams none = qd;
    none.alpha = 0.0;
    VariationalSolution vs = solve_variational(sp, none);
    SteadyStateResult ss = steady_state(assemble_liouvillian(vs, sp, none));
    CHECK(ss.state(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

    // Atomic resonant S = 1/3: P = 1/8, P_coh = 3/32.
    sp = drive(1.0 / 3.0, 0.0);
    vs = solve_variational(sp, none);
    const Liouvillian L = assemble_liouvillian(vs, sp, none);
    ss = steady_state(L);
    CHECK(ss.state.excited_population() == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(std::norm(ss.state.dipole_expectation()) ==
          doctest::Approx(3.0 / 32.0).epsilon(1e-10));
    CHECK(ss.residual < 1e-10);

    // The ODE oracle lands on the same state.
    const SteadyStateResult prop =
        propagate_to_steady_state(L, DensityOperator2::ground(), 0.0, 1e-12);
    CHECK((prop.state.matrix() - ss.state.matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("oracle equivalence on phonon points") {
    for (double s : {1e5, 3.16e6}) {
        for (double d : {-1.0, 1.0}) {
            const SystemParams sp = drive_shifted(s, d, qd);
            const VariationalSolution vs = solve_variational(sp, qd);
            const Liouvillian L = assemble_liouvillian(vs, sp, qd);
            const SteadyStateResult a = steady_state(L);
            const SteadyStateResult b =
                propagate_to_steady_state(L, DensityOperator2::ground(), 0.0, 1e-12);
            CHECK((a.state.matrix() - b.state.matrix()).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(a.state.min_eigenvalue() >= -1e-8);
        }
    }
}

TEST_CASE("propagation edge cases") {
    const Liouvillian zero;
    const DensityOperator2 rho0 = density_from_bloch({0.4, 1.1, 0.3});
    const SteadyStateResult out = propagate_to_steady_state(zero, rho0);
    CHECK((out.state.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(out.steps == 0);
    CHECK(std::abs(out.state.matrix().trace() - complexd(1.0, 0.0)) < 1e-10);

    // dt above the stability contract is rejected.
    SystemParams sp = drive(1.0, 0.0);
    PhononParams none = qd;
    none.alpha = 0.0;
    const Liouvillian L =
        assemble_liouvillian(solve_variational(sp, none), sp, none);
    CHECK_THROWS_AS(
        (void)propagate_to_steady_state(L, DensityOperator2::ground(), 1e6),
        std::invalid_argument);
}

TEST_CASE("degenerate kernels are rejected") {
    // Pure Hamiltonian evolution has every diagonal-in-eigenbasis state
    // stationary: kernel dimension > 1.
    Liouvillian L;
    Matrix2c h = Matrix2c::Zero();
    h(1, 1) = 1.0;
    h(0, 1) = h(1, 0) = 0.25;
    L.hamiltonian = superop_commutator(h);
    CHECK_THROWS_AS((void)steady_state(L), DegenerateLiouvillianError);
}

TEST_CASE("pure dephasing at gamma = Gamma removes weak-drive squeezing") {
    PhononParams none = qd;
    none.alpha = 0.0;
    const SystemParams sp = drive(1.0 / 3.0, 0.0, 1.0 / 700.0);
    const VariationalSolution vs = solve_variational(sp, none);
    const SteadyStateResult ss = steady_state(assemble_liouvillian(vs, sp, none));
    const double p = ss.state.excited_population();
    const double var =
        1.0 - std::abs(2.0 * p - 1.0) - 4.0 * std::norm(ss.state.dipole_expectation());
    CHECK(var >= -1e-12);
}

TEST_CASE("drive phase bookkeeping") {
    // Complex Omega: rotate out, solve, rotate back; |<sigma>| and P are
    // invariant while arg <sigma> shifts by the drive phase.
    PhononParams none = qd;
    none.alpha = 0.0;
    SystemParams sp = drive(1.0 / 3.0, 0.2);
    const VariationalSolution vs = solve_variational(sp, none);
    const SteadyStateResult ss = steady_state(assemble_liouvillian(vs, sp, none));

    const double phase = 1.234;
    const DensityOperator2 rotated = apply_drive_phase(ss.state, phase);
    CHECK(rotated.excited_population() ==
          doctest::Approx(ss.state.excited_population()).epsilon(1e-14));
    CHECK(std::abs(rotated.dipole_expectation()) ==
          doctest::Approx(std::abs(ss.state.dipole_expectation())).epsilon(1e-14));
    const double shift =
        std::arg(rotated.dipole_expectation() / ss.state.dipole_expectation());
    CHECK(shift == doctest::Approx(-phase).epsilon(1e-12));
}
