#ifndef RFSQ_VARIATIONAL_HPP
#define RFSQ_VARIATIONAL_HPP

#include <stdexcept>
#include <string>

#include "rfsq/quadrature.hpp"
#include "rfsq/types.hpp"

namespace rfsq {

// Which displacement profile the solver uses. The forced frames are
// diagnostic cross-checks; `variational` is the self-consistent optimum.
enum class FrameMode { variational, full_polaron, weak_coupling };

// Sign convention for the detuning renormalisation. main_text uses
// delta_r = delta + int J F (F - 2) / w dw ; supp_note flips to F (2 - F).
enum class DeltaRForm { main_text, supp_note };

struct VariationalOptions {
    FrameMode frame = FrameMode::variational;
    DeltaRForm delta_r_form = DeltaRForm::main_text;
    double damping = 0.5;          // falls back to 0.1 on oscillation
    double tolerance = 1e-10;      // max relative change per iteration
    int max_iterations = 10000;
    QuadratureSettings quad{};
};

struct VariationalSolution {
    double omega_r = 0.0;          // renormalised drive magnitude, ps^-1
    double delta_r = 0.0;          // renormalised detuning, ps^-1
    double coherence_b = 1.0;      // B in (0, 1]
    double eta_r = 0.0;            // sqrt(delta_r^2 + omega_r^2)
    double free_energy_mev = 0.0;  // A_B (see free_energy_bound for the offset)
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;         // relative change at the last iteration

    // Inputs the solution was built from (needed by the correlation layer).
    double rabi_magnitude = 0.0;   // bare |Omega|
    double detuning_bare = 0.0;    // bare delta entering the Hamiltonian
    FrameMode frame = FrameMode::variational;

    // Displacement fraction F(omega); depends only on (delta_r, omega_r, beta)
    // through the closed form, or is identically 0/1 in the forced frames.
    double displacement_fraction(double omega, const PhononParams& p) const;
};

// Closed-form F(omega) evaluated at given renormalised parameters.
double displacement_fraction(double omega, double delta_r, double omega_r,
                             double hbeta);

// Polaron shift int_0^inf J(w)/w dw (closed form alpha sqrt(pi)/4 wc^3 for
// the Gaussian-cutoff J; evaluated by quadrature to honour the settings).
double polaron_shift(const PhononParams& p, const QuadratureSettings& s);

// Damped fixed-point iteration on (omega_r, delta_r), started from both the
// full-polaron (F=1) and weak-coupling (F=0) guesses; when both converge the
// candidate with the lower free-energy bound wins.
VariationalSolution solve_variational(const SystemParams& sp, const PhononParams& pp,
                                      const VariationalOptions& opt = {});

// Feynman-Bogoliubov bound, reported relative to the bare-detuning offset:
// A_B = hbar (delta_r - delta_bare)/2 - kB T ln[2 cosh(hbar beta eta_r / 2)].
// The dropped constants (hbar delta_bare / 2 and the free bath term) do not
// depend on the displacement profile, so candidate ranking is unaffected.
double free_energy_bound(const VariationalSolution& candidate,
                         const SystemParams& sp, const PhononParams& pp);

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, VariationalSolution last)
        : std::runtime_error(what), last_(std::move(last)) {}
    const VariationalSolution& last_iterate() const { return last_; }

private:
    VariationalSolution last_;
};

} // namespace rfsq

#endif
