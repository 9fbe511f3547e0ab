#ifndef VACUUMPROBE_DYNAMICS_HPP
#define VACUUMPROBE_DYNAMICS_HPP

#include <complex>
#include <vector>

#include "vacuumprobe/errors.hpp"
#include "vacuumprobe/modes.hpp"
#include "vacuumprobe/sweep.hpp"

namespace vacuumprobe::dynamics {

using Complex = std::complex<double>;

/// Control atom parameters: transition frequency nu, drive frequency
/// omega_D, coupling g, linewidth gamma (annotation only; the dynamics
/// is unitary).
struct QubitDrive {
  double transition_frequency = 0.0;  // nu
  double drive_frequency = 0.0;       // omega_D
  double coupling = 0.0;              // g
  double linewidth = 0.0;             // gamma

  double detuning() const { return transition_frequency - drive_frequency; }
};

/// Reduced Gaussian state of the sub-cavity mode a_1 in the global
/// vacuum: second moments plus the photon-number distribution.
struct ReducedVacuumState {
  double nbar = 0.0;   // <a1^dag a1>
  Complex m{};         // <a1 a1>
  std::vector<double> p;  // p_0 .. p_cutoff

  int cutoff() const { return static_cast<int>(p.size()) - 1; }
};

/// Photon-number distribution of the zero-mean single-mode Gaussian
/// state with the given second moments, via its squeezed-thermal
/// decomposition.  Throws CutoffTooSmall when more than 1e-6 of the
/// probability mass lies above the cutoff, DomainError for unphysical
/// moments (|m|^2 > nbar(nbar+1)).
ReducedVacuumState gaussian_state_from_moments(double nbar, Complex m,
                                               int fock_cutoff);

/// Reduced state of left sub-cavity mode 1 from a Bogoliubov table:
/// nbar = sum beta^2, m = sum alpha*beta over the table truncation.
ReducedVacuumState reduced_vacuum_state(const modes::BogoliubovTable& table,
                                        int fock_cutoff);

enum class PerturbativeMethod { DeltaRApprox, GaussianExact };

struct PrResult {
  double value = 0.0;
  bool clamped = false;              // raw expression left [0, 1]
  bool perturbative_warning = false; // 4(gt)^2 > 0.1
};

/// First-order transition probability of the control atom after drive
/// time t.  DeltaRApprox: (gt)^2 sinc^2((delta + omega1*nbar)t/2).
/// GaussianExact: (gt)^2 sum_k p_k sinc^2((delta + omega1*k)t/2).
PrResult pr_perturbative(const QubitDrive& drive,
                         const ReducedVacuumState& state, double omega1,
                         double t, PerturbativeMethod method);

/// Exact two-level Rabi dynamics at effective detuning
/// delta + effective_shift: P_R(t) = g^2/(g^2 + D^2/4) sin^2(sqrt(g^2 + D^2/4) t).
SweepResult rabi_evolve(const QubitDrive& drive, double effective_shift,
                        const std::vector<double>& t_grid);

struct FockEvolveOptions {
  bool include_counter_rotating = true;
};

/// Non-perturbative reference: evolves |T> x |vacuum> under the qubit x
/// truncated-Fock Hamiltonian in the frame rotating at the drive
/// frequency.  Transmissive branch: sum_n Omega_n b^dag b; reflective
/// branch adds the full quadratic form (including the counter-rotating
/// pieces unless disabled) and the vacuum constant omega1 sum beta^2.
/// Propagation uses the exact eigendecomposition of the time-independent
/// Hamiltonian applied step by step over the grid; norm drift beyond
/// 1e-8 raises NormDriftExceeded.  Throws DimensionTooLarge when
/// 2*(cutoff+1)^n_global_modes exceeds 16384.
SweepResult fock_oracle_evolve(const modes::BogoliubovTable& table,
                               const QubitDrive& drive, int n_global_modes,
                               int cutoff, const std::vector<double>& t_grid,
                               const FockEvolveOptions& options = {});

/// Location of the maximum of y(x) refined by a quadratic fit through
/// the three samples around the grid maximum.  Throws PeakOutsideGrid
/// when the maximum sits on an edge.
double quadratic_peak(const std::vector<double>& x,
                      const std::vector<double>& y);

struct DetuningSweepResult {
  SweepResult sweep;
  double peak_detuning = 0.0;
};

/// Evaluates pr_perturbative over delta_grid (drive frequency varied at
/// fixed nu) and extracts the peak by a quadratic fit around the grid
/// maximum.  Throws PeakOutsideGrid when the maximum sits on the edge.
DetuningSweepResult detuning_sweep(const QubitDrive& drive_template,
                                   const ReducedVacuumState& state,
                                   double omega1, double t,
                                   const std::vector<double>& delta_grid,
                                   PerturbativeMethod method);

/// Lorentzian-comb intracavity intensity:
/// I = I0/(1-r_att)^2 * c_R_sq / (1 + (2F/pi)^2 sin^2(pi nu_p/omega1)).
double cavity_intensity(double pump_frequency, double omega1, double finesse,
                        double r_att, double c_R_sq, double I0);

}  // namespace vacuumprobe::dynamics

#endif
