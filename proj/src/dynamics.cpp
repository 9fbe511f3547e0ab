#include "vacuumprobe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "vacuumprobe/specfun.hpp"

namespace vacuumprobe::dynamics {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ReducedVacuumState gaussian_state_from_moments(double nbar, Complex m,
                                               int fock_cutoff) {
  if (fock_cutoff < 0) {
    throw DomainError("gaussian_state_from_moments: cutoff must be >= 0");
  }
  if (nbar < 0.0) {
    throw DomainError("gaussian_state_from_moments: nbar must be >= 0");
  }
  double m2 = std::norm(m);
  if (m2 > nbar * (nbar + 1.0) + 1e-12) {
    throw DomainError(
        "gaussian_state_from_moments: |m|^2 > nbar(nbar+1) is unphysical");
  }

  ReducedVacuumState state;
  state.nbar = nbar;
  state.m = m;
  state.p.assign(static_cast<std::size_t>(fock_cutoff) + 1, 0.0);

  // Squeezed-thermal decomposition: symplectic eigenvalue nu, thermal
  // occupation n_th, squeezing parameter r and phase phi such that
  // <a^2> = -(n_th + 1/2) sinh(2r) e^{i phi} = m.
  double nu = std::sqrt((nbar + 0.5) * (nbar + 0.5) - std::min(m2, nbar * (nbar + 1.0)));
  double n_th = std::max(0.0, nu - 0.5);
  double mabs = std::sqrt(m2);

  if (nbar < 1e-14) {
    state.p[0] = 1.0;
    return state;
  }

  if (mabs < 1e-14) {
    // Purely thermal: geometric distribution.
    double q = n_th / (1.0 + n_th);
    double w = 1.0 / (1.0 + n_th);
    double total = 0.0;
    for (int k = 0; k <= fock_cutoff; ++k) {
      state.p[k] = w;
      total += w;
      w *= q;
    }
    if (1.0 - total > 1e-6) {
      throw CutoffTooSmall("gaussian_state_from_moments: tail mass > 1e-6");
    }
    return state;
  }

  double r = 0.5 * std::asinh(mabs / nu);
  Complex phase = -m / mabs;  // e^{i phi}
  Complex xi = r * phase;

  // Work in a padded Fock space so that the truncated squeeze operator is
  // effectively unitary on the retained block.
  int D = fock_cutoff + 1 + 48;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(D, D);
  for (int n = 2; n < D; ++n) {
    double amp = std::sqrt(static_cast<double>(n) * (n - 1));
    // G = (conj(xi) a^2 - xi a^dag^2)/2
    G(n - 2, n) += 0.5 * std::conj(xi) * amp;
    G(n, n - 2) -= 0.5 * xi * amp;
  }
  Eigen::MatrixXcd S = G.exp();

  // p_k = sum_j w_j |<k|S|j>|^2 with thermal weights w_j.
  double q = n_th / (1.0 + n_th);
  double w = 1.0 / (1.0 + n_th);
  std::vector<double> pw(D, 0.0);
  for (int j = 0; j < D; ++j) {
    if (w > 1e-300) {
      for (int k = 0; k < D; ++k) {
        pw[k] += w * std::norm(S(k, j));
      }
    }
    w *= q;
  }
  double retained = 0.0;
  for (int k = 0; k <= fock_cutoff; ++k) {
    state.p[k] = pw[k];
    retained += pw[k];
  }
  if (1.0 - retained > 1e-6) {
    throw CutoffTooSmall("gaussian_state_from_moments: tail mass > 1e-6");
  }
  return state;
}

ReducedVacuumState reduced_vacuum_state(const modes::BogoliubovTable& table,
                                        int fock_cutoff) {
  double nbar = 0.0;
  double m = 0.0;
  for (int n = 1; n <= table.truncation(); ++n) {
    double alpha = table.alpha_left(1, n);
    double beta = table.beta_left(1, n);
    nbar += beta * beta;
    m += alpha * beta;
  }
  return gaussian_state_from_moments(nbar, Complex(m, 0.0), fock_cutoff);
}

PrResult pr_perturbative(const QubitDrive& drive,
                         const ReducedVacuumState& state, double omega1,
                         double t, PerturbativeMethod method) {
  if (t < 0.0) throw DomainError("pr_perturbative: t must be >= 0");
  PrResult result;
  double g = drive.coupling;
  double delta = drive.detuning();
  double base = (g * t) * (g * t);
  result.perturbative_warning = 4.0 * base > 0.1;
  double value = 0.0;
  if (method == PerturbativeMethod::DeltaRApprox) {
    double s = specfun::sinc(0.5 * (delta + omega1 * state.nbar) * t);
    value = base * s * s;
  } else {
    for (int k = 0; k <= state.cutoff(); ++k) {
      double s = specfun::sinc(0.5 * (delta + omega1 * k) * t);
      value += state.p[k] * base * s * s;
    }
  }
  if (value < 0.0) {
    result.value = 0.0;
    result.clamped = true;
  } else if (value > 1.0) {
    result.value = 1.0;
    result.clamped = true;
  } else {
    result.value = value;
  }
  return result;
}

SweepResult rabi_evolve(const QubitDrive& drive, double effective_shift,
                        const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw DomainError("rabi_evolve: t_grid must be sorted and non-negative");
    }
  }
  double g = drive.coupling;
  double D = drive.detuning() + effective_shift;
  double Om2 = g * g + 0.25 * D * D;
  double Om = std::sqrt(Om2);
  SweepResult result;
  result.axis_name = "t";
  result.axis_values = t_grid;
  std::vector<double> pr(t_grid.size(), 0.0);
  if (Om2 > 0.0) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      double s = std::sin(Om * t_grid[i]);
      pr[i] = (g * g / Om2) * s * s;
    }
  }
  result.observables.emplace_back("P_R", std::move(pr));
  result.add_metadata("g", std::to_string(g));
  result.add_metadata("detuning", std::to_string(drive.detuning()));
  result.add_metadata("effective_shift", std::to_string(effective_shift));
  return result;
}

SweepResult fock_oracle_evolve(const modes::BogoliubovTable& table,
                               const QubitDrive& drive, int n_global_modes,
                               int cutoff, const std::vector<double>& t_grid,
                               const FockEvolveOptions& options) {
  if (n_global_modes < 1 || cutoff < 1) {
    throw DomainError("fock_oracle_evolve: need n_global_modes, cutoff >= 1");
  }
  if (n_global_modes > table.truncation()) {
    throw DomainError("fock_oracle_evolve: table truncation too small");
  }
  long dim_f = 1;
  int C = cutoff + 1;
  for (int i = 0; i < n_global_modes; ++i) {
    dim_f *= C;
    if (2 * dim_f > 16384) {
      throw DimensionTooLarge("fock_oracle_evolve: 2*(cutoff+1)^n > 16384");
    }
  }
  const long dim = 2 * dim_f;

  const modes::CavityGeometry& geom = table.geometry();
  double w1 = geom.omega1();

  // Annihilation operator of field mode i (0-based) in the product basis.
  auto lower = [&](int mode_i) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(dim_f, dim_f);
    long stride = 1;
    for (int i = 0; i < mode_i; ++i) stride *= C;
    for (long idx = 0; idx < dim_f; ++idx) {
      long occ = (idx / stride) % C;
      if (occ >= 1) {
        // b |.., occ, ..> = sqrt(occ) |.., occ-1, ..>
        B(idx - stride, idx) = std::sqrt(static_cast<double>(occ));
      }
    }
    return B;
  };

  // Free-field Hamiltonian (transmissive branch), diagonal.
  Eigen::VectorXd free_diag = Eigen::VectorXd::Zero(dim_f);
  {
    long stride = 1;
    for (int i = 0; i < n_global_modes; ++i) {
      for (long idx = 0; idx < dim_f; ++idx) {
        long occ = (idx / stride) % C;
        free_diag(idx) += geom.Omega(i + 1) * static_cast<double>(occ);
      }
      stride *= C;
    }
  }

  // P = sum alpha_n b_n, Q = sum beta_n b_n; the reflective branch adds
  // omega1 (P^dag - Q)(P - Q^dag), whose particle-conserving part is
  // omega1 (P^dag P + Q Q^dag).
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim_f, dim_f);
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(dim_f, dim_f);
  for (int n = 1; n <= n_global_modes; ++n) {
    Eigen::MatrixXcd B = lower(n - 1);
    P += table.alpha_left(1, n) * B;
    Q += table.beta_left(1, n) * B;
  }
  Eigen::MatrixXcd quad;
  if (options.include_counter_rotating) {
    Eigen::MatrixXcd A1 = P - Q.adjoint();
    quad = w1 * (A1.adjoint() * A1);
  } else {
    quad = w1 * (P.adjoint() * P + Q * Q.adjoint());
  }

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  double delta = drive.detuning();
  double g = drive.coupling;
  // Blocks: [0, dim_f) = qubit T, [dim_f, 2*dim_f) = qubit R.
  H.block(0, 0, dim_f, dim_f) = free_diag.asDiagonal();
  H.block(dim_f, dim_f, dim_f, dim_f) =
      Eigen::MatrixXcd(free_diag.asDiagonal()) + quad +
      delta * Eigen::MatrixXcd::Identity(dim_f, dim_f);
  H.block(0, dim_f, dim_f, dim_f) =
      g * Eigen::MatrixXcd::Identity(dim_f, dim_f);
  H.block(dim_f, 0, dim_f, dim_f) =
      g * Eigen::MatrixXcd::Identity(dim_f, dim_f);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("fock_oracle_evolve: eigendecomposition failed");
  }
  const Eigen::MatrixXcd& V = solver.eigenvectors();
  const Eigen::VectorXd& E = solver.eigenvalues();

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0;  // |T> x |vacuum>
  Eigen::VectorXcd coeffs = V.adjoint() * psi;

  SweepResult result;
  result.axis_name = "t";
  result.axis_values = t_grid;
  std::vector<double> pr(t_grid.size(), 0.0);
  double t_prev = 0.0;
  Eigen::VectorXcd c = coeffs;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double t = t_grid[i];
    if (t < 0.0 || t < t_prev) {
      throw DomainError("fock_oracle_evolve: t_grid must be sorted, >= 0");
    }
    double dt = t - t_prev;
    for (long k = 0; k < dim; ++k) {
      c(k) *= std::exp(Complex(0.0, -E(k) * dt));
    }
    t_prev = t;
    Eigen::VectorXcd state = V * c;
    double norm = state.squaredNorm();
    if (std::abs(norm - 1.0) > 1e-8) {
      throw NormDriftExceeded("fock_oracle_evolve: norm drift > 1e-8");
    }
    pr[i] = state.segment(dim_f, dim_f).squaredNorm();
  }
  result.observables.emplace_back("P_R", std::move(pr));
  result.add_metadata("n_global_modes", std::to_string(n_global_modes));
  result.add_metadata("cutoff", std::to_string(cutoff));
  result.add_metadata("include_counter_rotating",
                      options.include_counter_rotating ? "true" : "false");
  return result;
}

double quadratic_peak(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw DomainError("quadratic_peak: need matching grids with >= 3 points");
  }
  std::size_t imax =
      std::distance(y.begin(), std::max_element(y.begin(), y.end()));
  if (imax == 0 || imax + 1 == y.size()) {
    throw PeakOutsideGrid("quadratic_peak: maximum on the grid edge");
  }
  double x0 = x[imax - 1], x1 = x[imax], x2 = x[imax + 1];
  double y0 = y[imax - 1], y1 = y[imax], y2 = y[imax + 1];
  double d1 = (y1 - y0) / (x1 - x0);
  double d2 = (y2 - y1) / (x2 - x1);
  double curv = (d2 - d1) / (x2 - x0);
  if (curv >= 0.0) return x1;
  return 0.5 * (x0 + x1) - 0.5 * d1 / curv;
}

DetuningSweepResult detuning_sweep(const QubitDrive& drive_template,
                                   const ReducedVacuumState& state,
                                   double omega1, double t,
                                   const std::vector<double>& delta_grid,
                                   PerturbativeMethod method) {
  if (delta_grid.size() < 3) {
    throw DomainError("detuning_sweep: need at least 3 grid points");
  }
  SweepResult sweep;
  sweep.axis_name = "detuning";
  sweep.axis_values = delta_grid;
  std::vector<double> pr(delta_grid.size(), 0.0);
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    QubitDrive d = drive_template;
    d.drive_frequency = d.transition_frequency - delta_grid[i];
    pr[i] = pr_perturbative(d, state, omega1, t, method).value;
  }
  double peak = quadratic_peak(delta_grid, pr);
  DetuningSweepResult result;
  result.sweep = std::move(sweep);
  result.sweep.observables.emplace_back("P_R", std::move(pr));
  result.sweep.add_metadata("t", std::to_string(t));
  result.sweep.add_metadata("omega1", std::to_string(omega1));
  result.peak_detuning = peak;
  return result;
}

double cavity_intensity(double pump_frequency, double omega1, double finesse,
                        double r_att, double c_R_sq, double I0) {
  if (r_att < 0.0 || r_att >= 1.0) {
    throw DomainError("cavity_intensity: need 0 <= r_att < 1");
  }
  if (c_R_sq < 0.0 || c_R_sq > 1.0) {
    throw DomainError("cavity_intensity: need 0 <= c_R_sq <= 1");
  }
  if (finesse <= 0.0 || omega1 <= 0.0) {
    throw DomainError("cavity_intensity: need finesse > 0 and omega1 > 0");
  }
  double i_max = I0 / ((1.0 - r_att) * (1.0 - r_att));
  double s = std::sin(kPi * pump_frequency / omega1);
  double comb = 1.0 + (2.0 * finesse / kPi) * (2.0 * finesse / kPi) * s * s;
  return i_max * c_R_sq / comb;
}

}  // namespace vacuumprobe::dynamics
