#ifndef VACUUMPROBE_MODES_HPP
#define VACUUMPROBE_MODES_HPP

#include <complex>
#include <vector>

#include "vacuumprobe/errors.hpp"
#include "vacuumprobe/specfun.hpp"

namespace vacuumprobe::modes {

using Complex = std::complex<double>;

enum class Side { Left, Right };
enum class Kind { Alpha, Beta };

/// Cavity of length L (natural units, c = 1) suddenly divided at x = r
/// into a left sub-cavity of length r and a right one of length L - r.
class CavityGeometry {
 public:
  CavityGeometry(double global_length, double subcavity_length,
                 double reflect_bandwidth = 0.0,
                 double subcavity_linewidth = 0.0);

  double global_length() const { return L_; }
  double subcavity_length() const { return r_; }
  double ratio() const { return r_ / L_; }              // a
  double complement_ratio() const { return 1.0 - r_ / L_; }  // a-bar
  double omega1() const { return kPi / r_; }

  double Omega(int n) const { return kPi * n / L_; }    // global ladder
  double omega(int m) const { return kPi * m / r_; }    // left sub-cavity
  double omega_bar(int m) const { return kPi * m / (L_ - r_); }

  double reflect_bandwidth() const { return reflect_bandwidth_; }
  double subcavity_linewidth() const { return subcavity_linewidth_; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  double L_;
  double r_;
  double reflect_bandwidth_;
  double subcavity_linewidth_;
};

/// Global cavity mode U_n(x, t) = (L Omega_n)^{-1/2} sin(pi n x / L) e^{-i Omega_n t}.
Complex mode_function(int n, double x, double t, const CavityGeometry& geometry);

/// Closed-form coefficient of the transformation between the sub-cavity
/// mode j and the global mode n at length ratio a.  Removable
/// singularities (n = j/a for left Alpha, n = j/(1-a) for right Alpha)
/// are resolved by the analytic limit.
double bogoliubov_coefficient(Side side, Kind kind, int j, int n, double a);

/// Same coefficient obtained by quadrature of the Klein-Gordon inner
/// product between the sub-cavity and global mode functions; serves as
/// the independent check of the closed forms.
double overlap_oracle(Side side, Kind kind, int j, int n, double a,
                      const specfun::QuadratureSpec& quad = {});

/// Cached coefficient matrices for sub-cavity modes j = 1..jmax against
/// global modes n = 1..N.  Immutable after construction.
class BogoliubovTable {
 public:
  static BogoliubovTable build(const CavityGeometry& geometry, int N,
                               int jmax = 1);

  const CavityGeometry& geometry() const { return geometry_; }
  int truncation() const { return N_; }
  int jmax() const { return jmax_; }

  double alpha_left(int j, int n) const { return alpha_left_[index(j, n)]; }
  double beta_left(int j, int n) const { return beta_left_[index(j, n)]; }
  double alpha_right(int j, int n) const { return alpha_right_[index(j, n)]; }
  double beta_right(int j, int n) const { return beta_right_[index(j, n)]; }

 private:
  BogoliubovTable(const CavityGeometry& geometry, int N, int jmax);
  std::size_t index(int j, int n) const;

  CavityGeometry geometry_;
  int N_;
  int jmax_;
  std::vector<double> alpha_left_, beta_left_, alpha_right_, beta_right_;
};

struct PhotonNumberResult {
  double value = 0.0;          // partial sum to N
  double tail_estimate = 0.0;  // fitted 1/n^3 remainder beyond N
  long terms = 0;
  double total() const { return value + tail_estimate; }
};

/// Vacuum photon content of left sub-cavity mode j: sum_{n<=N} beta_{jn}^2
/// with a tail estimate from the |beta|^2 ~ C/n^3 asymptotic.
PhotonNumberResult subcavity_photon_number(int j, double a, long N);

/// Frequency shift delta_R = omega_1 * sum_n beta_{1n}^2.
double delta_R(const CavityGeometry& geometry, long N);

/// Commutator of the modified global modes restricted to the dominant
/// left mode (j = 1) and the single reflected right mode k:
/// delta_ij + a_{1i}a_{1j} - b_{1i}b_{1j} + abar_{ki}abar_{kj} - bbar_{ki}bbar_{kj}.
/// Off-diagonal deviation from delta_ij scales as O(a^2).
double tilde_commutator(int i, int j, double a, int k);

/// Coefficients of the quadratic form the reflective branch adds to the
/// free-field Hamiltonian, in the global-mode basis.
struct QuadraticCoefficients {
  std::vector<double> omega_n;        // omega1(|a_{1n}|^2 + |b_{1n}|^2)
  std::vector<Complex> f_nm;          // omega1 a_{1n} conj(a_{1m}), row-major NxN
  std::vector<Complex> g_n;           // omega1 a_{1n} conj(b_{1n})
  std::vector<Complex> g_nm;          // omega1 a_{1n} conj(b_{1m}), row-major NxN
  int N = 0;

  Complex f(int n, int m) const { return f_nm[(n - 1) * N + (m - 1)]; }
  Complex g(int n, int m) const { return g_nm[(n - 1) * N + (m - 1)]; }
};

QuadraticCoefficients quadratic_coefficients(const CavityGeometry& geometry,
                                             int N);

}  // namespace vacuumprobe::modes

#endif
