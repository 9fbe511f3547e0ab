#include "vacuumprobe/modes.hpp"

#include <cmath>

namespace vacuumprobe::modes {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularTol = 1e-9;
}  // namespace

CavityGeometry::CavityGeometry(double global_length, double subcavity_length,
                               double reflect_bandwidth,
                               double subcavity_linewidth)
    : L_(global_length),
      r_(subcavity_length),
      reflect_bandwidth_(reflect_bandwidth),
      subcavity_linewidth_(subcavity_linewidth) {
  if (!(L_ > 0.0) || !(r_ > 0.0) || !(r_ < L_)) {
    throw DomainError("CavityGeometry: need 0 < r < L");
  }
  if (reflect_bandwidth_ < 0.0 || subcavity_linewidth_ < 0.0) {
    throw DomainError("CavityGeometry: bandwidth/linewidth must be >= 0");
  }
}

Complex mode_function(int n, double x, double t,
                      const CavityGeometry& geometry) {
  if (n < 1) throw DomainError("mode_function: n >= 1 required");
  double L = geometry.global_length();
  if (x < 0.0 || x > L) {
    throw DomainError("mode_function: x outside the cavity");
  }
  double Omega = geometry.Omega(n);
  double amp = std::sin(kPi * n * x / L) / std::sqrt(L * Omega);
  return amp * std::exp(Complex(0.0, -Omega * t));
}

double bogoliubov_coefficient(Side side, Kind kind, int j, int n, double a) {
  if (j < 1 || n < 1) {
    throw DomainError("bogoliubov_coefficient: indices must be >= 1");
  }
  if (!(a > 0.0) || !(a < 1.0)) {
    throw DomainError("bogoliubov_coefficient: need 0 < a < 1");
  }
  double abar = 1.0 - a;
  double root = std::sqrt(static_cast<double>(n) * j);
  double s = std::sin(n * kPi * a);

  if (side == Side::Left) {
    if (kind == Kind::Alpha) {
      double den = n - j / a;
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(den) < kSingularTol) {
        // sin(n pi a)/(n - j/a) -> pi a cos(n pi a) as n -> j/a.
        return sign * j * std::cos(n * kPi * a) / root;
      }
      return sign * j * s / (root * a * kPi * den);
    }
    double den = n + j / a;
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * j * s / (root * a * kPi * den);
  }

  if (kind == Kind::Alpha) {
    double den = n - j / abar;
    if (std::abs(den) < kSingularTol) {
      // Resonant overlap: the two modes coincide up to a half-integer
      // shift of the argument, sin(n pi (x - a)) = (-1)^{n-j} sin(n pi x).
      double sign = ((n + j) % 2 == 0) ? 1.0 : -1.0;
      return sign * j / root;
    }
    return -j * s / (root * abar * kPi * den);
  }
  double den = n + j / abar;
  return -j * s / (root * abar * kPi * den);
}

double overlap_oracle(Side side, Kind kind, int j, int n, double a,
                      const specfun::QuadratureSpec& quad) {
  if (j < 1 || n < 1) throw DomainError("overlap_oracle: indices must be >= 1");
  if (!(a > 0.0) || !(a < 1.0)) {
    throw DomainError("overlap_oracle: need 0 < a < 1");
  }
  // Klein-Gordon inner product of the sub-cavity mode j and the global
  // mode n on the sub-cavity support, in units L = 1.
  double abar = 1.0 - a;
  double r = (side == Side::Left) ? a : abar;
  double omega_j = kPi * j / r;
  double Omega_n = kPi * n;
  double lo = (side == Side::Left) ? 0.0 : a;
  double hi = (side == Side::Left) ? a : 1.0;
  auto integrand = [&](double x) -> Complex {
    double xi = (side == Side::Left) ? x : x - a;
    return Complex(std::sin(j * kPi * xi / r) * std::sin(n * kPi * x), 0.0);
  };
  specfun::QuadratureResult I = specfun::integrate_complex(integrand, lo, hi, quad);
  double norm = std::sqrt(r * omega_j * Omega_n);  // L = 1
  double factor =
      (kind == Kind::Alpha) ? (omega_j + Omega_n) : (Omega_n - omega_j);
  return factor * I.value.real() / norm;
}

BogoliubovTable::BogoliubovTable(const CavityGeometry& geometry, int N,
                                 int jmax)
    : geometry_(geometry), N_(N), jmax_(jmax) {}

std::size_t BogoliubovTable::index(int j, int n) const {
  if (j < 1 || j > jmax_ || n < 1 || n > N_) {
    throw DomainError("BogoliubovTable: index out of range");
  }
  return static_cast<std::size_t>(j - 1) * N_ + (n - 1);
}

BogoliubovTable BogoliubovTable::build(const CavityGeometry& geometry, int N,
                                       int jmax) {
  if (N < 1 || jmax < 1) {
    throw DomainError("BogoliubovTable: N and jmax must be >= 1");
  }
  BogoliubovTable table(geometry, N, jmax);
  double a = geometry.ratio();
  std::size_t total = static_cast<std::size_t>(jmax) * N;
  table.alpha_left_.resize(total);
  table.beta_left_.resize(total);
  table.alpha_right_.resize(total);
  table.beta_right_.resize(total);
  for (int j = 1; j <= jmax; ++j) {
    for (int n = 1; n <= N; ++n) {
      std::size_t idx = static_cast<std::size_t>(j - 1) * N + (n - 1);
      table.alpha_left_[idx] =
          bogoliubov_coefficient(Side::Left, Kind::Alpha, j, n, a);
      table.beta_left_[idx] =
          bogoliubov_coefficient(Side::Left, Kind::Beta, j, n, a);
      table.alpha_right_[idx] =
          bogoliubov_coefficient(Side::Right, Kind::Alpha, j, n, a);
      table.beta_right_[idx] =
          bogoliubov_coefficient(Side::Right, Kind::Beta, j, n, a);
    }
  }
  return table;
}

PhotonNumberResult subcavity_photon_number(int j, double a, long N) {
  if (N < 1) throw DomainError("subcavity_photon_number: N >= 1 required");
  PhotonNumberResult result;
  result.terms = N;
  // Accumulate |beta_{jn}|^2 and fit the C/n^3 tail coefficient from the
  // top 20% of the range.
  long fit_start = std::max<long>(1, N - N / 5);
  double fit_sum = 0.0;
  long fit_count = 0;
  for (long n = 1; n <= N; ++n) {
    double beta = bogoliubov_coefficient(Side::Left, Kind::Beta, j,
                                         static_cast<int>(n), a);
    double b2 = beta * beta;
    result.value += b2;
    if (n >= fit_start) {
      fit_sum += b2 * static_cast<double>(n) * n * n;
      ++fit_count;
    }
  }
  if (fit_count > 0 && N > 10) {
    double C = fit_sum / fit_count;
    // sum_{n>N} C/n^3 ~ C/(2 N^2)
    result.tail_estimate = C / (2.0 * static_cast<double>(N) * N);
  }
  return result;
}

double delta_R(const CavityGeometry& geometry, long N) {
  return geometry.omega1() *
         subcavity_photon_number(1, geometry.ratio(), N).value;
}

double tilde_commutator(int i, int j, double a, int k) {
  if (i < 1 || j < 1 || k < 1) {
    throw DomainError("tilde_commutator: indices must be >= 1");
  }
  // Commutator of the global modes with the a_1 and right-mode-k content
  // projected out: delta_ij minus the subtracted coefficient products.
  double value = (i == j) ? 1.0 : 0.0;
  value -= bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, i, a) *
               bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, j, a) -
           bogoliubov_coefficient(Side::Left, Kind::Beta, 1, i, a) *
               bogoliubov_coefficient(Side::Left, Kind::Beta, 1, j, a);
  value -= bogoliubov_coefficient(Side::Right, Kind::Alpha, k, i, a) *
               bogoliubov_coefficient(Side::Right, Kind::Alpha, k, j, a) -
           bogoliubov_coefficient(Side::Right, Kind::Beta, k, i, a) *
               bogoliubov_coefficient(Side::Right, Kind::Beta, k, j, a);
  return value;
}

QuadraticCoefficients quadratic_coefficients(const CavityGeometry& geometry,
                                             int N) {
  if (N < 1) throw DomainError("quadratic_coefficients: N >= 1 required");
  double a = geometry.ratio();
  double w1 = geometry.omega1();
  QuadraticCoefficients q;
  q.N = N;
  q.omega_n.resize(N);
  q.g_n.resize(N);
  q.f_nm.resize(static_cast<std::size_t>(N) * N);
  q.g_nm.resize(static_cast<std::size_t>(N) * N);
  std::vector<double> alpha(N), beta(N);
  for (int n = 1; n <= N; ++n) {
    alpha[n - 1] = bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, n, a);
    beta[n - 1] = bogoliubov_coefficient(Side::Left, Kind::Beta, 1, n, a);
  }
  for (int n = 1; n <= N; ++n) {
    q.omega_n[n - 1] =
        w1 * (alpha[n - 1] * alpha[n - 1] + beta[n - 1] * beta[n - 1]);
    q.g_n[n - 1] = w1 * alpha[n - 1] * beta[n - 1];
    for (int m = 1; m <= N; ++m) {
      std::size_t idx = static_cast<std::size_t>(n - 1) * N + (m - 1);
      q.f_nm[idx] = w1 * alpha[n - 1] * alpha[m - 1];
      q.g_nm[idx] = w1 * alpha[n - 1] * beta[m - 1];
    }
  }
  return q;
}

}  // namespace vacuumprobe::modes
