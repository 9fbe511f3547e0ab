#include "vacuumprobe/switching.hpp"

#include <cmath>

namespace vacuumprobe::switching {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
}  // namespace

double SwitchProfile::effective_reflectivity() const {
  return 1.0 - (2.0 / kPi) * std::atan(1.0 / lambda);
}

double theta_profile(double t, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("theta_profile: lambda > 0 required");
  return std::atan((1.0 + std::exp(-lambda * t)) / lambda);
}

double lambda_for_reflectivity(double r_eff) {
  if (!(r_eff > 0.0) || !(r_eff < 1.0)) {
    throw DomainError("lambda_for_reflectivity: need 0 < r_eff < 1");
  }
  if (1.0 - r_eff < 1e-12) {
    throw DomainError(
        "lambda_for_reflectivity: r_eff within 1e-12 of the perfect-mirror "
        "limit; lambda overflows");
  }
  return 1.0 / std::tan((1.0 - r_eff) * kPi / 2.0);
}

namespace {

// (1 - rho e^{lambda u})/(1 + e^{lambda u}) and its u-derivative,
// computed through e^{-|lambda u|} so neither direction overflows.
Complex switch_factor(double u, double lambda, const Complex& rho) {
  if (u > 0.0) {
    double e = std::exp(-lambda * u);
    return (e - rho) / (e + 1.0);
  }
  double e = std::exp(lambda * u);
  return (1.0 - rho * e) / (1.0 + e);
}

Complex switch_factor_derivative(double u, double lambda, const Complex& rho) {
  // d/du [(1 - rho e^{lu})/(1 + e^{lu})] = -l (1 + rho) e^{lu}/(1 + e^{lu})^2
  if (u > 0.0) {
    double e = std::exp(-lambda * u);
    double denom = (1.0 + e) * (1.0 + e);
    return -lambda * (1.0 + rho) * e / denom;
  }
  double e = std::exp(lambda * u);
  double denom = (1.0 + e) * (1.0 + e);
  return -lambda * (1.0 + rho) * e / denom;
}

void check_indices(int n, int m, const SwitchProfile& profile) {
  if (n < 1 || m < 1) throw DomainError("switching: indices must be >= 1");
  if (!(profile.lambda > 0.0) || !(profile.a > 0.0)) {
    throw DomainError("switching: lambda > 0 and a > 0 required");
  }
}

}  // namespace

Complex switched_mode(double u, double k, double lambda) {
  if (!(k > 0.0) || !(lambda > 0.0)) {
    throw DomainError("switched_mode: k > 0 and lambda > 0 required");
  }
  Complex rho = Complex(lambda, k) / Complex(lambda, -k);
  Complex plane = std::exp(-kI * k * u) / std::sqrt(8.0 * kPi * k);
  return plane * switch_factor(u, lambda, rho);
}

Complex beta_imperfect_closed(int n, int m, const SwitchProfile& profile) {
  check_indices(n, m, profile);
  double lambda = profile.lambda;
  double a = profile.a;
  double kn = kPi * n / a;
  double km = kPi * m / a;
  Complex rho = Complex(lambda, kn) / Complex(lambda, -kn);
  double vartheta = (m + n) * kPi / (a * lambda);
  Complex s(0.0, -(m + n) * kPi / a);
  Complex E = std::exp(s * (a / 2.0));  // (-i)^{m+n}
  double w = std::exp(-lambda * a / 2.0);
  double c = 1.0 / (4.0 * kPi * std::sqrt(static_cast<double>(m) * n));

  // I(s) = int_0^{a/2} e^{su} e^{lu}/(1+e^{lu})^2 du, split into a
  // digamma part and a 2F1 part that vanishes in the sudden limit.
  Complex I = (specfun::digamma(Complex(1.0, vartheta / 2.0)) -
               specfun::digamma(Complex(0.5, vartheta / 2.0))) /
              (2.0 * lambda);
  if (w > 0.0) {
    I -= E * (w / (lambda - s)) *
         specfun::hyp2f1(1.0, 1.0 - s / lambda, 2.0 - s / lambda, -w);
  }

  Complex bracket = E * (w - rho) / (w + 1.0) - (1.0 - rho) / 2.0 +
                    2.0 * kI * km * (-rho * (E - 1.0) / s + (1.0 + rho) * I);
  return kI * c * bracket;
}

Complex beta_no_mirror(int n, int m, const SwitchProfile& profile) {
  check_indices(n, m, profile);
  double a = profile.a;
  double km = kPi * m / a;
  Complex s(0.0, -(m + n) * kPi / a);
  Complex E = std::exp(s * (a / 2.0));
  double c = 1.0 / (4.0 * kPi * std::sqrt(static_cast<double>(m) * n));
  return kI * c * (E - 1.0) * (1.0 + 2.0 * kI * km / s);
}

Complex beta_imperfect_numeric(int n, int m, const SwitchProfile& profile,
                               const specfun::QuadratureSpec& quad) {
  check_indices(n, m, profile);
  double lambda = profile.lambda;
  double a = profile.a;
  double kn = kPi * n / a;
  double km = kPi * m / a;
  Complex rho = Complex(lambda, kn) / Complex(lambda, -kn);
  double c = 1.0 / (4.0 * kPi * std::sqrt(static_cast<double>(m) * n));
  // i (U_m d_u Ubar_n - Ubar_n d_u U_m) with U_m = e^{-i km u} (up to the
  // common normalization collected in c).
  auto integrand = [&](double u) -> Complex {
    Complex F = switch_factor(u, lambda, rho);
    Complex Fp = switch_factor_derivative(u, lambda, rho);
    Complex phase = std::exp(-kI * (km + kn) * u);
    return kI * c * phase * (kI * (km - kn) * F + Fp);
  };
  specfun::QuadratureResult r =
      specfun::integrate_complex(integrand, 0.0, a / 2.0, quad);
  return r.value;
}

ImperfectParticleNumber particle_number_imperfect(int m, double r_eff,
                                                  long N) {
  if (m < 1) throw DomainError("particle_number_imperfect: m >= 1 required");
  if (N < 1) throw DomainError("particle_number_imperfect: N >= 1 required");
  ImperfectParticleNumber result;
  result.lambda = lambda_for_reflectivity(r_eff);
  SwitchProfile profile{result.lambda, 1.0};
  long fit_start = std::max<long>(1, N - N / 5);
  double fit_sum = 0.0;
  long fit_count = 0;
  for (long n = 1; n <= N; ++n) {
    Complex b = beta_imperfect_closed(static_cast<int>(n), m, profile) -
                beta_no_mirror(static_cast<int>(n), m, profile);
    double b2 = std::norm(b);
    result.value += b2;
    if (n >= fit_start) {
      fit_sum += b2 * static_cast<double>(n) * n * n;
      ++fit_count;
    }
  }
  if (fit_count > 0 && N > 10) {
    double C = fit_sum / fit_count;
    result.tail_estimate = C / (2.0 * static_cast<double>(N) * N);
  }
  return result;
}

}  // namespace vacuumprobe::switching
