#ifndef VACUUMPROBE_SPECFUN_HPP
#define VACUUMPROBE_SPECFUN_HPP

#include <complex>
#include <functional>

#include "vacuumprobe/errors.hpp"

namespace vacuumprobe::specfun {

using Complex = std::complex<double>;

/// Digamma function psi(z) for complex argument, accurate to >= 12
/// significant digits away from the poles.  Uses the recurrence
/// psi(z+1) = psi(z) + 1/z to shift Re z above 10 and then the
/// asymptotic (Bernoulli) series; the reflection formula covers
/// Re z < 1/2.  Principal branch throughout.
/// Throws PoleError within machine tolerance of a non-positive integer.
Complex digamma(Complex z);

/// log Gamma(z) for complex z via a Lanczos approximation (g = 7).
/// The imaginary part is only defined modulo 2*pi: callers must only
/// use it inside exp() of sums/differences.
Complex lgamma_complex(Complex z);

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
/// Strategy: defining series for |z| <= 0.9; Pfaff transformation
/// z -> z/(z-1) for -9 <= z < -0.9; the z -> 1/z linear transformation
/// for z < -9.  Throws ParameterError when c is within machine
/// tolerance of a non-positive integer (or when the 1/z transformation
/// degenerates, b - a integral), ConvergenceError if the series fails
/// to converge, DomainError for z >= 1.
Complex hyp2f1(Complex a, Complex b, Complex c, double z);

/// 2F1(a, b; c; -exp(log_scale)): entry point for very large negative
/// arguments specified through their logarithm, so that arguments like
/// -e^{a*lambda/2} with lambda up to 1e3 never overflow.  The z -> 1/z
/// transformation is applied symbolically before any exponentiation.
Complex hyp2f1_neg_exp(Complex a, Complex b, Complex c, double log_scale);

/// sin(x)/x with sinc(0) = 1; even in x.
double sinc(double x);

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  Complex value{};
  double error_estimate = 0.0;
  bool converged = false;
  int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (7,15) quadrature of a complex-valued
/// function over [lo, hi].  Splits the interval with the largest error
/// estimate until the total estimate drops below
/// max(abs_tol, rel_tol*|result|) or max_subdivisions is reached; in the
/// latter case the best estimate is returned with converged = false.
/// Throws InvalidInterval when lo >= hi or an endpoint is not finite.
QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double lo, double hi,
                                   const QuadratureSpec& spec = {});

}  // namespace vacuumprobe::specfun

#endif
