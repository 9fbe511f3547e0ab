#ifndef VACUUMPROBE_SWITCHING_HPP
#define VACUUMPROBE_SWITCHING_HPP

#include <complex>

#include "vacuumprobe/errors.hpp"
#include "vacuumprobe/modes.hpp"
#include "vacuumprobe/specfun.hpp"

namespace vacuumprobe::switching {

using Complex = std::complex<double>;

/// Smooth mirror switch-on at rate lambda, in the cavity with walls at
/// x = +-a/2 and the mirror appearing at x = 0.
struct SwitchProfile {
  double lambda = 1.0;
  double a = 1.0;  // cavity width (walls at +-a/2)

  /// Late-time effective reflectivity 1 - (2/pi) atan(1/lambda).
  double effective_reflectivity() const;
};

/// Switching angle theta(t) = atan((1 + e^{-lambda t})/lambda),
/// monotone decreasing from pi/2-like early values to atan(1/lambda).
double theta_profile(double t, double lambda);

/// Inverse of r_eff = 1 - (2/pi) atan(1/lambda):
/// lambda = 1/tan((1 - r_eff) pi/2).  Throws DomainError outside (0, 1)
/// or within 1e-12 of the perfect-mirror limit (lambda overflow).
double lambda_for_reflectivity(double r_eff);

/// Right-moving mode during the switching, in the lightcone coordinate u:
/// (8 pi k)^{-1/2} e^{-iku} (1 - rho e^{lambda u})/(1 + e^{lambda u})
/// with rho = (lambda + ik)/(lambda - ik).  Evaluated through e^{-lambda u}
/// for u > 0 so large lambda*u never overflows.
Complex switched_mode(double u, double k, double lambda);

/// Bogoliubov beta coefficient between the switched mode n and the
/// static cavity mode m (wavenumbers pi*n/a, pi*m/a), closed form in
/// terms of 2F1 and the digamma function.  Matches
/// beta_imperfect_numeric to better than 1e-6 relative.
Complex beta_imperfect_closed(int n, int m, const SwitchProfile& profile);

/// Same overlap with the switched mode replaced by the free plane wave
/// (no mirror): the residual Klein-Gordon inner product of two
/// right-movers restricted to [0, a/2].  This is the switching-free
/// baseline subtracted when counting mirror-created particles.
Complex beta_no_mirror(int n, int m, const SwitchProfile& profile);

/// Quadrature oracle for beta_imperfect_closed: adaptive integration of
/// i (U_m d_u Ubar_n - Ubar_n d_u U_m) over [0, a/2].
Complex beta_imperfect_numeric(int n, int m, const SwitchProfile& profile,
                               const specfun::QuadratureSpec& quad = {});

struct ImperfectParticleNumber {
  double value = 0.0;          // partial sum to N
  double tail_estimate = 0.0;  // 1/n^3 tail fit
  double lambda = 0.0;
  double total() const { return value + tail_estimate; }
};

/// Mirror-created particle content of cavity mode m at effective
/// reflectivity r_eff: sum_n |beta_nm - beta_nm(no mirror)|^2.  The
/// no-mirror overlap is subtracted because the right-moving plane waves
/// are not orthogonal on the half interval; without the subtraction the
/// sum diverges logarithmically and is independent of lambda in the tail.
ImperfectParticleNumber particle_number_imperfect(int m, double r_eff, long N);

}  // namespace vacuumprobe::switching

#endif
