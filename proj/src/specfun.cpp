#include "vacuumprobe/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace vacuumprobe::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_nonpositive_integer(const Complex& z, double tol) {
  double rn = std::round(z.real());
  return rn <= 0.5 && std::abs(z - Complex(rn, 0.0)) < tol;
}

// cot(pi*z), stable for large |Im z| where naive sin/cos overflow.
Complex cot_pi(const Complex& z) {
  Complex w = kPi * z;
  if (std::abs(w.imag()) > 20.0) {
    // cot(w) = i(e^{2iw}+1)/(e^{2iw}-1); for Im w -> +inf, e^{2iw} -> 0.
    if (w.imag() > 0.0) {
      Complex q = std::exp(Complex(0.0, 2.0) * w);  // |q| = e^{-2 Im w} tiny
      return Complex(0.0, -1.0) * (1.0 + q) / (1.0 - q);
    }
    Complex q = std::exp(Complex(0.0, -2.0) * w);
    return Complex(0.0, 1.0) * (1.0 + q) / (1.0 - q);
  }
  return std::cos(w) / std::sin(w);
}

}  // namespace

Complex digamma(Complex z) {
  if (near_nonpositive_integer(z, 1e-12)) {
    throw PoleError("digamma: argument at a non-positive integer pole");
  }
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi * cot_pi(z);
  }
  Complex acc(0.0, 0.0);
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series: psi(z) ~ ln z - 1/(2z) - sum_k B_{2k}/(2k z^{2k}).
  static const double c[] = {
      1.0 / 12.0,   -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0,   1.0 / 12.0,  -3617.0 / 8160.0};
  Complex inv2 = 1.0 / (z * z);
  Complex term = inv2;
  Complex tail(0.0, 0.0);
  for (double ck : c) {
    tail += ck * term;
    term *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - tail;
}

Complex lgamma_complex(Complex z) {
  if (near_nonpositive_integer(z, 1e-12)) {
    throw PoleError("lgamma: argument at a non-positive integer pole");
  }
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    return std::log(kPi / std::sin(kPi * z)) - lgamma_complex(1.0 - z);
  }
  static const double g[] = {0.99999999999980993,     676.5203681218851,
                             -1259.1392167224028,     771.32342877765313,
                             -176.61502916214059,     12.507343278686905,
                             -0.13857109526572012,    9.9843695780195716e-6,
                             1.5056327351493116e-7};
  Complex zm = z - 1.0;
  Complex x(g[0], 0.0);
  for (int i = 1; i < 9; ++i) {
    x += g[i] / (zm + static_cast<double>(i));
  }
  Complex t = zm + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(x);
}

namespace {

// Defining Gauss series, valid for |z| < 1 (fast for |z| <= 0.9).
Complex gauss_series(const Complex& a, const Complex& b, const Complex& c,
                     const Complex& z) {
  if (near_nonpositive_integer(c, 1e-12)) {
    throw ParameterError("hyp2f1: c at a non-positive integer");
  }
  Complex sum(1.0, 0.0);
  Complex term(1.0, 0.0);
  int consecutive_small = 0;
  const int kMaxTerms = 100000;
  for (int k = 0; k < kMaxTerms; ++k) {
    double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 + 4e-16 * std::abs(sum)) {
      if (++consecutive_small >= 2) return sum;
    } else {
      consecutive_small = 0;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge");
}

bool is_nonpositive_integer(const Complex& z) {
  return near_nonpositive_integer(z, 1e-10);
}

// z -> 1/z linear transformation with the argument passed as
// log(-z) = L (z = -e^L < 0), so no exponential is formed before the
// final log-space combination.
Complex hyp2f1_one_over_z(const Complex& a, const Complex& b, const Complex& c,
                          double L) {
  Complex d = b - a;
  if (near_nonpositive_integer(d, 1e-10) ||
      near_nonpositive_integer(-d, 1e-10) ||
      (std::abs(d.imag()) < 1e-10 &&
       std::abs(d.real() - std::round(d.real())) < 1e-10)) {
    throw ParameterError("hyp2f1: 1/z transformation degenerate (b - a integral)");
  }
  double inv = -std::exp(-L);  // 1/z in (-1, 0)
  Complex first(0.0, 0.0);
  if (!is_nonpositive_integer(b) && !is_nonpositive_integer(c - a)) {
    Complex lg = lgamma_complex(c) + lgamma_complex(b - a) - lgamma_complex(b) -
                 lgamma_complex(c - a);
    first = std::exp(lg - a * L) *
            gauss_series(a, a - c + 1.0, a - b + 1.0, inv);
  }
  Complex second(0.0, 0.0);
  if (!is_nonpositive_integer(a) && !is_nonpositive_integer(c - b)) {
    Complex lg = lgamma_complex(c) + lgamma_complex(a - b) - lgamma_complex(a) -
                 lgamma_complex(c - b);
    second = std::exp(lg - b * L) *
             gauss_series(b, b - c + 1.0, b - a + 1.0, inv);
  }
  return first + second;
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
  if (!std::isfinite(z)) throw DomainError("hyp2f1: non-finite argument");
  if (z >= 1.0) throw DomainError("hyp2f1: argument on/beyond the branch point z = 1");
  if (std::abs(z) <= 0.9) {
    return gauss_series(a, b, c, Complex(z, 0.0));
  }
  if (z < 0.0) {
    if (z >= -9.0) {
      // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
      double zp = z / (z - 1.0);
      return std::exp(-a * std::log(1.0 - z)) *
             gauss_series(a, c - b, c, Complex(zp, 0.0));
    }
    return hyp2f1_one_over_z(a, b, c, std::log(-z));
  }
  // 0.9 < z < 1: the defining series still converges, just slowly.
  return gauss_series(a, b, c, Complex(z, 0.0));
}

Complex hyp2f1_neg_exp(Complex a, Complex b, Complex c, double log_scale) {
  if (!std::isfinite(log_scale)) {
    throw DomainError("hyp2f1_neg_exp: non-finite log argument");
  }
  if (log_scale <= std::log(9.0)) {
    return hyp2f1(a, b, c, -std::exp(log_scale));
  }
  return hyp2f1_one_over_z(a, b, c, log_scale);
}

double sinc(double x) {
  double ax = std::abs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

namespace {

// Gauss-Kronrod (7,15) nodes/weights on [-1, 1] (QUADPACK values).
const double kXgk[8] = {0.991455371120813, 0.949107912342759,
                        0.864864423359769, 0.741531185599394,
                        0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979,
                        0.104790010322250, 0.140653259715525,
                        0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469};

struct Panel {
  double lo, hi;
  Complex integral;
  double error;
};

Panel evaluate_panel(const std::function<Complex(double)>& f, double lo,
                     double hi) {
  double center = 0.5 * (lo + hi);
  double half = 0.5 * (hi - lo);
  Complex fc = f(center);
  Complex kronrod = kWgk[7] * fc;
  Complex gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = half * kXgk[i];
    Complex fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  // |K - G| is a conservative estimate of the Kronrod error.
  double err = std::abs(kronrod - gauss);
  if (!std::isfinite(err) || !std::isfinite(std::abs(kronrod))) {
    err = std::numeric_limits<double>::infinity();
  }
  return {lo, hi, kronrod, err};
}

}  // namespace

QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double lo, double hi,
                                   const QuadratureSpec& spec) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo >= hi) {
    throw InvalidInterval("integrate_complex: need finite lo < hi");
  }
  if (spec.abs_tol <= 0.0 || spec.rel_tol <= 0.0 || spec.max_subdivisions < 1) {
    throw ParameterError("integrate_complex: invalid QuadratureSpec");
  }

  auto cmp = [](const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error > y.error;
    return x.lo < y.lo;
  };
  std::multiset<Panel, decltype(cmp)> panels(cmp);
  panels.insert(evaluate_panel(f, lo, hi));
  int subdivisions = 1;

  auto totals = [&panels]() {
    Complex value(0.0, 0.0);
    double err = 0.0;
    for (const Panel& p : panels) {
      value += p.integral;
      err += p.error;
    }
    return std::pair<Complex, double>(value, err);
  };

  while (true) {
    auto [value, err] = totals();
    double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (err <= target) {
      return {value, err, true, subdivisions};
    }
    if (subdivisions >= spec.max_subdivisions) {
      return {value, err, false, subdivisions};
    }
    Panel worst = *panels.begin();
    panels.erase(panels.begin());
    double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval at machine resolution; keep its estimate and stop refining.
      worst.error = 0.0;
      panels.insert(worst);
      continue;
    }
    panels.insert(evaluate_panel(f, worst.lo, mid));
    panels.insert(evaluate_panel(f, mid, worst.hi));
    ++subdivisions;
  }
}

}  // namespace vacuumprobe::specfun
