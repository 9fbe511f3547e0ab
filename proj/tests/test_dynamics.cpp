#include <doctest.h>

#include <cmath>
#include <vector>

#include "vacuumprobe/dynamics.hpp"

using vacuumprobe::CutoffTooSmall;
using vacuumprobe::DimensionTooLarge;
using vacuumprobe::DomainError;
using vacuumprobe::PeakOutsideGrid;
namespace dy = vacuumprobe::dynamics;
namespace md = vacuumprobe::modes;
using dy::PerturbativeMethod;
using Complex = dy::Complex;

namespace {
constexpr double kPi = 3.14159265358979323846;

dy::QubitDrive make_drive(double g, double detuning) {
  dy::QubitDrive d;
  d.coupling = g;
  d.transition_frequency = detuning;  // omega_D = 0
  d.drive_frequency = 0.0;
  return d;
}
}  // namespace

TEST_CASE("gaussian state: vacuum stays vacuum") {
  dy::ReducedVacuumState s = dy::gaussian_state_from_moments(0.0, {0.0, 0.0}, 5);
  CHECK(s.p[0] == doctest::Approx(1.0));
  for (int k = 1; k <= 5; ++k) CHECK(s.p[k] == doctest::Approx(0.0));
}

TEST_CASE("gaussian state: thermal family is geometric") {
  double nbar = 0.35;
  dy::ReducedVacuumState s = dy::gaussian_state_from_moments(nbar, {0.0, 0.0}, 30);
  for (int k = 0; k <= 10; ++k) {
    double want = std::pow(nbar, k) / std::pow(1.0 + nbar, k + 1);
    CHECK(s.p[k] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("gaussian state: squeezed vacuum family") {
  // Pure squeezed vacuum: |m| = sqrt(nbar(nbar+1)), p_{2k+1} = 0 and
  // p_{2k} = (2k)! tanh^{2k} r / (4^k (k!)^2 cosh r) with nbar = sinh^2 r.
  double r = 0.4;
  double nbar = std::sinh(r) * std::sinh(r);
  double mabs = std::sqrt(nbar * (nbar + 1.0));
  dy::ReducedVacuumState s =
      dy::gaussian_state_from_moments(nbar, {-mabs, 0.0}, 24);
  double th = std::tanh(r);
  double fact2k = 1.0, factk = 1.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) {
      fact2k *= (2.0 * k - 1.0) * (2.0 * k);
      factk *= k;
    }
    double want = fact2k * std::pow(th, 2 * k) /
                  (std::pow(4.0, k) * factk * factk * std::cosh(r));
    CHECK(s.p[2 * k] == doctest::Approx(want).epsilon(1e-9));
    if (k < 5) CHECK(s.p[2 * k + 1] < 1e-12);
  }
}

TEST_CASE("gaussian state: moment consistency and invariants") {
  dy::ReducedVacuumState s =
      dy::gaussian_state_from_moments(0.054, {0.07, -0.05}, 20);
  double total = 0.0, mean = 0.0;
  for (int k = 0; k <= s.cutoff(); ++k) {
    CHECK(s.p[k] >= 0.0);
    total += s.p[k];
    mean += k * s.p[k];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mean == doctest::Approx(0.054).epsilon(1e-4));
}

TEST_CASE("gaussian state: error paths") {
  CHECK_THROWS_AS(dy::gaussian_state_from_moments(0.1, {0.5, 0.0}, 20),
                  DomainError);
  CHECK_THROWS_AS(dy::gaussian_state_from_moments(2.0, {0.0, 0.0}, 1),
                  CutoffTooSmall);
}

TEST_CASE("reduced vacuum state from the midpoint table") {
  md::CavityGeometry g(1.0, 0.5);
  md::BogoliubovTable table = md::BogoliubovTable::build(g, 2000);
  dy::ReducedVacuumState s = dy::reduced_vacuum_state(table, 16);
  double nbar_direct = md::subcavity_photon_number(1, 0.5, 2000).value;
  CHECK(s.nbar == doctest::Approx(nbar_direct).epsilon(1e-12));
  CHECK(s.nbar == doctest::Approx(0.054).epsilon(0.01));
  CHECK(std::norm(s.m) <= s.nbar * (s.nbar + 1.0));
  double mean = 0.0;
  for (int k = 0; k <= s.cutoff(); ++k) mean += k * s.p[k];
  CHECK(mean == doctest::Approx(s.nbar).epsilon(1e-4));
}

TEST_CASE("perturbative probability basics") {
  dy::ReducedVacuumState s = dy::gaussian_state_from_moments(0.0, {0.0, 0.0}, 4);
  s.nbar = 0.075;  // synthetic shift, spectrum untouched
  double w1 = 1.0;
  double g = 1e-3, t = 10.0;
  // on the renormalized resonance the sinc argument vanishes
  dy::PrResult r = dy::pr_perturbative(make_drive(g, -w1 * s.nbar), s, w1, t,
                                       PerturbativeMethod::DeltaRApprox);
  CHECK(r.value == doctest::Approx(g * g * t * t).epsilon(1e-14));
  CHECK_FALSE(r.clamped);
  CHECK_FALSE(r.perturbative_warning);
  // no drive, no transition
  dy::PrResult r0 = dy::pr_perturbative(make_drive(0.0, 0.3), s, w1, t,
                                        PerturbativeMethod::GaussianExact);
  CHECK(r0.value == 0.0);
}

TEST_CASE("perturbative probability clamps and warns") {
  dy::ReducedVacuumState s = dy::gaussian_state_from_moments(0.0, {0.0, 0.0}, 4);
  dy::PrResult r = dy::pr_perturbative(make_drive(2.0, 0.0), s, 1.0, 3.0,
                                       PerturbativeMethod::DeltaRApprox);
  CHECK(r.value == 1.0);
  CHECK(r.clamped);
  CHECK(r.perturbative_warning);
}

TEST_CASE("point-mass state collapses GaussianExact onto DeltaRApprox") {
  dy::ReducedVacuumState s;
  s.nbar = 1.0;
  s.m = {0.0, 0.0};
  s.p = {0.0, 1.0, 0.0};  // exactly one photon
  double w1 = 0.4, t = 7.0, g = 1e-3;
  for (double delta : {-0.6, -0.4, 0.1, 0.8}) {
    dy::PrResult exact = dy::pr_perturbative(make_drive(g, delta), s, w1, t,
                                             PerturbativeMethod::GaussianExact);
    dy::PrResult approx = dy::pr_perturbative(make_drive(g, delta), s, w1, t,
                                              PerturbativeMethod::DeltaRApprox);
    CHECK(exact.value == doctest::Approx(approx.value).epsilon(1e-14));
  }
}

TEST_CASE("methods agree to O(t^4) at small times") {
  md::CavityGeometry geom(1.0, 0.5);
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, 2000);
  dy::ReducedVacuumState s = dy::reduced_vacuum_state(table, 16);
  double w1 = geom.omega1();
  double g = 1e-4;
  auto diff = [&](double t) {
    dy::PrResult e = dy::pr_perturbative(make_drive(g, 0.0), s, w1, t,
                                         PerturbativeMethod::GaussianExact);
    dy::PrResult a = dy::pr_perturbative(make_drive(g, 0.0), s, w1, t,
                                         PerturbativeMethod::DeltaRApprox);
    return std::abs(e.value - a.value);
  };
  double t0 = 0.02, ratio = diff(t0) / diff(t0 / 2.0);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.3));
}

TEST_CASE("rabi evolution: resonant pi pulse and off-resonant ceiling") {
  double g = 0.01;
  std::vector<double> grid{0.0, kPi / (4.0 * g), kPi / (2.0 * g)};
  vacuumprobe::SweepResult r = dy::rabi_evolve(make_drive(g, 0.0), 0.0, grid);
  const std::vector<double>& pr = r.observable("P_R");
  CHECK(pr[0] == doctest::Approx(0.0));
  CHECK(pr[2] == doctest::Approx(1.0).epsilon(1e-12));

  // far detuned: the amplitude ceiling is 4 g^2 / Delta^2
  double D = 0.5;
  dy::QubitDrive far = make_drive(g, D);
  double Om = std::sqrt(g * g + 0.25 * D * D);
  std::vector<double> tg{kPi / (2.0 * Om)};
  double peak = dy::rabi_evolve(far, 0.0, tg).observable("P_R")[0];
  CHECK(peak == doctest::Approx(4.0 * g * g / (D * D)).epsilon(5e-3));
}

TEST_CASE("rabi evolution: paper-regime suppression is about 1e-5") {
  double w1 = 1.0;
  double g = 1e-4 * w1;
  double shift = 0.075 * w1;  // effective detuning delta_R
  double Om = std::sqrt(g * g + 0.25 * shift * shift);
  std::vector<double> tg{kPi / (2.0 * Om)};
  double peak = dy::rabi_evolve(make_drive(g, 0.0), shift, tg).observable("P_R")[0];
  double expected = 4.0 * g * g / (shift * shift);
  CHECK(peak == doctest::Approx(expected).epsilon(1e-4));
  CHECK(peak > 1e-6);
  CHECK(peak < 1e-4);
}

TEST_CASE("fock oracle: no drive means no transition") {
  md::CavityGeometry geom(1.0, 0.5);
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, 3);
  std::vector<double> tg{0.1, 0.5, 1.0};
  vacuumprobe::SweepResult r =
      dy::fock_oracle_evolve(table, make_drive(0.0, 0.2), 3, 3, tg);
  for (double v : r.observable("P_R")) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("fock oracle: dimension guard") {
  md::CavityGeometry geom(1.0, 0.5);
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, 4);
  std::vector<double> tg{0.1};
  CHECK_THROWS_AS(dy::fock_oracle_evolve(table, make_drive(1e-3, 0.0), 4, 9, tg),
                  DimensionTooLarge);
}

TEST_CASE("fock oracle without counter-rotating terms reduces to Rabi") {
  md::CavityGeometry geom(1.0, 0.5);
  int n_modes = 3;
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, n_modes);
  double w1 = geom.omega1();
  double shift = 0.0;
  for (int n = 1; n <= n_modes; ++n) {
    double b = table.beta_left(1, n);
    shift += w1 * b * b;
  }
  double g = 0.02 * w1;
  double delta = -0.5 * shift;
  std::vector<double> tg;
  for (int i = 1; i <= 10; ++i) tg.push_back(0.3 * i / w1);
  dy::FockEvolveOptions opt;
  opt.include_counter_rotating = false;
  vacuumprobe::SweepResult oracle =
      dy::fock_oracle_evolve(table, make_drive(g, delta), n_modes, 3, tg, opt);
  vacuumprobe::SweepResult rabi = dy::rabi_evolve(make_drive(g, delta), shift, tg);
  for (std::size_t i = 0; i < tg.size(); ++i) {
    CHECK(std::abs(oracle.observable("P_R")[i] - rabi.observable("P_R")[i]) <
          1e-6);
  }
}

TEST_CASE("fock oracle agrees with perturbation theory at small coupling") {
  md::CavityGeometry geom(1.0, 0.5);
  int n_modes = 2;
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, n_modes);
  double w1 = geom.omega1();
  double t = 0.5 / w1;
  double g = 1e-3 * w1;
  dy::ReducedVacuumState s = dy::reduced_vacuum_state(table, 10);
  std::vector<double> tg{t};
  double oracle =
      dy::fock_oracle_evolve(table, make_drive(g, 0.0), n_modes, 5, tg)
          .observable("P_R")[0];
  double pert = dy::pr_perturbative(make_drive(g, 0.0), s, w1, t,
                                    PerturbativeMethod::GaussianExact)
                    .value;
  CHECK(oracle == doctest::Approx(pert).epsilon(0.02));
}

TEST_CASE("quadratic peak fit") {
  std::vector<double> x{-2.0, -1.0, 0.0, 1.0, 2.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 - (xi - 0.3) * (xi - 0.3));
  CHECK(dy::quadratic_peak(x, y) == doctest::Approx(0.3).epsilon(1e-12));
  std::vector<double> rising{0.0, 1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(dy::quadratic_peak(x, rising), PeakOutsideGrid);
}

TEST_CASE("detuning sweep: unshifted state peaks at zero") {
  dy::ReducedVacuumState vac = dy::gaussian_state_from_moments(0.0, {0.0, 0.0}, 4);
  std::vector<double> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(0.03 * i);
  dy::QubitDrive tmpl = make_drive(1e-3, 0.0);
  dy::DetuningSweepResult r = dy::detuning_sweep(
      tmpl, vac, 1.0, 5.0, grid, PerturbativeMethod::DeltaRApprox);
  CHECK(std::abs(r.peak_detuning) < 0.03);
  // symmetric sinc^2 profile about the peak
  const std::vector<double>& pr = r.sweep.observable("P_R");
  for (int i = 1; i <= 10; ++i) {
    CHECK(pr[10 + i] == doctest::Approx(pr[10 - i]).epsilon(1e-10));
  }
}

TEST_CASE("detuning sweep: renormalized resonance sits at -delta_R") {
  md::CavityGeometry geom(1.0, 0.5);
  md::BogoliubovTable table = md::BogoliubovTable::build(geom, 2000);
  dy::ReducedVacuumState s = dy::reduced_vacuum_state(table, 16);
  double w1 = geom.omega1();
  double dR = w1 * s.nbar;
  double t = 40.0 / w1;
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(-3.0 * dR + 4.0 * dR * i / 60.0);
  dy::QubitDrive tmpl = make_drive(1e-5 * w1, 0.0);
  dy::DetuningSweepResult r = dy::detuning_sweep(
      tmpl, s, w1, t, grid, PerturbativeMethod::DeltaRApprox);
  double step = grid[1] - grid[0];
  CHECK(std::abs(r.peak_detuning - (-dR)) < step);
}

TEST_CASE("detuning sweep: edge peak raises") {
  dy::ReducedVacuumState vac = dy::gaussian_state_from_moments(0.0, {0.0, 0.0}, 4);
  std::vector<double> grid{0.5, 0.6, 0.7, 0.8};
  CHECK_THROWS_AS(dy::detuning_sweep(make_drive(1e-3, 0.0), vac, 1.0, 5.0, grid,
                                     PerturbativeMethod::DeltaRApprox),
                  PeakOutsideGrid);
}

TEST_CASE("cavity intensity formula") {
  double w1 = 2.0;
  // pump on an integer multiple of omega1: sin vanishes
  CHECK(dy::cavity_intensity(3.0 * w1, w1, 80.0, 0.2, 0.7, 1.0) ==
        doctest::Approx(0.7 / (0.8 * 0.8)).epsilon(1e-12));
  CHECK(dy::cavity_intensity(1.3 * w1, w1, 80.0, 0.0, 0.0, 1.0) == 0.0);
  // half maximum where (2F/pi)^2 sin^2(pi nu/omega1) = 1
  double F = 50.0;
  double x = std::asin(kPi / (2.0 * F)) / kPi;  // fractional offset
  double half = dy::cavity_intensity((1.0 + x) * w1, w1, F, 0.0, 1.0, 1.0);
  CHECK(half == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(dy::cavity_intensity(1.0, w1, 80.0, 1.0, 0.5, 1.0),
                  DomainError);
  CHECK_THROWS_AS(dy::cavity_intensity(1.0, w1, 80.0, 0.0, 1.5, 1.0),
                  DomainError);
}
