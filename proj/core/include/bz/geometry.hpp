#pragma once

#include <complex>

namespace bz {

using Complex = std::complex<double>;

struct CarlesonSquare {
  Complex apex;
};

// Pseudohyperbolic disc Delta(a, r) together with its Euclidean form D(A, R).
struct PseudoDisc {
  Complex center;
  double radius = 0.0;
  Complex euclid_center;
  double euclid_radius = 0.0;
};

// Signed angle difference wrapped into (-pi, pi].
double wrapped_angle(double angle);

// z in S(a): |z| >= |a| and |arg a - arg z| < (1 - |a|)/2; S(0) is the disc.
bool square_contains(Complex a, Complex z);

PseudoDisc pseudo_disc(Complex a, double r);

// |(a - z) / (1 - conj(a) z)|
double pseudo_distance(Complex a, Complex z);

bool disc_contains(const PseudoDisc& disc, Complex z);

}  // namespace bz
