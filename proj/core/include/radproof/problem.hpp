#pragma once

#include <string>
#include <vector>

#include "radproof/interval.hpp"
#include "radproof/polynomial.hpp"

namespace radproof {

/// Delta U + N(U) = 0 on R^d with equilibrium c.
struct EllipticProblem {
  std::string name;
  std::size_t q = 1;
  int d = 2;
  PolynomialMap N;
  std::vector<Interval> c;
};

/// Checks arities, d >= 2, K >= 2 and that N(c) encloses 0.
void validate(const EllipticProblem& p);

/// First-order field on (x1, u, p):
///   (-x1^2, p, -(d-1) x1 p - N(u)).
PolynomialMap derive_first_order(const EllipticProblem& p);

/// N(U) = -U + b1 U^2 + b2 U^3 on R^3 about c = 0.
EllipticProblem klein_gordon(const Interval& b1 = 1.0, const Interval& b2 = 1.0);

/// Two-component form of the Swift-Hohenberg equation on R^2 about c = 0:
///   N(U) = (b4 U1 - U2, b4 U2 - b1 U1 - b2 U1^2 - b3 U1^3).
EllipticProblem swift_hohenberg(const Interval& b1, const Interval& b2, const Interval& b3, const Interval& b4);
EllipticProblem swift_hohenberg();

/// Three-component FitzHugh-Nagumo type system on R^2 about (c*, c*, c*):
///   N1 = eps^-2 (U1 - U1^3) - eps^-1 (b1 + b2 U2 + b3 U3)
///   N2 = U1 - U2
///   N3 = b4^-2 (U1 - U3)
/// with c* the smallest root of v - v^3 - eps (b1 + (b2 + b3) v).
EllipticProblem fitzhugh_nagumo(const Interval& eps, const Interval& b1, const Interval& b2, const Interval& b3,
                                const Interval& b4);
EllipticProblem fitzhugh_nagumo();

/// Smallest root of v^3 - (1 - eps (b2 + b3)) v + eps b1, enclosed by
/// bisection on a sign change.
Interval fhn_equilibrium(const Interval& eps, const Interval& b1, const Interval& b2, const Interval& b3);

}  // namespace radproof
