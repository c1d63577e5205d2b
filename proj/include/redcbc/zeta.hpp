#pragma once

namespace redcbc {

/// Riemann zeta for real x > 1, absolute error below 1e-12
/// (direct partial sum plus Euler-Maclaurin tail).
double riemann_zeta(double x);

}  // namespace redcbc
