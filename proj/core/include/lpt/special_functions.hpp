#pragma once

namespace lpt {

/// Parabolic cylinder function D_order(x) for order <= 0.
///
/// Satisfies f'' - (x^2/4 + (2 a - 1)/2) f = 0 with a = -order, standard
/// Whittaker normalization. Positive for all real x when order <= 0.
/// Throws DomainError for order > 0 and RangeError when the value is not
/// representable in double precision.
double parabolic_cylinder_D(double order, double x);

/// log D_order(x) for order <= 0; immune to the over/underflow of the
/// plain variant for large |x| or strongly negative order.
double log_parabolic_cylinder_D(double order, double x);

} // namespace lpt
