#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <type_traits>

namespace wlocc {

/// Exact rational scalar. Diagonal measurements act on W-class coordinates
/// through products and quotients only, so protocols built from rational
/// parameters can be executed without rounding.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <class Real>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Real>;

template <class Real>
double to_double(const Real& value) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<double>(value);
  } else {
    return value.template convert_to<double>();
  }
}

template <class Real>
Real abs_value(const Real& value) {
  return value < Real(0) ? Real(-value) : value;
}

inline constexpr double kDefaultTol = 1e-12;

/// Classification tolerance: 1e-12 for floating point, zero for exact types.
template <class Real>
Real default_tolerance() {
  if constexpr (std::is_floating_point_v<Real>) {
    return Real(1e-12);
  } else {
    return Real(0);
  }
}

inline std::string to_string(const Rational& value) {
  return value.str();
}

}  // namespace wlocc
