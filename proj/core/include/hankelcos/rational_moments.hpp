#ifndef HANKELCOS_RATIONAL_MOMENTS_HPP
#define HANKELCOS_RATIONAL_MOMENTS_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace hankelcos::quad {

using Rational = boost::multiprecision::cpp_rational;

/// integral_0^inf e^{-beta x} x^{2r} cos(x) dx  =  (d/dbeta)^{2r} [beta/(1+beta^2)],
/// computed by exact symbolic differentiation of the rational function
/// (integer polynomial numerator over (1+beta^2)^m) and exact evaluation.
/// At beta = 0 the result is exactly 0 for every r >= 1.
Rational moment_cos_exact(int r, const Rational& beta);

} // namespace hankelcos::quad

#endif
