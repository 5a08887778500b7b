#ifndef HANKELCOS_SPECFUN_HPP
#define HANKELCOS_SPECFUN_HPP

#include "hankelcos/types.hpp"

namespace hankelcos::specfun {

inline constexpr double euler_gamma = 0.5772156649015329;

/// Evaluation policy for the zeroth-order cylinder functions: ascending power
/// series inside |z| < crossover_radius, Hankel asymptotic expansion outside.
struct SeriesConfig {
    double crossover_radius = 12.0;
    int series_terms_max = 60;
    int asymptotic_terms = 20;
    double target_rel_tol = 1e-12;

    void validate() const {
        if (!(crossover_radius > 0.0))
            throw DomainError("crossover_radius must be positive");
        if (series_terms_max < 1 || asymptotic_terms < 1)
            throw DomainError("term counts must be >= 1");
        if (!(target_rel_tol > 0.0) || target_rel_tol > 1e-6)
            throw DomainError("target_rel_tol must lie in (0, 1e-6]");
    }
};

/// J0(z) for complex z.
Complex bessel_j0(Complex z, const SeriesConfig& cfg = {});

/// Y0(z) with the principal logarithm; z != 0.
Complex bessel_y0(Complex z, const SeriesConfig& cfg = {});

/// H0^(2)(z) = J0(z) - i Y0(z); recessive (decaying) in the lower half-plane.
Complex hankel2_0(Complex z, const SeriesConfig& cfg = {});

/// H0^(1)(z) = conj(H0^(2)(conj z)).
Complex hankel1_0(Complex z, const SeriesConfig& cfg = {});

/// d/dz of J0 and Y0 (term-differentiated series / asymptotics); these back
/// the Wronskian identity J0 Y0' - J0' Y0 = 2/(pi z).
Complex bessel_j0_deriv(Complex z, const SeriesConfig& cfg = {});
Complex bessel_y0_deriv(Complex z, const SeriesConfig& cfg = {});

} // namespace hankelcos::specfun

#endif
