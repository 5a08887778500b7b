#ifndef HANKELCOS_ROUTE_ODE_HPP
#define HANKELCOS_ROUTE_ODE_HPP

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "hankelcos/quad.hpp"
#include "hankelcos/types.hpp"

namespace hankelcos::ode {

/// The scaled argument zeta = k/w; {0, +1, -1} are the regular singular
/// points of the reduced ODE and are excluded.
struct ScaledArgument {
    Complex zeta;

    explicit ScaledArgument(Complex z) : zeta(z) {
        if (z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0) || z == Complex(-1.0, 0.0))
            throw DomainError("zeta must avoid the singular points {0, +1, -1}");
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("zeta must be finite");
    }
};

/// w-asymptotic constants of the reduced ODE's general solution
///   F(zeta) = A/sqrt(1-zeta^2) + B/sqrt(1-zeta^2) log(zeta/(1+sqrt(1-zeta^2))).
struct ConstantFitAB {
    Complex A;
    Complex B;
    double residual_norm = 0.0;
    int sample_count = 0;
};

/// Constants of N(eta) = (C + D eta - log(1+eta^2)/2 - eta arctan(eta))/(1+eta^2),
/// resolved from a damping pair (mu, nu).
struct ConstantFitCD {
    double C = 0.0;
    double D = 0.0;
    std::pair<double, double> pair{0.0, 0.0};
    double conditioning = 0.0;
};

struct ConsistencyReport {
    std::vector<ConstantFitCD> fits;
    std::vector<std::pair<double, double>> degenerate_pairs;
    double max_dev_C = 0.0;
    double max_dev_D = 0.0;
    bool single_pair_warning = false;
};

/// sqrt(1 - zeta^2) continued from zeta' = 0 (value 1) along the straight
/// segment to zeta; identical branch plumbing to branch::branched_sqrt, so
/// w * sqrt(1-zeta^2) with zeta = k/w matches i * sqrt(k^2 - w^2).
Complex sqrt_one_minus_sq(Complex zeta);

/// General solution of the reduced ODE; DomainError at zeta in {0, +-1}.
Complex F_general(Complex zeta, Complex A, Complex B);
Complex F_general(const ScaledArgument& zeta, Complex A, Complex B);

/// Residual of (zeta - zeta^3) F'' + (1 - 4 zeta^2) F' - 2 zeta F with
/// 5-point central-difference derivatives.
Complex ode5_residual(const std::function<Complex(Complex)>& F, Complex zeta, double h);

/// Residual of the condensed form ((zeta - zeta^3) F)'' + ((2 zeta^2 - 1) F)',
/// algebraically identical to ode5_residual up to stencil error.
Complex ode6_residual(const std::function<Complex(Complex)>& F, Complex zeta, double h);

/// Least-squares fit of samples (w_i, L_i) to L ~ A/w + (B/w) log(k/(2w)).
ConstantFitAB fit_AB_data(Complex k, const std::vector<std::pair<double, Complex>>& samples);

/// Evaluates transform_L at the given real w samples and fits (A, B).
ConstantFitAB fit_AB(const Wavenumber& k, const std::vector<double>& w_samples,
                     const quad::RegularizationSchedule& sched = {},
                     const quad::PartitionPlan& plan = {},
                     const specfun::SeriesConfig& cfg = {});

/// N(eta) = integral_0^inf e^{-eta x} sin(x) log(x) dx by quadrature.
quad::QuadratureResult N_numeric(double eta, const quad::PartitionPlan& plan = {});

/// Closed form of N given the constants C and D.
double N_closed(double eta, double C, double D);

/// Residual of ((1+eta^2) N)'' = (1+eta^2)^{-1} - 4 (1+eta^2)^{-2} for an
/// arbitrary N supplied as a callable (numeric interpolants, corrupted forms).
double ode16_residual_of(const std::function<double(double)>& N, double eta, double h);

/// Same residual for N_closed(.; C, D); independent of (C, D), which lie in
/// the kernel of the double derivative.
double ode16_residual(double C, double D, double eta, double h);

/// Explicit inverse of [[1, mu], [1, nu]] scaled by 1/(nu - mu), row-major.
std::array<double, 4> cd_inverse_matrix(double mu, double nu);

/// Resolve C and D from quadrature values N(mu), N(nu).
ConstantFitCD solve_CD(double mu, double nu, const quad::PartitionPlan& plan = {});

/// Run solve_CD per pair and report the cross-pair spread of C and D;
/// degenerate pairs are flagged and skipped rather than fatal.
ConsistencyReport cd_self_consistency(const std::vector<std::pair<double, double>>& pairs,
                                      const quad::PartitionPlan& plan = {});

} // namespace hankelcos::ode

#endif
