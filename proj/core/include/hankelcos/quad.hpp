#ifndef HANKELCOS_QUAD_HPP
#define HANKELCOS_QUAD_HPP

#include <functional>
#include <utility>
#include <vector>

#include "hankelcos/specfun.hpp"
#include "hankelcos/types.hpp"

namespace hankelcos::quad {

/// Abel-regularization schedule: damping parameters beta for the e^{-beta x}
/// factor, extrapolated polynomially to beta = 0.
struct RegularizationSchedule {
    std::vector<double> betas = {0.2, 0.1, 0.05, 0.025, 0.0125,
                                 0.00625, 0.003125, 0.0015625};
    int extrapolation_order = 4;

    void validate() const;
};

/// Partition policy for the half-line oscillatory integrals: intervals run
/// between consecutive zeros of the trigonometric factor, alternating
/// contributions are summed with nonlinear acceleration.
struct PartitionPlan {
    /// Optional explicit breakpoints (must start at 0, strictly increasing).
    /// When empty the partition is derived from the kernel's zeros.
    std::vector<double> breakpoints;
    int max_intervals = 400;
    int tail_accel_terms = 20;
    double target_abs_tol = 1e-10;

    void validate() const;
};

struct QuadratureResult {
    Complex value;
    double abs_error_estimate = 0.0;
    int intervals_used = 0;
    bool accelerated = false;
};

// ---------------------------------------------------------------------------
// Panel rules (building blocks, exposed for reuse and testing)
// ---------------------------------------------------------------------------

struct PanelResult {
    Complex value;
    double abs_error;
};

/// 15-point Gauss-Kronrod rule on [a, b] with embedded 7-point Gauss error
/// estimate.
PanelResult gauss_kronrod_15(const std::function<Complex(double)>& f, double a, double b);

/// Adaptive bisection driven by the GK15 error estimate.  Returns the best
/// value with an honest error sum; never throws on budget exhaustion.
PanelResult adaptive_gk(const std::function<Complex(double)>& f, double a, double b,
                        double abs_tol, int max_panels = 512);

/// Wynn epsilon limit of a sequence of partial sums; err_proxy receives the
/// spread of the last accelerated estimates.
Complex wynn_epsilon(const std::vector<Complex>& partial_sums, double& err_proxy);

// ---------------------------------------------------------------------------
// Generic half-line oscillatory integral
// ---------------------------------------------------------------------------

struct HalflineProblem {
    std::function<Complex(double)> f;
    /// End of the first interval (typically the first zero of the kernel).
    double first_break = 1.0;
    /// Spacing of subsequent breakpoints (typically a half period).
    double spacing = 1.0;
    /// Certified exponential decay rate of the integrand envelope (>= 0).
    /// Used for direct tail truncation bounds; 0 disables them.
    double decay_rate = 0.0;
    /// Extra subdivision budget for an integrable singularity at x = 0.
    bool singular_origin = false;
    /// Optional externally computed first-interval contribution
    /// (value, error); used by the singularity-subtracting callers.
    bool has_explicit_first = false;
    Complex first_value;
    double first_error = 0.0;
};

QuadratureResult integrate_halfline(const HalflineProblem& problem, const PartitionPlan& plan);

// ---------------------------------------------------------------------------
// Transform operations
// ---------------------------------------------------------------------------

/// Integral_0^inf e^{-beta x} H0^(2)(k x) cos(w x) dx with the logarithmic
/// endpoint singularity subtracted on the first interval (small-argument
/// Hankel model, integrated in closed form and added back).
/// beta = 0 is admissible only inside the strip |Im w| < |Im k|.
QuadratureResult regularized_L(const TransformPoint& pt, double beta,
                               const PartitionPlan& plan = {},
                               const specfun::SeriesConfig& cfg = {});

/// Polynomial extrapolation of (beta, value) samples to beta = 0 (Neville on
/// the full sample set).  order is the minimum polynomial degree the caller
/// requires; err_proxy receives the inter-order difference.
Complex extrapolate_beta(const std::vector<std::pair<double, Complex>>& values,
                         int order, double* err_proxy = nullptr);

/// Full transform L(k, w): direct beta = 0 quadrature inside the strip,
/// Abel regularization + extrapolation otherwise.
QuadratureResult transform_L(const TransformPoint& pt,
                             const RegularizationSchedule& sched = {},
                             const PartitionPlan& plan = {},
                             const specfun::SeriesConfig& cfg = {});

/// integral_0^inf e^{-beta x} cos(x) dx = beta / (1 + beta^2).
double reference_cos(double beta);

/// integral_0^inf e^{-beta x} sin(x) dx = 1 / (1 + beta^2).
double reference_sin(double beta);

/// M(beta, xi) = integral_0^inf e^{-beta x} sin(xi x) log(x) dx, first
/// quadrant (beta > 0, xi > 0).
QuadratureResult log_sin_M(double beta, double xi, const PartitionPlan& plan = {});

/// integral_0^inf e^{-beta x} cos(x) log(x) dx, evaluated directly and via
/// the integration-by-parts decomposition beta*M(beta,1) - arctan(1/beta);
/// the reported error estimate is widened to cover any gap between the two.
QuadratureResult log_cos_integral(double beta, const PartitionPlan& plan = {});

/// Self-test helper: the oscillatory engine applied to e^{-beta x} cos(w x)
/// or sin(w x) (kernel = 'c' or 's'), for comparison with the closed forms.
QuadratureResult damped_trig_quadrature(char kernel, double beta, double w,
                                        const PartitionPlan& plan = {});

} // namespace hankelcos::quad

#endif
