#ifndef HANKELCOS_ROUTE_GREEN_HPP
#define HANKELCOS_ROUTE_GREEN_HPP

#include <vector>

#include "hankelcos/branch.hpp"
#include "hankelcos/specfun.hpp"
#include "hankelcos/types.hpp"

namespace hankelcos::green {

/// Rectangular evaluation grid for discrete Helmholtz residuals.
struct GridSpec {
    double x_min, x_max, y_min, y_max;
    int nx = 5, ny = 5;
    bool excludes_origin = true;

    void validate() const;
    double hx() const { return (x_max - x_min) / (nx - 1); }
    double hy() const { return (y_max - y_min) / (ny - 1); }
};

/// One evaluated sample of the Green's function; rho is stored exactly as
/// derived from (x, y).
struct GreensSample {
    double x = 0.0;
    double y = 0.0;
    double rho = 0.0;
    Complex value;
};

/// Free-space 2-D Helmholtz Green's function G(x, y) = i H0^(2)(k rho)/4.
Complex greens_direct(double x, double y, const Wavenumber& k,
                      const specfun::SeriesConfig& cfg = {});

/// greens_direct bundled with its evaluation point.
GreensSample greens_sample(double x, double y, const Wavenumber& k,
                           const specfun::SeriesConfig& cfg = {});

struct HelmholtzResidual {
    double hx = 0.0, hy = 0.0;
    /// max |(discrete nabla^2 + k^2) G| over evaluated interior points.
    double max_abs = 0.0;
    /// Same points, stencil spacing halved.
    double refined_max_abs = 0.0;
    /// max_abs / refined_max_abs; ~4 for the order-2 stencil.
    double refinement_ratio = 0.0;
    std::vector<double> residuals; // per evaluated point
    int points_evaluated = 0;
};

/// 5-point-stencil residual of (nabla^2 + k^2) G on the grid interior,
/// excluding a 2-spacing neighborhood of the origin.  Throws GridTooCoarse
/// when halving the stencil spacing shrinks the residual by less than 3x.
HelmholtzResidual helmholtz_residual(const Wavenumber& k, const GridSpec& grid,
                                     const specfun::SeriesConfig& cfg = {});

struct InverseTransformResult {
    Complex value;
    double tail_bound = 0.0;
    double quad_error = 0.0;
    int panels = 0;
};

/// (1/2pi) integral_{-w_max}^{w_max} e^{-i w x} G~(w, y) dw on n composite
/// GK15 panels, with semicircular detours over the branch points when the
/// contour clearance |Im k| is small.  Requires Im k < 0 and y != 0 (the
/// y = 0 integrand decays only like 1/|w|).
InverseTransformResult inverse_transform_G(const Wavenumber& k, double x, double y,
                                           double w_max, int n, double tail_tol = 1e-5);

struct TransformIdentity {
    Complex lhs; // -2i G~(w, 0)
    Complex rhs; // closed-form 1/sqrt(k^2 - w^2)
    double gap = 0.0;
};

/// The spectral identity: -2i G~(w, 0) equals the closed-form transform.
TransformIdentity transform_identity(const TransformPoint& pt);

} // namespace hankelcos::green

#endif
