#include "hankelcos/route_green.hpp"

#include "hankelcos/quad.hpp"

#include <cmath>
#include <limits>

namespace hankelcos::green {

namespace {

constexpr double pi = 3.14159265358979323846;

} // namespace

void GridSpec::validate() const {
    if (nx < 5 || ny < 5)
        throw DomainError("grid needs nx, ny >= 5");
    if (!(x_max > x_min) || !(y_max > y_min))
        throw DomainError("grid extents must be nonempty");
    if (excludes_origin &&
        x_min <= 0.0 && x_max >= 0.0 && y_min <= 0.0 && y_max >= 0.0)
        throw DomainError("grid marked excludes_origin but the box contains the source point");
}

Complex greens_direct(double x, double y, const Wavenumber& k, const specfun::SeriesConfig& cfg) {
    const double rho = std::hypot(x, y);
    if (rho == 0.0)
        throw DomainError("Green's function is singular at the source point");
    return 0.25 * I * specfun::hankel2_0(k.k * rho, cfg);
}

GreensSample greens_sample(double x, double y, const Wavenumber& k,
                           const specfun::SeriesConfig& cfg) {
    GreensSample s;
    s.x = x;
    s.y = y;
    s.rho = std::hypot(x, y);
    s.value = greens_direct(x, y, k, cfg);
    return s;
}

HelmholtzResidual helmholtz_residual(const Wavenumber& k, const GridSpec& grid,
                                     const specfun::SeriesConfig& cfg) {
    grid.validate();
    const double hx = grid.hx();
    const double hy = grid.hy();
    const double exclusion = 2.0 * std::max(hx, hy);
    const Complex k2 = k.k * k.k;

    auto G = [&](double x, double y) { return greens_direct(x, y, k, cfg); };

    HelmholtzResidual out;
    out.hx = hx;
    out.hy = hy;

    for (int j = 1; j + 1 < grid.ny; ++j) {
        const double y = grid.y_min + j * hy;
        for (int i = 1; i + 1 < grid.nx; ++i) {
            const double x = grid.x_min + i * hx;
            if (std::hypot(x, y) < exclusion)
                continue;
            const Complex g0 = G(x, y);
            const Complex lap = (G(x + hx, y) + G(x - hx, y) - 2.0 * g0) / (hx * hx) +
                                (G(x, y + hy) + G(x, y - hy) - 2.0 * g0) / (hy * hy);
            const double r = std::abs(lap + k2 * g0);
            out.residuals.push_back(r);
            out.max_abs = std::max(out.max_abs, r);

            // Same points with the stencil spacing halved, for the order check.
            const double qx = 0.5 * hx, qy = 0.5 * hy;
            const Complex lap2 = (G(x + qx, y) + G(x - qx, y) - 2.0 * g0) / (qx * qx) +
                                 (G(x, y + qy) + G(x, y - qy) - 2.0 * g0) / (qy * qy);
            out.refined_max_abs = std::max(out.refined_max_abs, std::abs(lap2 + k2 * g0));
        }
    }
    out.points_evaluated = static_cast<int>(out.residuals.size());
    if (out.points_evaluated == 0)
        throw DomainError("no grid points outside the origin exclusion zone");

    out.refinement_ratio =
        out.refined_max_abs > 0.0 ? out.max_abs / out.refined_max_abs : 0.0;
    if (out.refinement_ratio < 3.0)
        throw GridTooCoarse("halving the stencil spacing shrank the residual by less than 3x");
    return out;
}

InverseTransformResult inverse_transform_G(const Wavenumber& k, double x, double y,
                                           double w_max, int n, double tail_tol) {
    if (!(k.k.imag() < 0.0))
        throw DomainError("inverse_transform_G requires Im k < 0 strictly");
    if (n < 64)
        throw DomainError("inverse_transform_G requires n >= 64 panels");
    const double kmag = std::abs(k.k);
    if (!(w_max > 2.0 * kmag))
        throw DomainError("w_max must exceed 2|k|");

    // Tail of the |w| > w_max remainder: |e^{-i sqrt(k^2-w^2)|y|}| decays like
    // e^{-sqrt(w^2-|k|^2)|y|}, so both tails together are below
    // exp(-a|y|)/(pi a |y|), a = sqrt(w_max^2 - |k|^2).  For y = 0 there is no
    // exponential decay and the truncation cannot be certified.
    const double ay = std::abs(y);
    double tail;
    if (ay > 0.0) {
        const double a = std::sqrt(w_max * w_max - kmag * kmag);
        tail = std::exp(-a * ay) / (pi * a * ay);
    } else {
        tail = std::numeric_limits<double>::infinity();
    }
    if (!(tail <= tail_tol))
        throw TailNotConverged("inverse-transform tail bound exceeds the requested tolerance");

    auto integrand = [&](Complex w) -> Complex {
        return std::exp(-I * w * x) * branch::greens_spectral(k.k, w, y);
    };

    // Contour: the real segment [-w_max, w_max]; when the branch points sit
    // close under the axis, small semicircular detours (radius 0.1|Im k|)
    // into the upper half-plane keep the quadrature well conditioned.
    const double clearance = std::abs(k.k.imag());
    const bool detour = clearance < 0.05 * kmag;
    const double r_det = 0.1 * clearance;

    Complex total(0.0, 0.0);
    double qerr = 0.0;
    int panels_used = 0;

    auto integrate_segment = [&](double a, double b) {
        if (!(b > a)) return;
        const int m = std::max(1, static_cast<int>(std::ceil((b - a) / (2.0 * w_max) * n)));
        for (int j = 0; j < m; ++j) {
            const double pa = a + (b - a) * j / m;
            const double pb = a + (b - a) * (j + 1) / m;
            auto f = [&](double t) { return integrand(Complex(t, 0.0)); };
            quad::PanelResult r = quad::adaptive_gk(f, pa, pb, 1e-12, 64);
            total += r.value;
            qerr += r.abs_error;
            ++panels_used;
        }
    };

    if (!detour) {
        integrate_segment(-w_max, w_max);
    } else {
        const double c = k.k.real();
        // Upper semicircles around w = -c and w = +c.  The left-to-right
        // traversal runs theta from pi to 0, i.e. minus the 0..pi integral.
        auto integrate_arc = [&](double center) {
            auto f = [&](double theta) -> Complex {
                const Complex w = Complex(center, 0.0) + r_det * std::exp(I * theta);
                const Complex dw = I * r_det * std::exp(I * theta);
                return integrand(w) * dw;
            };
            quad::PanelResult r = quad::adaptive_gk(f, 0.0, pi, 1e-12, 64);
            total -= r.value;
            qerr += r.abs_error;
            ++panels_used;
        };
        integrate_segment(-w_max, -c - r_det);
        integrate_arc(-c);
        integrate_segment(-c + r_det, c - r_det);
        integrate_arc(c);
        integrate_segment(c + r_det, w_max);
    }

    InverseTransformResult out;
    out.value = total / (2.0 * pi);
    out.tail_bound = tail;
    out.quad_error = qerr / (2.0 * pi);
    out.panels = panels_used;
    return out;
}

TransformIdentity transform_identity(const TransformPoint& pt) {
    TransformIdentity out;
    out.lhs = -2.0 * I * branch::greens_spectral(pt, 0.0);
    out.rhs = branch::closed_form_L(pt);
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

} // namespace hankelcos::green
