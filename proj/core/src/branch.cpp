#include "hankelcos/branch.hpp"

#include <algorithm>
#include <cmath>

namespace hankelcos::branch {

namespace {

void check_wavenumber(Complex k) {
    if (!(k.real() > 0.0))
        throw DomainError("Re k must be positive");
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
        throw DomainError("k must be finite");
}

// Distance from point p to the segment [0, w].
double dist_to_segment(Complex w, Complex p) {
    const double ww = std::norm(w);
    if (ww == 0.0)
        return std::abs(p);
    double t = (p.real() * w.real() + p.imag() * w.imag()) / ww;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - t * w);
}

// The edge of the cut used when the continuation lands exactly on the
// negative real axis: the Im k = -eps limit selects the lower edge, the
// conjugate convention (Im k > 0) the upper edge.
double edge_sign(Complex k) {
    return k.imag() > 0.0 ? +1.0 : -1.0;
}

Complex sqrt_on_cut(double re_g, Complex k) {
    return Complex(0.0, edge_sign(k) * std::sqrt(-re_g));
}

void check_proximity(Complex k, Complex w, const ContinuationOptions& opt) {
    const double cutoff = opt.proximity_cutoff_rel * std::abs(k);
    double d;
    if (k.imag() == 0.0 && w.imag() == 0.0) {
        // Real path under the eps-limit convention: the branch points sit
        // just below the path, so only endpoint proximity is ill-conditioned.
        d = std::min(std::abs(w - k), std::abs(w + k));
    } else {
        d = std::min(dist_to_segment(w, k), dist_to_segment(w, -k));
    }
    if (d < cutoff)
        throw BranchPointProximity("continuation path within cutoff of a branch point w = +-k");
}

} // namespace

BranchedRoot branched_sqrt(Complex k, Complex w, const ContinuationOptions& opt) {
    check_wavenumber(k);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw DomainError("w must be finite");
    check_proximity(k, w, opt);

    // Under u = t^2 the radicand g(t) = k^2 - t^2 w^2 traces the straight
    // segment from a = k^2 to b = k^2 - w^2, so cut crossings are exact.
    const Complex a = k * k;
    const Complex b = a - w * w;

    BranchedRoot out;

    if (a.imag() == 0.0 && b.imag() == 0.0) {
        // k real and w^2 real: fully real radicand path.  Re(a) > 0 always
        // (Re k > 0), so the only question is the sign of b.
        out.value = b.real() < 0.0 ? sqrt_on_cut(b.real(), k)
                                   : Complex(std::sqrt(b.real()), 0.0);
        out.path_windings = 0;
        return out;
    }

    int crossings = 0;
    if (a.imag() != 0.0 && b.imag() != 0.0 && (a.imag() > 0.0) != (b.imag() > 0.0)) {
        const double u = a.imag() / (a.imag() - b.imag()); // in (0,1)
        const double re_cross = a.real() + u * (b.real() - a.real());
        if (re_cross < 0.0)
            crossings = 1;
        else if (re_cross == 0.0)
            throw BranchPointProximity("continuation path passes through a branch point");
    }

    if (b.imag() == 0.0 && b.real() < 0.0) {
        // Endpoint lands on the cut; the approach side (sign of Im a) decides
        // the edge.  No interior crossing is possible on a straight segment.
        const double side = a.imag() < 0.0 ? -1.0 : +1.0;
        out.value = Complex(0.0, side * std::sqrt(-b.real()));
        out.path_windings = 0;
        return out;
    }

    Complex principal = std::sqrt(b);
    out.value = crossings ? -principal : principal;
    out.path_windings = crossings;
    return out;
}

BranchedRoot branched_sqrt(const TransformPoint& pt, const ContinuationOptions& opt) {
    return branched_sqrt(pt.k.k, pt.w, opt);
}

Complex closed_form_L(Complex k, Complex w, const ContinuationOptions& opt) {
    return 1.0 / branched_sqrt(k, w, opt).value;
}

Complex closed_form_L(const TransformPoint& pt, const ContinuationOptions& opt) {
    return closed_form_L(pt.k.k, pt.w, opt);
}

Complex greens_spectral(Complex k, Complex w, double y, const ContinuationOptions& opt) {
    const Complex s = branched_sqrt(k, w, opt).value;
    return I / (2.0 * s) * std::exp(-I * s * std::abs(y));
}

Complex greens_spectral(const TransformPoint& pt, double y, const ContinuationOptions& opt) {
    return greens_spectral(pt.k.k, pt.w, y, opt);
}

BranchedRoot branched_sqrt_stepped(Complex k, Complex w, int steps) {
    check_wavenumber(k);
    if (steps < 2)
        throw DomainError("stepped continuation needs at least 2 steps");

    const Complex a = k * k;
    const Complex w2 = w * w;
    Complex s = k; // value at t = 0
    int windings = 0;
    bool prev_minus = false;
    for (int j = 1; j <= steps; ++j) {
        const double t = static_cast<double>(j) / steps;
        const Complex g = a - (t * t) * w2;
        Complex principal;
        if (g.imag() == 0.0 && g.real() < 0.0)
            principal = sqrt_on_cut(g.real(), k);
        else
            principal = std::sqrt(g);
        const bool minus = std::abs(principal - s) > std::abs(principal + s);
        if (minus != prev_minus) {
            ++windings;
            prev_minus = minus;
        }
        s = minus ? -principal : principal;
    }
    return BranchedRoot{s, windings};
}

} // namespace hankelcos::branch
