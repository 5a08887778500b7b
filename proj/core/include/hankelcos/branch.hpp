#ifndef HANKELCOS_BRANCH_HPP
#define HANKELCOS_BRANCH_HPP

#include "hankelcos/types.hpp"

namespace hankelcos::branch {

struct ContinuationOptions {
    /// Continuation is rejected when the straight path from w'=0 to w'=w
    /// comes closer than proximity_cutoff_rel * |k| to a branch point +-k.
    double proximity_cutoff_rel = 1e-9;
};

/// Analytic continuation of sqrt(k^2 - w'^2) along the straight segment from
/// w' = 0 (where the value is exactly k) to w' = w.
///
/// For real k and real w the value is the limit of Im k = -eps, eps -> 0+
/// (dissipative convention), so e.g. k=1, w=2 gives -i*sqrt(3).  Callers with
/// the conjugate time convention may pass Im k > 0; the limiting edge then
/// flips accordingly.
BranchedRoot branched_sqrt(Complex k, Complex w, const ContinuationOptions& opt = {});
BranchedRoot branched_sqrt(const TransformPoint& pt, const ContinuationOptions& opt = {});

/// The closed-form transform value 1 / sqrt(k^2 - w^2) on the branch above.
Complex closed_form_L(Complex k, Complex w, const ContinuationOptions& opt = {});
Complex closed_form_L(const TransformPoint& pt, const ContinuationOptions& opt = {});

/// Spectral Green's function  G~(w, y) = i/(2 sqrt(k^2-w^2)) * exp(-i sqrt(k^2-w^2) |y|),
/// same branch as branched_sqrt; bounded as |y| -> inf whenever Im k < 0.
Complex greens_spectral(Complex k, Complex w, double y, const ContinuationOptions& opt = {});
Complex greens_spectral(const TransformPoint& pt, double y, const ContinuationOptions& opt = {});

/// Brute-force variant of branched_sqrt: tracks the root by dense sampling of
/// the continuation parameter.  Slower and approximate near the cut; kept as
/// an independent cross-check of the closed-form path logic.
BranchedRoot branched_sqrt_stepped(Complex k, Complex w, int steps);

} // namespace hankelcos::branch

#endif
