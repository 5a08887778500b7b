#ifndef HANKELCOS_TYPES_HPP
#define HANKELCOS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace hankelcos {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Error hierarchy.  Every failure mode of the library maps to one of these;
// the CLI translates them to exit statuses.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (z=0 for Y0, origin of the Green's
/// function, invalid configuration values, ...).
struct DomainError : Error {
    using Error::Error;
};

/// The continuation path (or the evaluation point itself) comes within the
/// configured cutoff of a branch point w = +-k.
struct BranchPointProximity : Error {
    using Error::Error;
};

/// A series or quadrature failed to reach its tolerance within budget.
struct NonConvergence : Error {
    using Error::Error;
};

/// A linear system or extrapolation is too ill-conditioned to trust.
struct IllConditioned : Error {
    using Error::Error;
};

/// A finite-difference stencil would step onto a singular point.
struct StencilDomainError : Error {
    using Error::Error;
};

/// The two damping parameters of a C/D solve coincide (singular 2x2 system).
struct DegeneratePair : Error {
    using Error::Error;
};

/// Grid refinement failed to shrink the discrete Helmholtz residual.
struct GridTooCoarse : Error {
    using Error::Error;
};

/// The truncated inverse-transform tail bound exceeds the requested tolerance.
struct TailNotConverged : Error {
    using Error::Error;
};

/// Report emission failed (filesystem).
struct IoError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Wave number under the exp(+i w t) time convention: Re k > 0, Im k <= 0.
/// A nonpositive imaginary part models dissipation and makes the transform
/// integrand decay; the conjugate (first-kind) convention is reached through
/// conjugation identities rather than by relaxing this invariant.
struct Wavenumber {
    Complex k;

    explicit Wavenumber(Complex value) : k(value) {
        if (!(k.real() > 0.0))
            throw DomainError("Re k must be positive");
        if (!(k.imag() <= 0.0))
            throw DomainError("Im k must be nonpositive");
        if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
            throw DomainError("k must be finite");
    }
};

/// A (k, w) evaluation point of the transform L(k, w).
struct TransformPoint {
    Wavenumber k;
    Complex w;

    TransformPoint(Wavenumber k_, Complex w_) : k(k_), w(w_) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw DomainError("w must be finite");
        if (w == k.k || w == -k.k)
            throw DomainError("w must not coincide with a branch point +-k");
    }

    /// True iff |Im w| < |Im k|: the strip where the quadrature converges
    /// absolutely even at beta = 0.
    bool in_strip() const {
        return std::abs(w.imag()) < std::abs(k.k.imag());
    }
};

/// Result of the analytic continuation of sqrt(k^2 - w^2) from w' = 0.
struct BranchedRoot {
    Complex value;
    /// Number of sheet switches relative to the principal square root
    /// detected along the straight continuation segment (0 or 1 for a
    /// straight path).
    int path_windings = 0;
};

} // namespace hankelcos

#endif
