#include "hankelcos/specfun.hpp"

#include <cmath>

namespace hankelcos::specfun {

namespace {

constexpr double pi = 3.14159265358979323846;

struct SeriesPair {
    Complex j0;      // sum (-1)^m q^m / (m!)^2,          q = z^2/4
    Complex hsum;    // sum_{m>=1} (-1)^{m+1} H_m q^m/(m!)^2
    Complex j0_d;    // d/dz of j0
    Complex hsum_d;  // d/dz of hsum
};

// Ascending series shared by J0 and Y0 (and their derivatives).
SeriesPair ascending(Complex z, const SeriesConfig& cfg) {
    const Complex q = 0.25 * z * z;
    Complex term(1.0, 0.0); // (-1)^m q^m/(m!)^2
    Complex j0 = term;
    Complex hsum(0.0, 0.0);
    Complex j0_dsum(0.0, 0.0);   // sum_{m>=1} m (-1)^m q^{m-1}/(m!)^2
    Complex hsum_dsum(0.0, 0.0); // sum_{m>=1} m (-1)^{m+1} H_m q^{m-1}/(m!)^2
    double harmonic = 0.0;
    double maxmag = 1.0;
    bool converged = false;
    for (int m = 1; m <= cfg.series_terms_max; ++m) {
        const Complex term_over_q = term * (-1.0 / (static_cast<double>(m) * m));
        term = term_over_q * q;
        harmonic += 1.0 / m;
        j0 += term;
        hsum -= harmonic * term; // (-1)^{m+1} = -(-1)^m
        j0_dsum += static_cast<double>(m) * term_over_q;
        hsum_dsum -= static_cast<double>(m) * harmonic * term_over_q;
        maxmag = std::max(maxmag, std::abs(term));
        if (std::abs(term) < 1e-17 * maxmag && m > 3) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergence("ascending Bessel series did not converge within series_terms_max terms");
    SeriesPair out;
    out.j0 = j0;
    out.hsum = hsum;
    out.j0_d = 0.5 * z * j0_dsum;     // d/dz q^m = m q^{m-1} z/2
    out.hsum_d = 0.5 * z * hsum_dsum;
    return out;
}

struct AsymptoticTerms {
    Complex h1, h2;     // H0^(1), H0^(2)
    Complex h1_d, h2_d; // derivatives
};

// Hankel asymptotic expansion, for Re z >= 0 only (callers reflect first).
// Coefficient recurrence: a_{m+1} = -a_m (2m+1)^2 / (8(m+1)).
AsymptoticTerms hankel_asymptotic(Complex z, const SeriesConfig& cfg) {
    const Complex iz = 1.0 / z;
    Complex s_plus(0.0), s_minus(0.0);   // sums of (+-i)^m a_m z^-m
    Complex sd_plus(0.0), sd_minus(0.0); // their d/dz
    double a = 1.0;
    Complex zp(1.0, 0.0); // z^-m
    for (int m = 0; m < cfg.asymptotic_terms; ++m) {
        Complex ip; // i^m cycles 1, i, -1, -i
        switch (m & 3) {
            case 0: ip = {1.0, 0.0}; break;
            case 1: ip = {0.0, 1.0}; break;
            case 2: ip = {-1.0, 0.0}; break;
            default: ip = {0.0, -1.0}; break;
        }
        const Complex tp = ip * a * zp;
        const Complex tm = std::conj(ip) * a * zp; // (-i)^m = conj(i^m)
        s_plus += tp;
        s_minus += tm;
        sd_plus -= static_cast<double>(m) * tp * iz;
        sd_minus -= static_cast<double>(m) * tm * iz;
        a *= -(2.0 * m + 1.0) * (2.0 * m + 1.0) / (8.0 * (m + 1.0));
        zp *= iz;
    }
    const Complex amp = std::sqrt(2.0 / (pi * z));
    const Complex phase = z - 0.25 * pi;
    const Complex ep = std::exp(I * phase);
    const Complex em = std::exp(-I * phase);
    AsymptoticTerms out;
    out.h1 = amp * ep * s_plus;
    out.h2 = amp * em * s_minus;
    // d/dz [amp e^{+-i phase} S] = amp e^{+-i phase} (+-i S - S/(2z) + S')
    out.h1_d = amp * ep * (I * s_plus - 0.5 * s_plus * iz + sd_plus);
    out.h2_d = amp * em * (-I * s_minus - 0.5 * s_minus * iz + sd_minus);
    return out;
}

bool use_series(Complex z, const SeriesConfig& cfg) {
    return std::abs(z) < cfg.crossover_radius;
}

Complex log_half(Complex z) {
    return std::log(0.5 * z);
}

// Continuation side across the cut on the negative real axis, matching the
// principal logarithm: atan2(+0, x<0) = +pi, atan2(-0, x<0) = -pi.
double upper_side(Complex z) {
    return std::signbit(z.imag()) ? -1.0 : +1.0;
}

struct JY {
    Complex j0, y0, j0_d, y0_d;
};

JY eval_jy(Complex z, const SeriesConfig& cfg) {
    cfg.validate();
    if (z == Complex(0.0, 0.0))
        throw DomainError("Y0 is singular at z = 0");
    if (use_series(z, cfg)) {
        const SeriesPair s = ascending(z, cfg);
        const Complex lg = log_half(z) + euler_gamma;
        JY out;
        out.j0 = s.j0;
        out.j0_d = s.j0_d;
        out.y0 = (2.0 / pi) * (lg * s.j0 + s.hsum);
        out.y0_d = (2.0 / pi) * (s.j0 / z + lg * s.j0_d + s.hsum_d);
        return out;
    }
    if (z.real() >= 0.0) {
        const AsymptoticTerms a = hankel_asymptotic(z, cfg);
        JY out;
        out.j0 = 0.5 * (a.h1 + a.h2);
        out.y0 = (a.h1 - a.h2) / (2.0 * I);
        out.j0_d = 0.5 * (a.h1_d + a.h2_d);
        out.y0_d = (a.h1_d - a.h2_d) / (2.0 * I);
        return out;
    }
    // Re z < 0: reflect into the right half-plane.  J0 is even; Y0 picks up
    // +-2i J0 depending on the side of the cut.
    const Complex u = -z;
    const AsymptoticTerms a = hankel_asymptotic(u, cfg);
    const Complex j0u = 0.5 * (a.h1 + a.h2);
    const Complex y0u = (a.h1 - a.h2) / (2.0 * I);
    const Complex j0u_d = 0.5 * (a.h1_d + a.h2_d);
    const Complex y0u_d = (a.h1_d - a.h2_d) / (2.0 * I);
    const double sg = upper_side(z);
    JY out;
    out.j0 = j0u;
    out.y0 = y0u + sg * 2.0 * I * j0u;
    out.j0_d = -j0u_d;
    out.y0_d = -(y0u_d + sg * 2.0 * I * j0u_d);
    return out;
}

} // namespace

Complex bessel_j0(Complex z, const SeriesConfig& cfg) {
    cfg.validate();
    if (z == Complex(0.0, 0.0))
        return {1.0, 0.0};
    if (use_series(z, cfg))
        return ascending(z, cfg).j0;
    const Complex u = z.real() >= 0.0 ? z : -z;
    const AsymptoticTerms a = hankel_asymptotic(u, cfg);
    return 0.5 * (a.h1 + a.h2);
}

Complex bessel_y0(Complex z, const SeriesConfig& cfg) {
    return eval_jy(z, cfg).y0;
}

Complex bessel_j0_deriv(Complex z, const SeriesConfig& cfg) {
    cfg.validate();
    if (z == Complex(0.0, 0.0))
        return {0.0, 0.0};
    if (use_series(z, cfg))
        return ascending(z, cfg).j0_d;
    if (z.real() >= 0.0) {
        const AsymptoticTerms a = hankel_asymptotic(z, cfg);
        return 0.5 * (a.h1_d + a.h2_d);
    }
    const AsymptoticTerms a = hankel_asymptotic(-z, cfg);
    return -0.5 * (a.h1_d + a.h2_d);
}

Complex bessel_y0_deriv(Complex z, const SeriesConfig& cfg) {
    return eval_jy(z, cfg).y0_d;
}

Complex hankel2_0(Complex z, const SeriesConfig& cfg) {
    cfg.validate();
    if (z == Complex(0.0, 0.0))
        throw DomainError("H0^(2) is singular at z = 0");
    // H0^(2) is recessive for Im z < 0: the ascending J0 - i Y0 combination
    // cancels ~e^{2|Im z|} digits there, so deeply below the axis the
    // asymptotic form is the accurate one even inside the crossover radius.
    const bool deep_lower = z.imag() < -0.75 * cfg.crossover_radius;
    if (use_series(z, cfg) && !deep_lower) {
        const SeriesPair s = ascending(z, cfg);
        const Complex lg = log_half(z) + euler_gamma;
        return s.j0 - I * (2.0 / pi) * (lg * s.j0 + s.hsum);
    }
    if (z.real() >= 0.0)
        return hankel_asymptotic(z, cfg).h2;
    // Connection formulas across Re z < 0, consistent with the principal log:
    //   lower side:  H0^(2)(u e^{-i pi}) = -H0^(1)(u)
    //   upper side:  H0^(2)(u e^{+i pi}) =  H0^(1)(u) + 2 H0^(2)(u)
    const AsymptoticTerms a = hankel_asymptotic(-z, cfg);
    if (upper_side(z) < 0.0)
        return -a.h1;
    return a.h1 + 2.0 * a.h2;
}

Complex hankel1_0(Complex z, const SeriesConfig& cfg) {
    return std::conj(hankel2_0(std::conj(z), cfg));
}

} // namespace hankelcos::specfun
