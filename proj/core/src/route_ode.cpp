#include "hankelcos/route_ode.hpp"

#include "hankelcos/branch.hpp"

#include <algorithm>
#include <cmath>

namespace hankelcos::ode {

namespace {

bool singular_zeta(Complex z) {
    return z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0) || z == Complex(-1.0, 0.0);
}

struct Stencil5 {
    Complex fm2, fm1, f0, fp1, fp2;
    double h;

    Complex d1() const { return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h); }
    Complex d2() const {
        return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    }
};

Stencil5 sample5(const std::function<Complex(Complex)>& F, Complex z, double h) {
    for (int s : {-2, -1, 0, 1, 2})
        if (singular_zeta(z + static_cast<double>(s) * h))
            throw StencilDomainError("stencil point hits a singular zeta");
    return Stencil5{F(z - 2.0 * h), F(z - h), F(z), F(z + h), F(z + 2.0 * h), h};
}

} // namespace

Complex sqrt_one_minus_sq(Complex zeta) {
    // sqrt(k^2 - w^2) with k = 1, w = zeta is exactly sqrt(1 - zeta^2) on the
    // same continuation branch.
    return branch::branched_sqrt(Complex(1.0, 0.0), zeta).value;
}

Complex F_general(Complex zeta, Complex A, Complex B) {
    if (singular_zeta(zeta))
        throw DomainError("F_general is singular at zeta in {0, +-1}");
    const Complex s = sqrt_one_minus_sq(zeta);
    Complex out = A / s;
    if (B != Complex(0.0, 0.0))
        out += (B / s) * std::log(zeta / (1.0 + s));
    return out;
}

Complex F_general(const ScaledArgument& zeta, Complex A, Complex B) {
    return F_general(zeta.zeta, A, B);
}

Complex ode5_residual(const std::function<Complex(Complex)>& F, Complex zeta, double h) {
    if (!(h > 0.0))
        throw StencilDomainError("stencil step must be positive");
    const Stencil5 st = sample5(F, zeta, h);
    return (zeta - zeta * zeta * zeta) * st.d2() + (1.0 - 4.0 * zeta * zeta) * st.d1() -
           2.0 * zeta * st.f0;
}

Complex ode6_residual(const std::function<Complex(Complex)>& F, Complex zeta, double h) {
    if (!(h > 0.0))
        throw StencilDomainError("stencil step must be positive");
    auto g1 = [&](Complex z) { return (z - z * z * z) * F(z); };
    auto g2 = [&](Complex z) { return (2.0 * z * z - 1.0) * F(z); };
    const Stencil5 s1 = sample5(g1, zeta, h);
    const Stencil5 s2 = sample5(g2, zeta, h);
    return s1.d2() + s2.d1();
}

ConstantFitAB fit_AB_data(Complex k, const std::vector<std::pair<double, Complex>>& samples) {
    if (samples.size() < 2)
        throw IllConditioned("fit_AB needs at least 2 samples");

    // Basis: phi1 = 1/w, phi2 = log(k/(2w))/w; complex least squares via the
    // 2x2 Hermitian normal equations.
    double g11 = 0.0, g22 = 0.0;
    Complex g12(0.0, 0.0);
    Complex b1(0.0, 0.0), b2(0.0, 0.0);
    for (const auto& [w, L] : samples) {
        if (!(w > 0.0))
            throw DomainError("fit samples need w > 0");
        const Complex p1(1.0 / w, 0.0);
        const Complex p2 = std::log(k / (2.0 * w)) / w;
        g11 += std::norm(p1);
        g22 += std::norm(p2);
        g12 += std::conj(p1) * p2;
        b1 += std::conj(p1) * L;
        b2 += std::conj(p2) * L;
    }
    const double det = g11 * g22 - std::norm(g12);
    const double tr = g11 + g22;
    if (!(det > 0.0) || tr * tr > 4.0 * det * 1e12)
        throw IllConditioned("fit_AB basis columns are near-collinear on the sample set");

    ConstantFitAB fit;
    fit.A = (g22 * b1 - g12 * b2) / det;
    fit.B = (g11 * b2 - std::conj(g12) * b1) / det;
    fit.sample_count = static_cast<int>(samples.size());
    double r2 = 0.0;
    for (const auto& [w, L] : samples) {
        const Complex p1(1.0 / w, 0.0);
        const Complex p2 = std::log(k / (2.0 * w)) / w;
        r2 += std::norm(L - fit.A * p1 - fit.B * p2);
    }
    fit.residual_norm = std::sqrt(r2);
    return fit;
}

ConstantFitAB fit_AB(const Wavenumber& k, const std::vector<double>& w_samples,
                     const quad::RegularizationSchedule& sched, const quad::PartitionPlan& plan,
                     const specfun::SeriesConfig& cfg) {
    if (w_samples.size() < 2)
        throw IllConditioned("fit_AB needs at least 2 samples");
    std::vector<std::pair<double, Complex>> samples;
    samples.reserve(w_samples.size());
    for (double w : w_samples) {
        const TransformPoint pt(k, Complex(w, 0.0));
        samples.emplace_back(w, quad::transform_L(pt, sched, plan, cfg).value);
    }
    return fit_AB_data(k.k, samples);
}

quad::QuadratureResult N_numeric(double eta, const quad::PartitionPlan& plan) {
    if (!(eta > 0.0))
        throw DomainError("N_numeric requires eta > 0");
    return quad::log_sin_M(eta, 1.0, plan);
}

double N_closed(double eta, double C, double D) {
    if (!(eta >= 0.0))
        throw DomainError("N_closed requires eta >= 0");
    const double e2 = eta * eta;
    return (C + D * eta - 0.5 * std::log1p(e2) - eta * std::atan(eta)) / (1.0 + e2);
}

double ode16_residual_of(const std::function<double(double)>& N, double eta, double h) {
    if (!(h > 0.0) || !(eta - 2.0 * h > 0.0))
        throw StencilDomainError("ode16 stencil requires eta - 2h > 0");
    auto u = [&](double e) { return (1.0 + e * e) * N(e); };
    const double um2 = u(eta - 2.0 * h), um1 = u(eta - h), u0 = u(eta), up1 = u(eta + h),
                 up2 = u(eta + 2.0 * h);
    const double d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
    const double q = 1.0 + eta * eta;
    return d2 - (1.0 / q - 4.0 / (q * q));
}

double ode16_residual(double C, double D, double eta, double h) {
    return ode16_residual_of([&](double e) { return N_closed(e, C, D); }, eta, h);
}

std::array<double, 4> cd_inverse_matrix(double mu, double nu) {
    const double d = nu - mu;
    if (d == 0.0)
        throw DegeneratePair("mu and nu must differ");
    return {nu / d, -mu / d, -1.0 / d, 1.0 / d};
}

namespace {

double cd_rhs(double eta, const quad::PartitionPlan& plan) {
    const double n = N_numeric(eta, plan).value.real();
    const double e2 = eta * eta;
    return (1.0 + e2) * n + 0.5 * std::log1p(e2) + eta * std::atan(eta);
}

} // namespace

ConstantFitCD solve_CD(double mu, double nu, const quad::PartitionPlan& plan) {
    if (!(mu > 0.0) || !(nu > 0.0))
        throw DomainError("solve_CD requires mu, nu > 0");
    if (std::abs(nu - mu) < 1e-6 * std::max(mu, nu))
        throw DegeneratePair("damping pair is numerically degenerate");

    const double rmu = cd_rhs(mu, plan);
    const double rnu = cd_rhs(nu, plan);
    const std::array<double, 4> inv = cd_inverse_matrix(mu, nu);

    ConstantFitCD fit;
    fit.C = inv[0] * rmu + inv[1] * rnu;
    fit.D = inv[2] * rmu + inv[3] * rnu;
    fit.pair = {mu, nu};
    fit.conditioning = std::max({std::abs(mu), std::abs(nu), 1.0}) / std::abs(nu - mu);
    return fit;
}

ConsistencyReport cd_self_consistency(const std::vector<std::pair<double, double>>& pairs,
                                      const quad::PartitionPlan& plan) {
    if (pairs.empty())
        throw DomainError("cd_self_consistency needs at least one pair");

    ConsistencyReport report;
    for (const auto& [mu, nu] : pairs) {
        try {
            report.fits.push_back(solve_CD(mu, nu, plan));
        } catch (const DegeneratePair&) {
            report.degenerate_pairs.emplace_back(mu, nu);
        }
    }
    if (report.fits.empty())
        throw DegeneratePair("all supplied pairs are degenerate");

    double cmin = report.fits.front().C, cmax = cmin;
    double dmin = report.fits.front().D, dmax = dmin;
    for (const ConstantFitCD& f : report.fits) {
        cmin = std::min(cmin, f.C);
        cmax = std::max(cmax, f.C);
        dmin = std::min(dmin, f.D);
        dmax = std::max(dmax, f.D);
    }
    report.max_dev_C = cmax - cmin;
    report.max_dev_D = dmax - dmin;
    report.single_pair_warning = report.fits.size() < 2;
    return report;
}

} // namespace hankelcos::ode
