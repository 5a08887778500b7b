#include "hankelcos/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hankelcos::quad {

namespace {

constexpr double pi = 3.14159265358979323846;

// QUADPACK dqk15 nodes and weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

} // namespace

void RegularizationSchedule::validate() const {
    if (betas.empty())
        throw DomainError("regularization schedule must not be empty");
    double prev = std::numeric_limits<double>::infinity();
    for (double b : betas) {
        if (!(b > 0.0) || !(b < prev))
            throw DomainError("betas must be positive and strictly decreasing");
        prev = b;
    }
    if (extrapolation_order < 1 || extrapolation_order >= static_cast<int>(betas.size()))
        throw DomainError("extrapolation_order must lie in [1, count of betas)");
}

void PartitionPlan::validate() const {
    if (max_intervals < 1)
        throw DomainError("max_intervals must be >= 1");
    if (tail_accel_terms < 4)
        throw DomainError("tail_accel_terms must be >= 4");
    if (!(target_abs_tol > 0.0))
        throw DomainError("target_abs_tol must be positive");
    if (!breakpoints.empty()) {
        if (breakpoints.front() != 0.0)
            throw DomainError("explicit breakpoints must start at 0");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw DomainError("breakpoints must be strictly increasing");
    }
}

PanelResult gauss_kronrod_15(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const Complex fc = f(c);
    Complex resk = wgk[7] * fc;
    Complex resg = wg[3] * fc;
    double resabs = wgk[7] * std::abs(fc);

    Complex fv[14];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        fv[j] = f(c - dx);
        fv[7 + j] = f(c + dx);
        const Complex fsum = fv[j] + fv[7 + j];
        resk += wgk[j] * fsum;
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[7 + j]));
        if (j & 1) // xgk[1], xgk[3], xgk[5] carry the embedded Gauss rule
            resg += wg[j / 2] * fsum;
    }

    const Complex mean = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[7 + j] - mean));
    resasc *= std::abs(h);
    resabs *= std::abs(h);

    double err = std::abs(resk - resg) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);

    return PanelResult{resk * h, err};
}

PanelResult adaptive_gk(const std::function<Complex(double)>& f, double a, double b,
                        double abs_tol, int max_panels) {
    struct Seg {
        double a, b;
        Complex val;
        double err;
    };
    std::vector<Seg> segs;
    double err_sum;
    {
        PanelResult r = gauss_kronrod_15(f, a, b);
        segs.push_back({a, b, r.value, r.abs_error});
        err_sum = r.abs_error;
    }
    while (static_cast<int>(segs.size()) < max_panels && err_sum > abs_tol) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const Seg s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b)
            break; // interval exhausted at double resolution
        PanelResult l = gauss_kronrod_15(f, s.a, m);
        PanelResult r = gauss_kronrod_15(f, m, s.b);
        segs[worst] = {s.a, m, l.value, l.abs_error};
        segs.push_back({m, s.b, r.value, r.abs_error});
        err_sum += l.abs_error + r.abs_error - s.err;
    }
    Complex v(0.0, 0.0);
    double e = 0.0;
    for (const Seg& s : segs) {
        v += s.val;
        e += s.err;
    }
    return PanelResult{v, e};
}

Complex wynn_epsilon(const std::vector<Complex>& partial_sums, double& err_proxy) {
    const std::size_t n = partial_sums.size();
    err_proxy = std::numeric_limits<double>::infinity();
    if (n == 0)
        throw DomainError("wynn_epsilon needs at least one partial sum");
    if (n == 1) {
        err_proxy = std::abs(partial_sums[0]);
        return partial_sums[0];
    }

    std::vector<Complex> prev(n, Complex(0.0, 0.0)); // eps_{k-1}
    std::vector<Complex> cur = partial_sums;         // eps_k
    Complex last_estimate = partial_sums.back();
    Complex best = last_estimate;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; cur.size() >= 2; ++k) {
        std::vector<Complex> next(cur.size() - 1);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            const Complex d = cur[j + 1] - cur[j];
            if (std::abs(d) == 0.0) {
                // converged exactly
                err_proxy = 0.0;
                return cur[j + 1];
            }
            next[j] = prev[j + 1] + 1.0 / d;
        }
        if ((k & 1) == 0) { // even columns of the table are estimates
            const Complex cand = next.back();
            const double gap = std::abs(cand - last_estimate);
            // Deep columns can degrade from roundoff amplification: keep the
            // estimate with the smallest inter-column movement.
            if (gap < best_gap) {
                best_gap = gap;
                best = cand;
            }
            last_estimate = cand;
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    err_proxy = best_gap;
    return best;
}

QuadratureResult integrate_halfline(const HalflineProblem& problem, const PartitionPlan& plan) {
    plan.validate();
    if (!problem.has_explicit_first && !problem.f)
        throw DomainError("halfline problem needs an integrand");
    if (!(problem.first_break > 0.0) || !(problem.spacing > 0.0))
        throw DomainError("halfline breakpoints must be positive");

    const double tol = plan.target_abs_tol;
    const double tol_int = tol / 64.0;

    auto breakpoint = [&](int j) -> double {
        // j-th breakpoint, j >= 0; breakpoint(0) = 0.  An explicit partition
        // needs at least two entries to be meaningful; it continues with the
        // problem spacing once exhausted.
        if (plan.breakpoints.size() >= 2) {
            if (j < static_cast<int>(plan.breakpoints.size()))
                return plan.breakpoints[j];
            const double last = plan.breakpoints.back();
            return last + problem.spacing * (j + 1 - static_cast<int>(plan.breakpoints.size()));
        }
        if (j == 0) return 0.0;
        return problem.first_break + problem.spacing * (j - 1);
    };

    const double rho = problem.decay_rate > 0.0
                           ? std::exp(-problem.decay_rate * problem.spacing)
                           : 1.0;

    Complex sum(0.0, 0.0);
    double qerr = 0.0;
    std::vector<Complex> sums;
    sums.reserve(std::min(plan.max_intervals, 1024));

    Complex accel_prev(0.0, 0.0);
    bool have_accel_prev = false;
    int stable = 0;
    double prev_umag = 0.0;

    for (int j = 0; j < plan.max_intervals; ++j) {
        Complex u;
        double e = 0.0;
        if (j == 0 && problem.has_explicit_first) {
            u = problem.first_value;
            e = problem.first_error;
        } else {
            const double a = breakpoint(j);
            const double b = breakpoint(j + 1);
            const int budget = (j == 0 && problem.singular_origin) ? 4096 : 256;
            PanelResult r = adaptive_gk(problem.f, a, b, tol_int, budget);
            u = r.value;
            e = r.abs_error;
        }
        qerr += e;
        sum += u;
        sums.push_back(sum);

        // Direct stop: certified exponential tail bound.  Uses the larger of
        // the last two contributions so a single accidental near-zero interval
        // cannot trigger a premature stop.
        if (rho < 0.995 && j >= 1) {
            const double umag = std::max(std::abs(u), prev_umag * rho);
            const double tail = 2.0 * umag * rho / (1.0 - rho);
            if (tail < tol)
                return QuadratureResult{sum, tail + qerr, j + 1, false};
        }
        prev_umag = std::abs(u);

        // Accelerated stop: Wynn limit of the alternating interval sums.
        if (j >= 7) {
            const std::size_t window =
                std::min<std::size_t>(sums.size(), static_cast<std::size_t>(plan.tail_accel_terms));
            std::vector<Complex> tail_sums(sums.end() - window, sums.end());
            double proxy = 0.0;
            const Complex est = wynn_epsilon(tail_sums, proxy);
            const double drift = have_accel_prev ? std::abs(est - accel_prev)
                                                 : std::numeric_limits<double>::infinity();
            if (proxy < 0.5 * tol && drift < 0.5 * tol) {
                if (++stable >= 2)
                    return QuadratureResult{est, proxy + drift + qerr, j + 1, true};
            } else {
                stable = 0;
            }
            accel_prev = est;
            have_accel_prev = true;
        }
    }
    throw NonConvergence("half-line quadrature did not stabilize within max_intervals");
}

// ---------------------------------------------------------------------------
// First-interval singularity subtraction
// ---------------------------------------------------------------------------

namespace {

// integral_0^b e^{-s x} (c0 + c1 log x) dx as a power series in (-s b); exact
// log moments integral_0^b x^n log x dx = b^{n+1} (log b/(n+1) - 1/(n+1)^2).
Complex model_component(Complex s, double b, Complex c0, Complex c1) {
    const double lb = std::log(b);
    Complex t(1.0, 0.0); // (-s)^n b^n / n!
    Complex total(0.0, 0.0);
    for (int n = 0; n < 400; ++n) {
        const double np1 = n + 1.0;
        const Complex contrib = t * b * (c0 / np1 + c1 * (lb / np1 - 1.0 / (np1 * np1)));
        total += contrib;
        if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(total)) && n > 3)
            return total;
        t *= (-s * b) / np1;
    }
    throw NonConvergence("log-model series did not converge");
}

// integral_0^b e^{-beta x} trig(w x) (c0 + c1 log x) dx for trig = cos or sin.
Complex model_integral(char kernel, double beta, Complex w, double b, Complex c0, Complex c1) {
    const Complex s1 = beta - I * w;
    const Complex s2 = beta + I * w;
    const Complex m1 = model_component(s1, b, c0, c1);
    const Complex m2 = model_component(s2, b, c0, c1);
    if (kernel == 'c')
        return 0.5 * (m1 + m2);
    return (m1 - m2) / (2.0 * I);
}

Complex canonical_w(Complex w) {
    // Evenness in w is exact: canonicalize to Re w > 0 (or the Im w >= 0 ray
    // on the imaginary axis) before integrating.
    if (w.real() > 0.0 || (w.real() == 0.0 && w.imag() >= 0.0))
        return w;
    return -w;
}

} // namespace

QuadratureResult regularized_L(const TransformPoint& pt, double beta,
                               const PartitionPlan& plan, const specfun::SeriesConfig& cfg) {
    plan.validate();
    cfg.validate();
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("beta must be finite and >= 0");
    if (beta == 0.0 && !pt.in_strip())
        throw DomainError("beta = 0 requires |Im w| < |Im k| (absolute convergence strip)");

    const Complex k = pt.k.k;
    const Complex w = canonical_w(pt.w);
    const double decay = beta + std::abs(k.imag()) - std::abs(w.imag());
    if (!(decay > 0.0))
        throw DomainError("integrand is not damped: beta + |Im k| must exceed |Im w|");

    auto f = [=](double x) -> Complex {
        return std::exp(-beta * x) * specfun::hankel2_0(k * x, cfg) * std::cos(w * x);
    };

    HalflineProblem prob;
    prob.f = f;
    const double wosc = w.real();
    const double kosc = k.real();
    if (wosc > 1e-8 * kosc) {
        prob.first_break = 0.5 * pi / wosc;
        prob.spacing = pi / wosc;
    } else {
        prob.first_break = pi / kosc;
        prob.spacing = pi / kosc;
    }
    prob.decay_rate = decay;

    // First interval [0, b1]: subtract the small-argument Hankel model
    //   H0^(2)(k x) ~ c0 + c1 log x,  c0 = 1 - (2i/pi)(log(k/2)+gamma), c1 = -2i/pi
    // integrate the model in closed form, and quadrate the smooth remainder.
    {
        const double b1 =
            plan.breakpoints.size() >= 2 ? plan.breakpoints[1] : prob.first_break;
        const Complex c1 = -2.0 * I / pi;
        const Complex c0 = 1.0 - (2.0 * I / pi) * (std::log(0.5 * k) + specfun::euler_gamma);
        const double smax = std::max(std::abs(beta - I * w), std::abs(beta + I * w));
        const double b_sub = smax * b1 > 4.0 ? 4.0 / smax : b1;

        auto remainder = [=](double x) -> Complex {
            const Complex model = c0 + c1 * std::log(x);
            return std::exp(-beta * x) * std::cos(w * x) * (specfun::hankel2_0(k * x, cfg) - model);
        };
        const double tol_first = plan.target_abs_tol / 8.0;
        PanelResult rem = adaptive_gk(remainder, 0.0, b_sub, tol_first, 4096);
        Complex first = rem.value + model_integral('c', beta, w, b_sub, c0, c1);
        double ferr = rem.abs_error;
        if (b_sub < b1) {
            PanelResult rest = adaptive_gk(f, b_sub, b1, tol_first, 2048);
            first += rest.value;
            ferr += rest.abs_error;
        }
        prob.has_explicit_first = true;
        prob.first_value = first;
        prob.first_error = ferr;
    }

    return integrate_halfline(prob, plan);
}

namespace {

std::vector<double> lagrange_weights_at_zero(const std::vector<double>& betas) {
    const std::size_t n = betas.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = betas[j] - betas[i];
            if (d == 0.0)
                throw IllConditioned("extrapolation nodes must be distinct");
            w[i] *= betas[j] / d;
        }
    }
    return w;
}

} // namespace

Complex extrapolate_beta(const std::vector<std::pair<double, Complex>>& values,
                         int order, double* err_proxy) {
    if (order < 1)
        throw DomainError("extrapolation order must be >= 1");
    if (static_cast<int>(values.size()) < order + 1)
        throw IllConditioned("extrapolation needs at least order+1 samples");

    std::vector<std::pair<double, Complex>> pts = values;
    // Largest beta first, so deeper tableau entries lean on the smallest betas.
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<double> betas(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        betas[i] = pts[i].first;
        if (!(betas[i] > 0.0))
            throw DomainError("betas must be positive");
    }

    const std::vector<double> lw = lagrange_weights_at_zero(betas);
    double amplification = 0.0;
    for (double x : lw) amplification += std::abs(x);
    if (amplification > 1e12)
        throw IllConditioned("beta extrapolation conditioning exceeds 1e12");

    // Neville tableau evaluated at beta = 0, in correction form so that
    // constant data is reproduced exactly.
    const std::size_t n = pts.size();
    std::vector<Complex> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = pts[i].second;
    Complex dropped_largest = t.back();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi = betas[i];
            const double xj = betas[i + level];
            t[i] += xi * (t[i] - t[i + 1]) / (xj - xi);
        }
        if (level == n - 2)
            dropped_largest = t[1]; // degree n-2 using the n-1 smallest betas
    }
    if (err_proxy)
        *err_proxy = n >= 2 ? std::abs(t[0] - dropped_largest) : std::abs(t[0]);
    return t[0];
}

QuadratureResult transform_L(const TransformPoint& pt, const RegularizationSchedule& sched,
                             const PartitionPlan& plan, const specfun::SeriesConfig& cfg) {
    sched.validate();
    if (pt.in_strip())
        return regularized_L(pt, 0.0, plan, cfg);

    std::vector<std::pair<double, Complex>> samples;
    samples.reserve(sched.betas.size());
    double max_qerr = 0.0;
    int intervals = 0;
    bool any_accel = false;
    for (double beta : sched.betas) {
        QuadratureResult r = regularized_L(pt, beta, plan, cfg);
        samples.emplace_back(beta, r.value);
        max_qerr = std::max(max_qerr, r.abs_error_estimate);
        intervals = std::max(intervals, r.intervals_used);
        any_accel = any_accel || r.accelerated;
    }
    double proxy = 0.0;
    const Complex value = extrapolate_beta(samples, sched.extrapolation_order, &proxy);

    std::vector<double> betas(sched.betas.begin(), sched.betas.end());
    double amplification = 0.0;
    for (double x : lagrange_weights_at_zero(betas)) amplification += std::abs(x);

    QuadratureResult out;
    out.value = value;
    out.abs_error_estimate = proxy + amplification * max_qerr;
    out.intervals_used = intervals;
    out.accelerated = any_accel;
    return out;
}

double reference_cos(double beta) {
    if (!(beta > 0.0))
        throw DomainError("reference_cos requires beta > 0");
    return beta / (1.0 + beta * beta);
}

double reference_sin(double beta) {
    if (!(beta > 0.0))
        throw DomainError("reference_sin requires beta > 0");
    return 1.0 / (1.0 + beta * beta);
}

QuadratureResult log_sin_M(double beta, double xi, const PartitionPlan& plan) {
    plan.validate();
    if (!(beta > 0.0) || !(xi > 0.0))
        throw DomainError("log_sin_M requires beta > 0 and xi > 0");

    auto f = [=](double x) -> Complex {
        return Complex(std::exp(-beta * x) * std::sin(xi * x) * std::log(x), 0.0);
    };
    HalflineProblem prob;
    prob.f = f;
    prob.first_break = pi / xi;
    prob.spacing = pi / xi;
    prob.decay_rate = beta;
    // x log x vanishes at 0; subtracting the xi*x*log(x) model still pays off
    // near the endpoint.
    const double b1 = plan.breakpoints.size() >= 2 ? plan.breakpoints[1] : prob.first_break;
    const double smax = std::max(std::abs(Complex(beta, -xi)), std::abs(Complex(beta, xi)));
    const double b_sub = smax * b1 > 4.0 ? 4.0 / smax : b1;
    auto remainder = [=](double x) -> Complex {
        return Complex((std::exp(-beta * x) * std::sin(xi * x) - xi * x * std::exp(-beta * x)) *
                           std::log(x),
                       0.0);
    };
    // model: e^{-beta x} * xi x log x  ==  d/d(-s)-style series with c0 = 0:
    // reuse the power-series moments through model_component on e^{-beta x} x log x.
    // integral_0^b e^{-beta x} xi x log x dx = xi * sum_n (-beta)^n/n! * b^{n+2}(log b/(n+2) - 1/(n+2)^2)
    Complex model(0.0, 0.0);
    {
        const double lb = std::log(b_sub);
        double t = 1.0; // (-beta)^n b^n / n!
        for (int n = 0; n < 400; ++n) {
            const double np2 = n + 2.0;
            const double contrib = t * b_sub * b_sub * (lb / np2 - 1.0 / (np2 * np2));
            model += xi * contrib;
            if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(model)) && n > 3)
                break;
            t *= (-beta * b_sub) / (n + 1.0);
        }
    }
    const double tol_first = plan.target_abs_tol / 8.0;
    PanelResult rem = adaptive_gk(remainder, 0.0, b_sub, tol_first, 4096);
    Complex first = rem.value + model;
    double ferr = rem.abs_error;
    if (b_sub < b1) {
        PanelResult rest = adaptive_gk(f, b_sub, b1, tol_first, 2048);
        first += rest.value;
        ferr += rest.abs_error;
    }
    prob.has_explicit_first = true;
    prob.first_value = first;
    prob.first_error = ferr;
    return integrate_halfline(prob, plan);
}

QuadratureResult log_cos_integral(double beta, const PartitionPlan& plan) {
    plan.validate();
    if (!(beta > 0.0))
        throw DomainError("log_cos_integral requires beta > 0");

    auto f = [=](double x) -> Complex {
        return Complex(std::exp(-beta * x) * std::cos(x) * std::log(x), 0.0);
    };
    HalflineProblem prob;
    prob.f = f;
    prob.first_break = 0.5 * pi;
    prob.spacing = pi;
    prob.decay_rate = beta;
    // On the first interval the integrand *is* the log model (c0 = 0, c1 = 1):
    // e^{-beta x} cos(x) log(x) integrates in closed series form directly.
    {
        const double b1 =
            plan.breakpoints.size() >= 2 ? plan.breakpoints[1] : prob.first_break;
        const double smax = std::max(std::abs(Complex(beta, -1.0)), std::abs(Complex(beta, 1.0)));
        const double b_sub = smax * b1 > 4.0 ? 4.0 / smax : b1;
        Complex first = model_integral('c', beta, Complex(1.0, 0.0), b_sub,
                                       Complex(0.0, 0.0), Complex(1.0, 0.0));
        double ferr = 0.0;
        if (b_sub < b1) {
            PanelResult rest = adaptive_gk(f, b_sub, b1, plan.target_abs_tol / 8.0, 2048);
            first += rest.value;
            ferr += rest.abs_error;
        }
        prob.has_explicit_first = true;
        prob.first_value = first;
        prob.first_error = ferr;
    }
    QuadratureResult direct = integrate_halfline(prob, plan);

    // Cross-evaluation through integration by parts:
    //   integral = beta * M(beta, 1) - integral_0^inf e^{-beta x} sin(x)/x dx,
    // the sinc integral being arctan(1/beta) exactly.
    QuadratureResult msin = log_sin_M(beta, 1.0, plan);
    const Complex decomposed = beta * msin.value - std::atan(1.0 / beta);
    const double gap = std::abs(direct.value - decomposed);

    QuadratureResult out = direct;
    out.abs_error_estimate = std::max(direct.abs_error_estimate, gap);
    return out;
}

QuadratureResult damped_trig_quadrature(char kernel, double beta, double w,
                                        const PartitionPlan& plan) {
    plan.validate();
    if (kernel != 'c' && kernel != 's')
        throw DomainError("kernel must be 'c' or 's'");
    if (!(beta > 0.0) || !(w > 0.0))
        throw DomainError("damped_trig_quadrature requires beta > 0 and w > 0");
    auto f = [=](double x) -> Complex {
        const double trig = kernel == 'c' ? std::cos(w * x) : std::sin(w * x);
        return Complex(std::exp(-beta * x) * trig, 0.0);
    };
    HalflineProblem prob;
    prob.f = f;
    prob.first_break = kernel == 'c' ? 0.5 * pi / w : pi / w;
    prob.spacing = pi / w;
    prob.decay_rate = beta;
    return integrate_halfline(prob, plan);
}

} // namespace hankelcos::quad
