// hankelcos: evaluate and cross-validate the Fourier cosine transform of
// H0^(2)(kx) by the closed form, regularized quadrature, and the spectral
// Green's-function route; fit the asymptotic and log-integral constants.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hankelcos/branch.hpp"
#include "hankelcos/quad.hpp"
#include "hankelcos/report.hpp"
#include "hankelcos/route_green.hpp"
#include "hankelcos/route_ode.hpp"
#include "hankelcos/specfun.hpp"

namespace hc = hankelcos;
using hc::Complex;

namespace {

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    char* end = nullptr;
    const double re = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw hc::DomainError("cannot parse complex value: " + s);
    double im = 0.0;
    if (comma != std::string::npos) {
        const char* p = s.c_str() + comma + 1;
        im = std::strtod(p, &end);
        if (end == p)
            throw hc::DomainError("cannot parse complex value: " + s);
    }
    return {re, im};
}

unsigned thread_count() {
    if (const char* env = std::getenv("HC_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0)
            return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;)
                body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

struct MethodValue {
    std::string method;
    Complex value;
    double err_est = 0.0;
    bool ok = true;
};

std::vector<MethodValue> evaluate_methods(const hc::TransformPoint& pt,
                                          const std::string& method) {
    std::vector<MethodValue> out;
    auto want = [&](const char* m) { return method == "all" || method == m; };
    if (want("closed")) {
        MethodValue v{"closed", {}, 0.0, true};
        v.value = hc::branch::closed_form_L(pt);
        out.push_back(v);
    }
    if (want("quad")) {
        MethodValue v{"quad", {}, 0.0, true};
        const hc::quad::QuadratureResult r = hc::quad::transform_L(pt);
        v.value = r.value;
        v.err_est = r.abs_error_estimate;
        out.push_back(v);
    }
    if (want("green")) {
        MethodValue v{"green", {}, 0.0, true};
        v.value = -2.0 * hc::I * hc::branch::greens_spectral(pt, 0.0);
        out.push_back(v);
    }
    if (out.empty())
        throw hc::DomainError("unknown method: " + method);
    return out;
}

void append_point_records(hc::report::VerificationReport& rep, const hc::TransformPoint& pt,
                          const std::vector<MethodValue>& methods, double tol) {
    double max_gap = 0.0;
    double max_mag = 0.0;
    for (const MethodValue& m : methods) max_mag = std::max(max_mag, std::abs(m.value));
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            max_gap = std::max(max_gap, std::abs(methods[i].value - methods[j].value));
    const double rel_gap = max_mag > 0.0 ? max_gap / max_mag : max_gap;
    const bool pass = rel_gap <= tol;
    for (const MethodValue& m : methods) {
        hc::report::Record r;
        r.k = pt.k.k;
        r.w = pt.w;
        r.method = m.method;
        r.value = m.value;
        r.err_est = m.err_est;
        r.gap = rel_gap;
        r.pass = pass;
        rep.records.push_back(std::move(r));
    }
}

struct CommonOutput {
    std::string format = "csv";
    std::string output = "-";

    hc::report::Format fmt() const {
        if (format == "csv") return hc::report::Format::csv;
        if (format == "json") return hc::report::Format::json;
        throw hc::DomainError("output_format must be csv or json");
    }
};

int emit_and_status(const hc::report::VerificationReport& rep, const CommonOutput& out) {
    hc::report::emit_report(rep, out.fmt(), out.output);
    std::cerr << "# points=" << rep.records.size() << " max_gap=" << rep.summary().max_gap
              << " wall_ms=" << rep.wall_ms << "\n";
    if (!rep.all_pass()) {
        std::cerr << "error: verification failed: max_gap=" << rep.summary().max_gap << "\n";
        return 1;
    }
    return 0;
}

nlohmann::ordered_json complex_json(const char* name, Complex v) {
    return {{std::string(name) + "_re", v.real()}, {std::string(name) + "_im", v.imag()}};
}

void emit_text(const std::string& body, const std::string& path) {
    if (path == "-" || path.empty()) {
        std::cout << body;
        if (!std::cout)
            throw hc::IoError("failed to write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw hc::IoError("cannot open output file: " + path);
    f << body;
    f.flush();
    if (!f)
        throw hc::IoError("failed to write output file: " + path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier cosine transform of the zeroth-order Hankel function "
                 "of the second kind: closed form, regularized quadrature, and "
                 "Green's-function routes with cross-validation"};
    app.require_subcommand(1);

    std::string k_str, w_str, z_str;
    std::string method = "all";
    double tol = 1e-6;
    CommonOutput out;
    double w_from = 0.0, w_to = 0.0;
    int w_steps = 25;
    double exclude_rel = 0.1;
    int random_points = 0;
    unsigned long long seed = 0;
    std::string pairs_str = "0.5:2,1:3,0.25:1.5";
    std::string samples_str = "50,100,200,400";

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "Report format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output,-o", out.output, "Output path ('-' = stdout)");
    };

    CLI::App* eval = app.add_subcommand("eval", "Evaluate L(k, w) at one point");
    eval->add_option("--k", k_str, "k as re,im")->required();
    eval->add_option("--w", w_str, "w as re,im")->required();
    eval->add_option("--method", method, "closed | quad | green | all")
        ->check(CLI::IsMember({"closed", "quad", "green", "all"}));
    eval->add_option("--tol", tol, "Relative route-agreement tolerance");
    add_output(eval);

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-validate all routes over a real-w grid (or random points)");
    verify->add_option("--k", k_str, "k as re,im")->required();
    verify->add_option("--w-from", w_from, "Start of the w range");
    verify->add_option("--w-to", w_to, "End of the w range (default 3|k|)");
    verify->add_option("--w-steps", w_steps, "Number of grid points");
    verify->add_option("--exclude-branch-rel", exclude_rel,
                       "Skip points with |w +- k| below this fraction of |k|");
    verify->add_option("--random", random_points, "Use this many random w instead of a grid");
    verify->add_option("--seed", seed, "Seed for random test-point selection");
    verify->add_option("--tol", tol, "Relative route-agreement tolerance");
    add_output(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "Evaluate one method over a w range");
    sweep->add_option("--k", k_str, "k as re,im")->required();
    sweep->add_option("--w-from", w_from, "Start of the w range");
    sweep->add_option("--w-to", w_to, "End of the w range (default 3|k|)")->required();
    sweep->add_option("--w-steps", w_steps, "Number of grid points");
    sweep->add_option("--method", method, "closed | quad | green | all")
        ->check(CLI::IsMember({"closed", "quad", "green", "all"}));
    add_output(sweep);

    CLI::App* fitab = app.add_subcommand("fit-ab", "Fit the asymptotic constants A and B");
    fitab->add_option("--k", k_str, "k as re,im")->required();
    fitab->add_option("--w-samples", samples_str, "Comma-separated real w values");
    add_output(fitab);

    CLI::App* fitcd = app.add_subcommand("fit-cd", "Resolve C and D from damping pairs");
    fitcd->add_option("--pairs", pairs_str, "Pairs mu:nu, comma separated");
    fitcd->add_option("--tol", tol, "Max allowed cross-pair deviation");
    add_output(fitcd);

    CLI::App* hankel = app.add_subcommand("hankel", "Evaluate J0, Y0, H0^(1), H0^(2)");
    hankel->add_option("--z", z_str, "z as re,im")->required();
    add_output(hankel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (eval->parsed()) {
            const hc::TransformPoint pt(hc::Wavenumber(parse_complex(k_str)),
                                        parse_complex(w_str));
            hc::report::VerificationReport rep;
            append_point_records(rep, pt, evaluate_methods(pt, method), tol);
            rep.wall_ms = wall_ms();
            return emit_and_status(rep, out);
        }

        if (verify->parsed() || sweep->parsed()) {
            const hc::Wavenumber k(parse_complex(k_str));
            const double kmag = std::abs(k.k);
            if (w_to == 0.0)
                w_to = 3.0 * kmag;
            if (w_steps < 1)
                throw hc::DomainError("w-steps must be >= 1");
            if (!(w_to > w_from))
                throw hc::DomainError("w range must have positive extent");

            std::vector<double> ws;
            auto excluded = [&](double w) {
                return std::abs(Complex(w, 0.0) - k.k) < exclude_rel * kmag ||
                       std::abs(Complex(w, 0.0) + k.k) < exclude_rel * kmag;
            };
            if (verify->parsed() && random_points > 0) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> dist(w_from, w_to);
                while (static_cast<int>(ws.size()) < random_points) {
                    const double w = dist(rng);
                    if (!excluded(w))
                        ws.push_back(w);
                }
            } else {
                for (int i = 0; i < w_steps; ++i) {
                    const double w =
                        w_steps == 1 ? w_from
                                     : w_from + (w_to - w_from) * i / (w_steps - 1);
                    if (!excluded(w))
                        ws.push_back(w);
                }
            }

            const std::string use_method = sweep->parsed() ? method : "all";
            std::vector<std::vector<MethodValue>> results(ws.size());
            std::vector<std::string> errors(ws.size());
            parallel_for(ws.size(), [&](std::size_t i) {
                try {
                    const hc::TransformPoint pt(k, Complex(ws[i], 0.0));
                    results[i] = evaluate_methods(pt, use_method);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            });

            hc::report::VerificationReport rep;
            const double gate = sweep->parsed() ? std::numeric_limits<double>::infinity() : tol;
            for (std::size_t i = 0; i < ws.size(); ++i) {
                if (!errors[i].empty()) {
                    std::cerr << "error: point w=" << ws[i] << ": " << errors[i] << "\n";
                    hc::report::Record r;
                    r.k = k.k;
                    r.w = Complex(ws[i], 0.0);
                    r.method = "error";
                    r.value = Complex(std::nan(""), std::nan(""));
                    r.gap = std::numeric_limits<double>::infinity();
                    r.pass = false;
                    rep.records.push_back(std::move(r));
                    continue;
                }
                append_point_records(rep, hc::TransformPoint(k, Complex(ws[i], 0.0)),
                                     results[i], gate);
            }
            rep.wall_ms = wall_ms();
            return emit_and_status(rep, out);
        }

        if (fitab->parsed()) {
            const hc::Wavenumber k(parse_complex(k_str));
            std::vector<double> samples;
            std::stringstream ss(samples_str);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) samples.push_back(std::strtod(tok.c_str(), nullptr));
            const hc::ode::ConstantFitAB fit = hc::ode::fit_AB(k, samples);
            if (out.format == "json") {
                nlohmann::ordered_json j;
                j.update(complex_json("A", fit.A));
                j.update(complex_json("B", fit.B));
                j["residual_norm"] = fit.residual_norm;
                j["sample_count"] = fit.sample_count;
                emit_text(j.dump(2) + "\n", out.output);
            } else {
                std::string body = "A_re,A_im,B_re,B_im,residual_norm,sample_count\n";
                using hc::report::format_double;
                body += format_double(fit.A.real()) + "," + format_double(fit.A.imag()) + "," +
                        format_double(fit.B.real()) + "," + format_double(fit.B.imag()) + "," +
                        format_double(fit.residual_norm) + "," +
                        std::to_string(fit.sample_count) + "\n";
                emit_text(body, out.output);
            }
            std::cerr << "# wall_ms=" << wall_ms() << "\n";
            return 0;
        }

        if (fitcd->parsed()) {
            std::vector<std::pair<double, double>> pairs;
            std::stringstream ss(pairs_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw hc::DomainError("pairs must be formatted mu:nu");
                pairs.emplace_back(std::strtod(tok.substr(0, colon).c_str(), nullptr),
                                   std::strtod(tok.substr(colon + 1).c_str(), nullptr));
            }
            const hc::ode::ConsistencyReport rep = hc::ode::cd_self_consistency(pairs);
            nlohmann::ordered_json j;
            j["fits"] = nlohmann::ordered_json::array();
            for (const auto& f : rep.fits) {
                j["fits"].push_back({{"mu", f.pair.first},
                                     {"nu", f.pair.second},
                                     {"C", f.C},
                                     {"D", f.D},
                                     {"conditioning", f.conditioning}});
            }
            j["degenerate_pairs"] = nlohmann::ordered_json::array();
            for (const auto& p : rep.degenerate_pairs)
                j["degenerate_pairs"].push_back({{"mu", p.first}, {"nu", p.second}});
            j["max_dev_C"] = rep.max_dev_C;
            j["max_dev_D"] = rep.max_dev_D;
            j["single_pair_warning"] = rep.single_pair_warning;
            if (out.format == "csv") {
                std::string body = "mu,nu,C,D,conditioning\n";
                using hc::report::format_double;
                for (const auto& f : rep.fits)
                    body += format_double(f.pair.first) + "," + format_double(f.pair.second) +
                            "," + format_double(f.C) + "," + format_double(f.D) + "," +
                            format_double(f.conditioning) + "\n";
                emit_text(body, out.output);
            } else {
                emit_text(j.dump(2) + "\n", out.output);
            }
            std::cerr << "# max_dev_C=" << rep.max_dev_C << " max_dev_D=" << rep.max_dev_D
                      << " wall_ms=" << wall_ms() << "\n";
            return (rep.max_dev_C <= tol && rep.max_dev_D <= tol) ? 0 : 1;
        }

        if (hankel->parsed()) {
            const Complex z = parse_complex(z_str);
            const Complex j0 = hc::specfun::bessel_j0(z);
            const Complex y0 = hc::specfun::bessel_y0(z);
            const Complex h1 = hc::specfun::hankel1_0(z);
            const Complex h2 = hc::specfun::hankel2_0(z);
            if (out.format == "json") {
                nlohmann::ordered_json j;
                j.update(complex_json("z", z));
                j.update(complex_json("j0", j0));
                j.update(complex_json("y0", y0));
                j.update(complex_json("h1", h1));
                j.update(complex_json("h2", h2));
                emit_text(j.dump(2) + "\n", out.output);
            } else {
                using hc::report::format_double;
                std::string body =
                    "z_re,z_im,j0_re,j0_im,y0_re,y0_im,h1_re,h1_im,h2_re,h2_im\n";
                const Complex vals[] = {z, j0, y0, h1, h2};
                for (int i = 0; i < 5; ++i)
                    body += format_double(vals[i].real()) + "," +
                            format_double(vals[i].imag()) + (i == 4 ? "\n" : ",");
                emit_text(body, out.output);
            }
            std::cerr << "# wall_ms=" << wall_ms() << "\n";
            return 0;
        }
    } catch (const hc::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hc::DegeneratePair& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
