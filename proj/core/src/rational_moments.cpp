#include "hankelcos/rational_moments.hpp"

#include "hankelcos/types.hpp"

#include <vector>

namespace hankelcos::quad {

namespace {

using Int = boost::multiprecision::cpp_int;

// Ascending-coefficient integer polynomial.
using Poly = std::vector<Int>;

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        d[i - 1] = p[i] * static_cast<unsigned>(i);
    return d;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return Poly{};
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

Poly subtract(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

Rational evaluate(const Poly& p, const Rational& x) {
    Rational v = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        v = v * x + Rational(p[i]);
    return v;
}

} // namespace

Rational moment_cos_exact(int r, const Rational& beta) {
    if (r < 0)
        throw DomainError("moment order r must be >= 0");
    if (beta < 0)
        throw DomainError("beta must be >= 0");

    // f = P / (1+beta^2)^m with P integer; the quotient rule keeps it there:
    //   f' = (P' Q - m P Q') / Q^{m+1},  Q = 1+beta^2, Q' = 2 beta.
    const Poly q = {Int(1), Int(0), Int(1)};
    const Poly qd = {Int(0), Int(2)};
    Poly p = {Int(0), Int(1)}; // beta
    unsigned m = 1;

    for (int step = 0; step < 2 * r; ++step) {
        Poly t1 = multiply(derivative(p), q);
        Poly t2 = multiply(p, qd);
        for (Int& c : t2) c *= m;
        p = subtract(t1, t2);
        ++m;
    }
    // (-d/dbeta)^{2r} == (d/dbeta)^{2r}: even derivative order.

    const Rational num = evaluate(p, beta);
    Rational den = 1;
    const Rational qval = 1 + beta * beta;
    for (unsigned i = 0; i < m; ++i) den *= qval;
    return num / den;
}

} // namespace hankelcos::quad
