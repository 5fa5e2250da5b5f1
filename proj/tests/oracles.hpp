#pragma once

// Independent reference implementations used only by tests. Deliberately
// different algorithms from the library: Phi via std::erf, the bivariate
// orthant probability via adaptive Simpson on the conditional-CDF integrand.

#include <cmath>
#include <functional>

namespace oracle {

inline double phi_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(8.0 * std::atan(1.0));
}

inline double phi_cdf(double x) {
    return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
}

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::adapt(f, a, b, fa, fm, fb,
                         detail::simpson(f, a, b, fa, fm, fb), tol, 48);
}

/// P(X > h, Y > k) for standard bivariate normal with correlation r,
/// |r| < 1, by integrating phi(x) * P(Y > k | X = x) over x > h.
inline double bvn_upper(double h, double k, double r) {
    const double s = std::sqrt(1.0 - r * r);
    auto f = [&](double x) {
        return phi_pdf(x) * (1.0 - phi_cdf((k - r * x) / s));
    };
    const double lo = std::max(h, -10.0);
    if (lo >= 10.0) return 0.0;
    return integrate(f, lo, 10.0);
}

}  // namespace oracle
