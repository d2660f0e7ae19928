#include "pwe/normal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwe {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

// Wichura's AS 241 (PPND16) rational approximations; relative error ~1e-15.
double inv_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inv_normal_cdf requires p in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                    3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -value : value;
}

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

struct OrthantIntegrand {
    double t2, c, scale;  // scale = 1/sqrt(1-c^2)
    double operator()(double x) const { return normal_pdf(x) * normal_cdf((t2 - c * x) * scale); }
};

double adaptive_simpson(const OrthantIntegrand& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double threshold_from_mu(double mu) {
    const double p = 0.5 * (1.0 - mu);
    if (p <= 0.0) return -40.0;
    if (p >= 1.0) return 40.0;
    return inv_normal_cdf(p);
}

}  // namespace

double gamma_c(double mu1, double mu2, double c) {
    c = std::clamp(c, -1.0, 1.0);
    const double t1 = threshold_from_mu(std::clamp(mu1, -1.0, 1.0));
    const double t2 = threshold_from_mu(std::clamp(mu2, -1.0, 1.0));
    if (c >= 1.0 - 1e-12) return normal_cdf(std::min(t1, t2));
    if (c <= -1.0 + 1e-12) return std::max(0.0, normal_cdf(t1) + normal_cdf(t2) - 1.0);

    const double hi = std::min(t1, 9.0);
    const double lo = -9.0;
    if (hi <= lo) return 0.0;
    OrthantIntegrand f{t2, c, 1.0 / std::sqrt(1.0 - c * c)};
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = adaptive_simpson(f, lo, hi, fa, fm, fb, whole, 1e-10, 42);
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace pwe
