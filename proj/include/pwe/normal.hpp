#ifndef PWE_NORMAL_HPP
#define PWE_NORMAL_HPP

namespace pwe {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse standard normal CDF on (0,1). Throws std::domain_error at 0 or 1.
double inv_normal_cdf(double p);

// Gamma_c(mu1, mu2) = Pr[X1 <= t1 and X2 <= t2] where t_i = Phi^-1((1-mu_i)/2)
// and (X1, X2) are standard normals with covariance c. Computed by adaptive
// quadrature of the conditional-normal integrand; c = +-1 are analytic
// limits. Absolute error <= 1e-7 on [-1,1]^3.
double gamma_c(double mu1, double mu2, double c);

}  // namespace pwe

#endif
