// Numerical evaluation of the logarithmic integrals li(x) = int_2^x dt/ln t
// and li2(x) = int_2^x dt/ln^2 t, partial sums of 1/ln^p, the summation
// constants of the Euler-Maclaurin comparison, and the two-sided normal
// coverage helper F(C) = P(|Z| < C).

#pragma once

#include <cstdint>

namespace primedist::analytic {

// Compensated (Kahan) accumulator; keeps 1e8-term sums near machine accuracy.
class CompensatedSum {
public:
    void add(double v) {
        double y = v - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
    std::int64_t evaluations = 0;
};

// int_2^x dt/ln t, adaptive composite Simpson with interval-halving error
// estimates. abs_error_bound <= tol on return; throws when the tolerance is
// unachievable within the evaluation cap.
QuadratureResult li(double x, double tol);

// int_2^x dt/ln^2 t, same scheme
QuadratureResult li2(double x, double tol);

// sum_{i=2}^{x} 1/ln^p(i), exact compensated summation; p in {1, 2}
double partial_sum_inv_log(std::uint64_t x, int p);

struct EmConstantEstimate {
    int power = 1;            // exponent p in F = 1/ln^p
    double lower_limit = 2.0; // A
    std::uint64_t n = 0;      // truncation
    double estimate = 0.0;    // sum_{i=0}^{n} F(A+i) - int_A^{A+n} F
    double reference_bound = 0.0; // em_inv_log_constant_bound(p)
    double stabilization = 0.0;  // |estimate(n) - estimate(n/2)|, measured
};

// Truncated summation constant for F = 1/ln^p on [A, A+n]
EmConstantEstimate em_constant_estimate(int p, double A, std::uint64_t n);

// F(A)/2 + |F'(A)|/12 for F = 1/ln^p; the closed-form tail bound
double em_constant_bound(int p, double A);

// 0.6202 / ln^p(p + 1)
double em_inv_log_constant_bound(int p);

// P(|Z| < c) for standard normal Z, absolute error below 1e-10
double normal_module_cdf(double c);

// smallest c with normal_module_cdf(c) >= target, accurate to 1e-6
double choose_c_for_coverage(double target);

}  // namespace primedist::analytic
