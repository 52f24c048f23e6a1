#include "primedist/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace primedist::analytic {

namespace {

constexpr std::int64_t kEvalCap = 20'000'000;
constexpr int kMaxDepth = 52;
constexpr double kSqrtPi = 1.7724538509055160273;

struct Panel {
    double a, b;
    double fa, fm, fb;
    double whole;  // Simpson estimate over [a, b]
    double tol;
    int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Adaptive Simpson over [a, b] with explicit stack. The per-panel tolerance
// budget halves on each split, so accepted error estimates sum below tol.
template <class F>
QuadratureResult adaptive_simpson(F f, double a, double b, double tol, const char* what) {
    QuadratureResult res;
    CompensatedSum value, error;
    std::int64_t evals = 0;
    auto eval = [&](double t) {
        if (++evals > kEvalCap)
            throw std::runtime_error(std::string(what) +
                                     ": tolerance unachievable within evaluation cap");
        return f(t);
    };

    // start from geometric panels so no single panel spans many decades
    std::vector<Panel> stack;
    double lo = a;
    std::vector<double> cuts;
    cuts.push_back(a);
    while (lo * 2.0 < b) {
        lo *= 2.0;
        cuts.push_back(lo);
    }
    cuts.push_back(b);
    double tol_per_panel = 0.5 * tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double pa = cuts[i], pb = cuts[i + 1];
        double fa = eval(pa), fm = eval(0.5 * (pa + pb)), fb = eval(pb);
        stack.push_back({pa, pb, fa, fm, fb, simpson(pa, pb, fa, fm, fb), tol_per_panel, 0});
    }

    bool met = true;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double m = 0.5 * (p.a + p.b);
        double flm = eval(0.5 * (p.a + m));
        double frm = eval(0.5 * (m + p.b));
        double left = simpson(p.a, m, p.fa, flm, p.fm);
        double right = simpson(m, p.b, p.fm, frm, p.fb);
        double delta = (left + right) - p.whole;
        double est = delta / 15.0;
        if (std::fabs(est) <= p.tol || p.depth >= kMaxDepth ||
            (m - p.a) < 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(m)) {
            value.add(left + right + est);  // Richardson correction
            error.add(std::fabs(est));
            if (std::fabs(est) > p.tol) met = false;
        } else {
            stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
            stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
        }
    }

    res.value = value.value();
    res.abs_error_bound = error.value() +
        4.0 * std::numeric_limits<double>::epsilon() * std::fabs(res.value);
    res.evaluations = evals;
    if (!met || res.abs_error_bound > tol)
        throw std::runtime_error(std::string(what) + ": tolerance unachievable at this scale");
    return res;
}

void check_li_args(double x, double tol, const char* what) {
    if (!(x >= 2.0)) throw std::invalid_argument(std::string(what) + ": require x >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument(std::string(what) + ": require tol > 0");
}

}  // namespace

QuadratureResult li(double x, double tol) {
    check_li_args(x, tol, "li");
    if (x == 2.0) return {0.0, 0.0, 0};
    return adaptive_simpson([](double t) { return 1.0 / std::log(t); }, 2.0, x, tol, "li");
}

QuadratureResult li2(double x, double tol) {
    check_li_args(x, tol, "li2");
    if (x == 2.0) return {0.0, 0.0, 0};
    return adaptive_simpson([](double t) {
        double l = std::log(t);
        return 1.0 / (l * l);
    }, 2.0, x, tol, "li2");
}

double partial_sum_inv_log(std::uint64_t x, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("partial_sum_inv_log: p must be 1 or 2");
    if (x < 3) throw std::invalid_argument("partial_sum_inv_log: require x >= 3");
    if (x >= 1'000'000'000ull)
        throw std::invalid_argument("partial_sum_inv_log: x >= 1e9, use the integral form");
    CompensatedSum sum;
    for (std::uint64_t i = 2; i <= x; ++i) {
        double l = std::log(static_cast<double>(i));
        sum.add(p == 1 ? 1.0 / l : 1.0 / (l * l));
    }
    return sum.value();
}

EmConstantEstimate em_constant_estimate(int p, double A, std::uint64_t n) {
    if (p != 1 && p != 2)
        throw std::invalid_argument("em_constant_estimate: p must be 1 or 2");
    if (!(A >= 2.0))
        throw std::invalid_argument("em_constant_estimate: require A >= 2 (monotone regime)");
    if (n < 1000) throw std::invalid_argument("em_constant_estimate: require n >= 1000");

    CompensatedSum sum;
    double sum_half = 0.0;
    std::uint64_t half = n / 2;
    for (std::uint64_t i = 0; i <= n; ++i) {
        double l = std::log(A + static_cast<double>(i));
        sum.add(p == 1 ? 1.0 / l : 1.0 / (l * l));
        if (i == half) sum_half = sum.value();
    }
    auto integral = [&](double hi) {
        double tol = 1e-7;
        QuadratureResult top = (p == 1) ? li(hi, tol) : li2(hi, tol);
        QuadratureResult bot = (A == 2.0) ? QuadratureResult{}
                                          : ((p == 1) ? li(A, tol) : li2(A, tol));
        return top.value - bot.value;
    };

    EmConstantEstimate est;
    est.power = p;
    est.lower_limit = A;
    est.n = n;
    est.estimate = sum.value() - integral(A + static_cast<double>(n));
    double est_half = sum_half - integral(A + static_cast<double>(half));
    est.stabilization = std::fabs(est.estimate - est_half);
    est.reference_bound = em_inv_log_constant_bound(p);
    return est;
}

double em_constant_bound(int p, double A) {
    if (p < 1) throw std::invalid_argument("em_constant_bound: require p >= 1");
    if (!(A > 1.0)) throw std::invalid_argument("em_constant_bound: require A > 1");
    double l = std::log(A);
    double f = std::pow(l, -p);
    double fprime = static_cast<double>(p) / (A * std::pow(l, p + 1));
    return f / 2.0 + fprime / 12.0;
}

double em_inv_log_constant_bound(int p) {
    if (p < 1) throw std::invalid_argument("em_inv_log_constant_bound: require p >= 1");
    return 0.6202 / std::pow(std::log(static_cast<double>(p) + 1.0), p);
}

double normal_module_cdf(double c) {
    if (c < 0.0) throw std::invalid_argument("normal_module_cdf: require c >= 0");
    if (c == 0.0) return 0.0;
    if (c >= 9.0) return 1.0;  // two-sided tail below 1e-18 here
    // P(|Z| < c) = erf(c / sqrt(2)) via the positive-term series
    // erf(z) = (2z/sqrt(pi)) e^{-z^2} sum_{k>=0} (2z^2)^k / (1*3*...*(2k+1))
    double z = c / std::sqrt(2.0);
    double z2 = 2.0 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 512; ++k) {
        term *= z2 / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 2.0 * z / kSqrtPi * std::exp(-z * z) * sum;
}

double choose_c_for_coverage(double target) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("choose_c_for_coverage: require 0 < target < 1");
    double lo = 0.0, hi = 9.0;
    while (hi - lo > 1e-7) {
        double mid = 0.5 * (lo + hi);
        if (normal_module_cdf(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace primedist::analytic
