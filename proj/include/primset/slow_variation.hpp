/// @file slow_variation.hpp
/// Parametric slowly varying functions L, numeric checks of their defining
/// hypotheses, and the convergence integral of dt/(t log t L(t)).
///
/// Iterated logarithms follow the clamped convention log_1 x = max(1, log x),
/// log_k x = log_1(log_{k-1} x); every logarithm is natural.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "primset/common.hpp"

namespace primset {

enum class LKind { iterated_log_product, power_of_log, custom_table };

inline std::string to_string(LKind k) {
    switch (k) {
        case LKind::iterated_log_product: return "iterated-log-product";
        case LKind::power_of_log: return "power-of-log";
        case LKind::custom_table: return "custom-table";
    }
    return "?";
}

inline LKind lkind_from_string(const std::string& s) {
    if (s == "iterated-log-product") return LKind::iterated_log_product;
    if (s == "power-of-log") return LKind::power_of_log;
    if (s == "custom-table") return LKind::custom_table;
    throw std::invalid_argument("unknown L kind: " + s);
}

/// Descriptor of a slowly varying function L, positive and (weakly)
/// increasing on [2, oo).
///
/// * power-of-log:          L(x) = (log_1 x)^epsilon
/// * iterated-log-product:  ell = 3 gives (log_1 x)^epsilon; ell >= 4 gives
///                          (log_2 x)...(log_{ell-3} x) * (log_{ell-2} x)^{1+epsilon}
/// * custom-table:          piecewise-linear through sorted (x, L) nodes,
///                          extended flat on both sides
struct LSpec {
    LKind kind = LKind::power_of_log;
    int ell = 3;
    double epsilon = 1.0;
    std::vector<std::pair<double, double>> table;

    static LSpec power_of_log(double eps) {
        if (!(eps > 0)) throw std::invalid_argument("LSpec: epsilon must be > 0");
        LSpec s;
        s.kind = LKind::power_of_log;
        s.epsilon = eps;
        return s;
    }

    static LSpec iterated(int ell, double eps) {
        if (ell < 3) throw std::invalid_argument("LSpec: ell must be >= 3");
        if (!(eps > 0)) throw std::invalid_argument("LSpec: epsilon must be > 0");
        LSpec s;
        s.kind = LKind::iterated_log_product;
        s.ell = ell;
        s.epsilon = eps;
        return s;
    }

    static LSpec custom(std::vector<std::pair<double, double>> nodes) {
        if (nodes.empty()) throw std::invalid_argument("LSpec: empty table");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!(nodes[i].second > 0))
                throw std::invalid_argument("LSpec: table values must be positive");
            if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
                throw std::invalid_argument("LSpec: table x-nodes must strictly increase");
            if (i > 0 && nodes[i].second < nodes[i - 1].second)
                throw std::invalid_argument("LSpec: table values must be nondecreasing");
        }
        LSpec s;
        s.kind = LKind::custom_table;
        s.table = std::move(nodes);
        return s;
    }
};

namespace detail {

/// L(t) addressed by v = log t; keeps deep iterated-log arguments
/// representable far beyond the double range of t itself.
///
/// The single-log family uses the raw logarithm (positive on [2, oo) with
/// no clamp needed, and L(2) < 1 <= L(3) puts y0 at 3); the clamped
/// log_1 = max(1, log) enters only from the second iterated level up.
inline double l_eval_logx(const LSpec& spec, double v) {
    switch (spec.kind) {
        case LKind::power_of_log:
            return std::pow(v, spec.epsilon);
        case LKind::iterated_log_product: {
            if (spec.ell == 3) return std::pow(v, spec.epsilon);
            double level = std::max(1.0, v);  // log_1 t
            double prod = 1.0;
            for (int i = 2; i <= spec.ell - 3; ++i) {
                level = log1(level);
                prod *= level;
            }
            level = log1(level);  // log_{ell-2} t
            return prod * std::pow(level, 1.0 + spec.epsilon);
        }
        case LKind::custom_table: {
            const auto& t = spec.table;
            if (v <= std::log(t.front().first)) return t.front().second;
            if (v >= std::log(t.back().first)) return t.back().second;
            double x = std::exp(v);
            auto it = std::lower_bound(t.begin(), t.end(), x,
                                       [](const auto& node, double xv) { return node.first < xv; });
            if (it->first == x) return it->second;
            auto prev = it - 1;
            double w = (x - prev->first) / (it->first - prev->first);
            return prev->second + w * (it->second - prev->second);
        }
    }
    throw std::logic_error("l_eval_logx: bad kind");
}

/// Adaptive Simpson with absolute tolerance; throws when the refinement
/// budget runs out.
class simpson {
public:
    simpson(std::function<double(double)> f, double tol, u64 eval_budget = 4'000'000)
        : f_(std::move(f)), tol_(tol), budget_(eval_budget) {}

    double integrate(double a, double b) {
        double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        return recurse(a, b, fa, fm, fb, whole(a, b, fa, fm, fb), tol_, 48);
    }

private:
    static double whole(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double eval(double x) {
        if (evals_++ > budget_) throw quadrature_error("adaptive Simpson: budget exceeded");
        return f_(x);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double s,
                   double tol, int depth) {
        double m = 0.5 * (a + b);
        double fl = eval(0.5 * (a + m)), fr = eval(0.5 * (m + b));
        double left = whole(a, m, fa, fl, fm), right = whole(m, b, fm, fr, fb);
        double delta = left + right - s;
        if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + 1.0))
            return left + right + delta / 15.0;
        if (depth == 0) throw quadrature_error("adaptive Simpson: depth exhausted");
        return recurse(a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
    }

    std::function<double(double)> f_;
    double tol_;
    u64 budget_;
    u64 evals_ = 0;
};

/// Integral of dv/(v * L(e^v)) over [v_lo, v_hi] via u = log v, which turns
/// the measure dt/(t log t) into plain du.
inline double integral_log_domain(const LSpec& spec, double v_lo, double v_hi,
                                  double tol = 1e-9) {
    if (v_hi <= v_lo) return 0.0;
    auto g = [&](double u) { return 1.0 / l_eval_logx(spec, std::exp(u)); };
    return simpson(g, tol).integrate(std::log(v_lo), std::log(v_hi));
}

}  // namespace detail

/// L(x) for x >= 2.
inline double l_eval(const LSpec& spec, double x) {
    if (!(x >= 2)) throw std::domain_error("l_eval: need x >= 2");
    return detail::l_eval_logx(spec, std::log(x));
}

/// Partial convergence integral over [2, T] of dt/(t log t L(t)), evaluated
/// by adaptive Simpson after the substitution u = log log t.
inline double check_integral(const LSpec& spec, double T) {
    if (!(T >= 4)) throw std::invalid_argument("check_integral: need T >= 4");
    return detail::integral_log_domain(spec, std::log(2.0), std::log(T));
}

/// Ratios L(2x)/L(x) on a grid; slow variation means they approach 1.
inline std::vector<double> check_slow_variation(const LSpec& spec,
                                                std::span<const double> x_grid) {
    std::vector<double> ratios;
    ratios.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x >= 2)) throw std::domain_error("check_slow_variation: grid point < 2");
        ratios.push_back(l_eval(spec, 2 * x) / l_eval(spec, x));
    }
    return ratios;
}

/// Maximum of L(x)/x^probe over the grid; boundedness on a geometric grid
/// witnesses L(x) << x^probe.
inline double check_subpolynomial(const LSpec& spec, double epsilon_probe,
                                  std::span<const double> x_grid) {
    if (!(epsilon_probe > 0))
        throw std::invalid_argument("check_subpolynomial: probe must be > 0");
    double best = 0.0;
    for (double x : x_grid) {
        double v = std::exp(std::log(l_eval(spec, x)) - epsilon_probe * std::log(x));
        best = std::max(best, v);
    }
    return best;
}

/// Heuristic convergence report for the integral of dt/(t log t L(t)).
///
/// The increments are taken over doublings of log t (the geometric-in-log
/// grid 10^3, 10^6, 10^12, ...): doubling t itself cannot separate the
/// convergent from the divergent integrands here, while in log t the
/// constant function yields exactly constant increments. The verdict is
/// advisory; convergence is not decidable numerically.
struct ConvergenceReport {
    bool divergent;
    std::vector<double> increments;
};

inline ConvergenceReport classify_integral(const LSpec& spec, int doublings = 10) {
    double v = std::log(1e3);
    std::vector<double> inc;
    for (int i = 0; i < doublings + 1; ++i) {
        inc.push_back(detail::integral_log_domain(spec, v, 2 * v));
        v *= 2;
    }
    bool shrinks = false;
    for (std::size_t i = 1; i < inc.size(); ++i)
        if (inc[i] < inc[i - 1] * (1.0 - 1e-6)) shrinks = true;  // above quadrature noise
    return {!shrinks, std::move(inc)};
}

/// Exact value of the improper integral of dt/(t log t L(t)) from N to
/// infinity for the built-in families, telescoping the clamped iterated
/// logarithms level by level. Custom tables extend flat, so their tail
/// integral diverges and +infinity is returned.
inline double integral_tail(const LSpec& spec, double N) {
    if (!(N >= 4)) throw std::invalid_argument("integral_tail: need N >= 4");
    if (spec.kind == LKind::custom_table) return std::numeric_limits<double>::infinity();

    int depth = (spec.kind == LKind::power_of_log || spec.ell == 3) ? 1 : spec.ell - 2;
    const double e = std::exp(1.0);
    // R(d, w) = integral from w of dx / (x log_1 x ... log_{d-1} x (log_d x)^{1+eps});
    // below e all clamped levels equal 1 and the integrand is dx/x.
    std::function<double(int, double)> rec = [&](int d, double w) -> double {
        if (d == 0) return 1.0 / (spec.epsilon * std::pow(w, spec.epsilon));
        if (w < e) return (1.0 - std::log(w)) + rec(d, e);
        return rec(d - 1, std::log(w));
    };
    return rec(depth, N);
}

}  // namespace primset
