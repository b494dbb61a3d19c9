#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "locsvm/types.hpp"

namespace locsvm {

enum class LossFamily { hinge, logistic, pinball, eps_insensitive, absolute };

std::string_view to_string(LossFamily family);
LossFamily loss_family_from_string(std::string_view name);

/// Closed interval [lo, hi] of reals; used for subdifferentials.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    double distance(double v) const noexcept {
        if (v < lo) return lo - v;
        if (v > hi) return v - hi;
        return 0.0;
    }
    double project(double v) const noexcept { return v < lo ? lo : (v > hi ? hi : v); }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Convex, Lipschitz-continuous loss L(x, y, t). None of the built-in
/// families depend on x.
///
/// hinge:           max(0, 1 - y t), labels restricted to |y| <= 1
/// logistic:        -log(4 s(r)(1 - s(r))) with r = y - t and s the sigmoid
/// pinball(tau):    tau (y - t) for t <= y, (1 - tau)(t - y) otherwise
/// eps_insensitive: max(0, |y - t| - eps)
/// absolute:        |y - t|
class LossSpec {
public:
    explicit LossSpec(LossFamily family, std::map<std::string, double> params = {});

    static LossSpec hinge() { return LossSpec(LossFamily::hinge); }
    static LossSpec logistic() { return LossSpec(LossFamily::logistic); }
    static LossSpec absolute() { return LossSpec(LossFamily::absolute); }
    static LossSpec pinball(double tau) { return LossSpec(LossFamily::pinball, {{"tau", tau}}); }
    static LossSpec eps_insensitive(double eps) {
        return LossSpec(LossFamily::eps_insensitive, {{"eps", eps}});
    }

    LossFamily family() const noexcept { return family_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }
    /// |L|_1, the smallest Lipschitz constant in t.
    double lipschitz() const noexcept { return lipschitz_; }
    /// True when t -> L(y, t) is piecewise linear (everything but logistic).
    bool piecewise_linear() const noexcept { return family_ != LossFamily::logistic; }

    double eval(const Point& x, double y, double t) const;
    /// L*(x, y, t) = L(x, y, t) - L(x, y, 0).
    double eval_shifted(const Point& x, double y, double t) const;
    Interval subdifferential(const Point& x, double y, double t) const;

    /// Union of subdifferentials over [t_lo, t_hi]; by monotonicity this is
    /// [lo(t_lo), hi(t_hi)].
    Interval subdifferential_range(double y, double t_lo, double t_hi) const;

    /// argmin_t  scale * L(y, t) + (t - v)^2 / 2, for scale >= 0.
    double prox(double y, double v, double scale) const;

    /// The subgradient s in dL(y, t*) where t* = prox(y, v, scale), i.e. the
    /// unique s with t* = v - scale * s. On linear pieces the slope is returned
    /// exactly. Requires scale > 0.
    double prox_slope(double y, double v, double scale) const;

    /// Second derivative in t; zero for piecewise-linear families away from kinks.
    double curvature(double y, double t) const;

    /// Kinks of t -> L(y, t) in increasing order, with slopes[j] the slope left
    /// of kinks[j] and slopes.back() the slope right of the last kink.
    /// Only meaningful for piecewise-linear families.
    void linear_pieces(double y, std::vector<double>& kinks, std::vector<double>& slopes) const;

    friend bool operator==(const LossSpec&, const LossSpec&) = default;

private:
    void check_label(double y) const;

    LossFamily family_;
    std::map<std::string, double> params_;
    double lipschitz_ = 1.0;
    double tau_ = 0.5;
    double eps_ = 0.0;
};

}  // namespace locsvm
