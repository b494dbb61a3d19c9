#include "locsvm/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locsvm/errors.hpp"

namespace locsvm {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError("missing loss parameter '" + key + "'");
    return it->second;
}

// -log(4 s(r) (1 - s(r))) = |r| + 2 log1p(exp(-|r|)) - log 4
double logistic_value(double r) {
    const double a = std::abs(r);
    return a + 2.0 * std::log1p(std::exp(-a)) - 2.0 * std::log(2.0);
}

}  // namespace

std::string_view to_string(LossFamily family) {
    switch (family) {
        case LossFamily::hinge: return "hinge";
        case LossFamily::logistic: return "logistic";
        case LossFamily::pinball: return "pinball";
        case LossFamily::eps_insensitive: return "eps_insensitive";
        case LossFamily::absolute: return "absolute";
    }
    return "unknown";
}

LossFamily loss_family_from_string(std::string_view name) {
    if (name == "hinge") return LossFamily::hinge;
    if (name == "logistic") return LossFamily::logistic;
    if (name == "pinball") return LossFamily::pinball;
    if (name == "eps_insensitive") return LossFamily::eps_insensitive;
    if (name == "absolute") return LossFamily::absolute;
    throw ConfigError("unknown loss family '" + std::string(name) + "'");
}

LossSpec::LossSpec(LossFamily family, std::map<std::string, double> params)
    : family_(family), params_(std::move(params)) {
    switch (family_) {
        case LossFamily::pinball:
            tau_ = param_or(params_, "tau");
            if (!(tau_ > 0.0 && tau_ < 1.0)) throw ConfigError("pinball loss needs tau in (0, 1)");
            lipschitz_ = std::max(tau_, 1.0 - tau_);
            break;
        case LossFamily::eps_insensitive:
            eps_ = param_or(params_, "eps");
            if (!(eps_ >= 0.0) || !std::isfinite(eps_))
                throw ConfigError("eps-insensitive loss needs eps >= 0");
            lipschitz_ = 1.0;
            break;
        default:
            if (!params_.empty())
                throw ConfigError(std::string(to_string(family_)) + " loss takes no parameters");
            lipschitz_ = 1.0;
    }
}

void LossSpec::check_label(double y) const {
    if (!std::isfinite(y)) throw ConfigError("label must be finite");
    if (family_ == LossFamily::hinge && std::abs(y) > 1.0)
        throw ConfigError("hinge loss labels must satisfy |y| <= 1");
}

double LossSpec::eval(const Point& /*x*/, double y, double t) const {
    check_label(y);
    switch (family_) {
        case LossFamily::hinge: return std::max(0.0, 1.0 - y * t);
        case LossFamily::logistic: return logistic_value(y - t);
        case LossFamily::pinball: return t <= y ? tau_ * (y - t) : (1.0 - tau_) * (t - y);
        case LossFamily::eps_insensitive: return std::max(0.0, std::abs(y - t) - eps_);
        case LossFamily::absolute: return std::abs(y - t);
    }
    return 0.0;
}

double LossSpec::eval_shifted(const Point& x, double y, double t) const {
    return eval(x, y, t) - eval(x, y, 0.0);
}

void LossSpec::linear_pieces(double y, std::vector<double>& kinks,
                             std::vector<double>& slopes) const {
    kinks.clear();
    slopes.clear();
    switch (family_) {
        case LossFamily::hinge:
            if (y > 0.0) {
                kinks = {1.0 / y};
                slopes = {-y, 0.0};
            } else if (y < 0.0) {
                kinks = {1.0 / y};
                slopes = {0.0, -y};
            } else {
                slopes = {0.0};
            }
            break;
        case LossFamily::pinball:
            kinks = {y};
            slopes = {-tau_, 1.0 - tau_};
            break;
        case LossFamily::absolute:
            kinks = {y};
            slopes = {-1.0, 1.0};
            break;
        case LossFamily::eps_insensitive:
            if (eps_ == 0.0) {
                kinks = {y};
                slopes = {-1.0, 1.0};
            } else {
                kinks = {y - eps_, y + eps_};
                slopes = {-1.0, 0.0, 1.0};
            }
            break;
        case LossFamily::logistic:
            break;
    }
}

Interval LossSpec::subdifferential(const Point& /*x*/, double y, double t) const {
    check_label(y);
    return subdifferential_range(y, t, t);
}

Interval LossSpec::subdifferential_range(double y, double t_lo, double t_hi) const {
    if (family_ == LossFamily::logistic) {
        return {std::tanh(0.5 * (t_lo - y)), std::tanh(0.5 * (t_hi - y))};
    }
    thread_local std::vector<double> kinks, slopes;
    linear_pieces(y, kinks, slopes);
    auto lower_slope = [&](double t) {
        // left derivative
        std::size_t j = 0;
        while (j < kinks.size() && kinks[j] < t) ++j;
        return slopes[j];
    };
    auto upper_slope = [&](double t) {
        // right derivative
        std::size_t j = 0;
        while (j < kinks.size() && kinks[j] <= t) ++j;
        return slopes[j];
    };
    return {lower_slope(t_lo), upper_slope(t_hi)};
}

double LossSpec::curvature(double y, double t) const {
    if (family_ != LossFamily::logistic) return 0.0;
    const double th = std::tanh(0.5 * (t - y));
    return 0.5 * (1.0 - th * th);
}

double LossSpec::prox(double y, double v, double scale) const {
    if (scale <= 0.0) return v;
    if (family_ == LossFamily::logistic) {
        // root of g(t) = t + scale * tanh((t - y) / 2) - v, increasing in t
        double lo = v - scale, hi = v + scale;
        double t = std::clamp(v, lo, hi);
        for (int it = 0; it < 100; ++it) {
            const double th = std::tanh(0.5 * (t - y));
            const double g = t + scale * th - v;
            if (g == 0.0) return t;
            if (g > 0.0) hi = t; else lo = t;
            const double dg = 1.0 + 0.5 * scale * (1.0 - th * th);
            double next = t - g / dg;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - t) <= 1e-16 * (1.0 + std::abs(t))) return next;
            t = next;
        }
        return t;
    }
    thread_local std::vector<double> kinks, slopes;
    linear_pieces(y, kinks, slopes);
    for (std::size_t j = 0; j < kinks.size(); ++j) {
        const double gap = v - kinks[j];
        if (scale * slopes[j] <= gap && gap <= scale * slopes[j + 1]) return kinks[j];
    }
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        const double t = v - scale * slopes[j];
        const double left = j == 0 ? -std::numeric_limits<double>::infinity() : kinks[j - 1];
        const double right = j == kinks.size() ? std::numeric_limits<double>::infinity() : kinks[j];
        if (t > left && t < right) return t;
    }
    // Only reachable through rounding at a kink boundary.
    return std::clamp(v, kinks.front(), kinks.back());
}

double LossSpec::prox_slope(double y, double v, double scale) const {
    if (family_ == LossFamily::logistic) return (v - prox(y, v, scale)) / scale;
    thread_local std::vector<double> kinks, slopes;
    linear_pieces(y, kinks, slopes);
    for (std::size_t j = 0; j < kinks.size(); ++j) {
        const double gap = v - kinks[j];
        if (scale * slopes[j] <= gap && gap <= scale * slopes[j + 1])
            return std::clamp(gap / scale, slopes[j], slopes[j + 1]);
    }
    for (std::size_t j = 0; j < kinks.size(); ++j)
        if (v - scale * slopes[j] < kinks[j]) return slopes[j];
    return slopes.back();
}

}  // namespace locsvm
