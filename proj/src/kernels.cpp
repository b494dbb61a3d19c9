#include "locsvm/kernels.hpp"

#include <cmath>

#include "locsvm/errors.hpp"

namespace locsvm {

namespace {

double required(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError("missing kernel parameter '" + key + "'");
    return it->second;
}

void check_dims(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw DomainError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}

double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::gaussian_rbf: return "gaussian_rbf";
        case KernelFamily::laplacian: return "laplacian";
        case KernelFamily::linear_bounded: return "linear_bounded";
    }
    return "unknown";
}

KernelFamily kernel_family_from_string(std::string_view name) {
    if (name == "gaussian_rbf") return KernelFamily::gaussian_rbf;
    if (name == "laplacian") return KernelFamily::laplacian;
    if (name == "linear_bounded") return KernelFamily::linear_bounded;
    throw ConfigError("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec::KernelSpec(KernelFamily family, std::map<std::string, double> params)
    : family_(family), params_(std::move(params)) {
    if (auto it = params_.find("scale"); it != params_.end()) {
        scale_ = it->second;
        if (!(scale_ > 0.0) || !std::isfinite(scale_))
            throw ConfigError("kernel scale must be positive and finite");
    }
    switch (family_) {
        case KernelFamily::gaussian_rbf:
        case KernelFamily::laplacian:
            gamma_ = required(params_, "gamma");
            if (!(gamma_ > 0.0) || !std::isfinite(gamma_))
                throw ConfigError("kernel gamma must be positive and finite");
            sup_norm_ = std::sqrt(scale_);
            break;
        case KernelFamily::linear_bounded:
            radius_ = required(params_, "domain_radius");
            if (!(radius_ > 0.0) || !std::isfinite(radius_))
                throw ConfigError("linear_bounded kernel needs domain_radius > 0");
            sup_norm_ = std::sqrt(scale_) * radius_;
            break;
    }
}

KernelSpec KernelSpec::scaled(double factor) const {
    auto p = params_;
    p["scale"] = scale_ * factor;
    return KernelSpec(family_, std::move(p));
}

void KernelSpec::check_point(const Point& x) const {
    if (family_ != KernelFamily::linear_bounded) return;
    double s = 0.0;
    for (double v : x) s += v * v;
    if (std::sqrt(s) > radius_)
        throw DomainError("point outside the linear_bounded kernel domain");
}

double KernelSpec::eval(const Point& x1, const Point& x2) const {
    check_dims(x1, x2);
    switch (family_) {
        case KernelFamily::gaussian_rbf:
            return scale_ * std::exp(-gamma_ * squared_distance(x1, x2));
        case KernelFamily::laplacian:
            return scale_ * std::exp(-gamma_ * std::sqrt(squared_distance(x1, x2)));
        case KernelFamily::linear_bounded: {
            check_point(x1);
            check_point(x2);
            double s = 0.0;
            for (std::size_t i = 0; i < x1.size(); ++i) s += x1[i] * x2[i];
            return scale_ * s;
        }
    }
    return 0.0;
}

Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const Point> rows,
                            std::span<const Point> cols) {
    Eigen::MatrixXd g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k.eval(rows[i], cols[j]);
    return g;
}

Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const Point> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = k.eval(points[i], points[i]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = k.eval(points[i], points[j]);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

double kernel_sup_diff(const KernelSpec& k1, const KernelSpec& k2, std::span<const Point> grid) {
    if (grid.empty()) throw std::invalid_argument("kernel_sup_diff: empty grid");
    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j)
            best = std::max(best, std::abs(k1.eval(grid[i], grid[j]) - k2.eval(grid[i], grid[j])));
    return best;
}

double kernel_lp_diff(const KernelSpec& k1, const KernelSpec& k2, double p,
                      const WeightedPoints& xs) {
    if (!(p >= 1.0)) throw std::invalid_argument("kernel_lp_diff: p must be >= 1");
    if (xs.points.empty()) throw std::invalid_argument("kernel_lp_diff: empty sample");
    if (xs.points.size() != xs.weights.size())
        throw std::invalid_argument("kernel_lp_diff: weights/points size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.points.size(); ++i) {
        if (xs.weights[i] == 0.0) continue;
        for (std::size_t j = 0; j < xs.points.size(); ++j) {
            const double d = std::abs(k1.eval(xs.points[i], xs.points[j]) -
                                      k2.eval(xs.points[i], xs.points[j]));
            acc += xs.weights[i] * xs.weights[j] * std::pow(d, p);
        }
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace locsvm
