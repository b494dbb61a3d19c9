#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "locsvm/types.hpp"

namespace locsvm {

enum class KernelFamily { gaussian_rbf, laplacian, linear_bounded };

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// Finite point sample with nonnegative weights summing to one; the
/// empirical stand-in for a marginal distribution on X.
struct WeightedPoints {
    std::vector<Point> points;
    std::vector<double> weights;
};

/// Bounded kernel k(x, x'), optionally multiplied by a positive scale c, so
/// that c k is again a kernel with ||c k||_inf = sqrt(c) ||k||_inf.
///
/// gaussian_rbf(gamma):        exp(-gamma ||x - x'||^2)
/// laplacian(gamma):           exp(-gamma ||x - x'||)
/// linear_bounded(domain_radius R): <x, x'> on the ball ||x|| <= R
class KernelSpec {
public:
    explicit KernelSpec(KernelFamily family, std::map<std::string, double> params);

    static KernelSpec gaussian(double gamma) {
        return KernelSpec(KernelFamily::gaussian_rbf, {{"gamma", gamma}});
    }
    static KernelSpec laplacian(double gamma) {
        return KernelSpec(KernelFamily::laplacian, {{"gamma", gamma}});
    }
    static KernelSpec linear_bounded(double radius) {
        return KernelSpec(KernelFamily::linear_bounded, {{"domain_radius", radius}});
    }

    /// Same kernel multiplied by factor > 0.
    KernelSpec scaled(double factor) const;

    KernelFamily family() const noexcept { return family_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }
    /// ||k||_inf = sup_x sqrt(k(x, x)).
    double sup_norm() const noexcept { return sup_norm_; }

    /// Throws DomainError when x is not admissible (only linear_bounded restricts X).
    void check_point(const Point& x) const;
    double eval(const Point& x1, const Point& x2) const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    KernelFamily family_;
    std::map<std::string, double> params_;
    double gamma_ = 1.0;
    double radius_ = 1.0;
    double scale_ = 1.0;
    double sup_norm_ = 1.0;
};

/// Gram matrix K(i, j) = k(rows[i], cols[j]), filled in row-major index order.
Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const Point> rows,
                            std::span<const Point> cols);
Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const Point> points);

/// max over grid x grid of |k1 - k2|. This is a lower estimate of the true
/// supremum over X; it is exact only when the supremum is attained on the grid.
double kernel_sup_diff(const KernelSpec& k1, const KernelSpec& k2, std::span<const Point> grid);

/// L_p(Q (x) Q) norm of k1 - k2 for the empirical measure Q given by xs.
double kernel_lp_diff(const KernelSpec& k1, const KernelSpec& k2, double p,
                      const WeightedPoints& xs);

}  // namespace locsvm
