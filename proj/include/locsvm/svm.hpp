#pragma once

#include <cstddef>
#include <vector>

#include "locsvm/dataset.hpp"
#include "locsvm/kernels.hpp"
#include "locsvm/losses.hpp"

namespace locsvm {

/// Half-width of the t-neighbourhood over which subdifferentials are united
/// when checking the representer certificate. Relative to 1 + |f(x_i)|.
inline constexpr double kKinkSlack = 1e-9;

struct TrainOptions {
    /// Bound on the representer residual (see certify).
    double tol = 1e-6;
    /// Coordinate sweeps before giving up; 0 selects 200 n sqrt(1 + max_i w_i k(x_i, x_i) / 2 lambda).
    std::size_t max_sweeps = 0;
    /// Smallest admissible Gram eigenvalue, relative to max(1, max diagonal).
    double psd_tol = 1e-8;
};

/// f = sum_i alphas[i] k(., support_xs[i]), the minimizer of
/// sum_i w_i L*(x_i, y_i, f(x_i)) + lambda ||f||_H^2.
class TrainedSvm {
public:
    TrainedSvm(KernelSpec kernel, double lambda, std::vector<Point> support_xs,
               std::vector<double> alphas, LossSpec loss, double certificate_residual = 0.0);

    const KernelSpec& kernel() const noexcept { return kernel_; }
    double lambda() const noexcept { return lambda_; }
    const std::vector<Point>& support_xs() const noexcept { return support_xs_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const LossSpec& loss() const noexcept { return loss_; }
    double certificate_residual() const noexcept { return residual_; }

    double predict(const Point& x) const;
    /// sqrt(alpha^T K alpha), clamped at zero.
    double rkhs_norm() const;

    friend bool operator==(const TrainedSvm&, const TrainedSvm&) = default;

private:
    KernelSpec kernel_;
    double lambda_;
    std::vector<Point> support_xs_;
    std::vector<double> alphas_;
    LossSpec loss_;
    double residual_;
};

TrainedSvm train(const Dataset& data, const LossSpec& loss, const KernelSpec& kernel,
                 double lambda, const TrainOptions& options = {});

/// max_i distance of -2 lambda alpha_i / w_i to the subdifferential of L at
/// f(x_i) (united over a kKinkSlack neighbourhood). Zero iff the representer
/// optimality conditions hold. Points with w_i = 0 contribute 2 lambda |alpha_i|.
double certify(const TrainedSvm& model, const Dataset& data);

enum class LossForm { plain, shifted };

/// sum_i w_i L(x_i, y_i, f(x_i)) + lambda alpha^T K alpha, with L or L*.
double objective(const TrainedSvm& model, const Dataset& data, LossForm form = LossForm::shifted);

/// Same objective for raw coefficients on the training inputs.
double objective(const Dataset& data, const LossSpec& loss, const KernelSpec& kernel,
                 double lambda, const std::vector<double>& alphas,
                 LossForm form = LossForm::shifted);

}  // namespace locsvm
