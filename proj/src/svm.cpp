#include "locsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "locsvm/errors.hpp"

namespace locsvm {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double residual_of(const LossSpec& loss, std::span<const double> ys, std::span<const double> ws,
                   double lambda, const VectorXd& alpha, const VectorXd& f) {
    double worst = 0.0;
    for (Index i = 0; i < alpha.size(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        double r;
        if (ws[u] == 0.0) {
            r = 2.0 * lambda * std::abs(alpha(i));
        } else {
            const double s = -2.0 * lambda * alpha(i) / ws[u];
            const double slack = kKinkSlack * (1.0 + std::abs(f(i)));
            r = loss.subdifferential_range(ys[u], f(i) - slack, f(i) + slack).distance(s);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

// Solves A x = b for symmetric positive semidefinite A, falling back to a
// minimum-norm least-squares solution when A is singular.
VectorXd solve_psd(const MatrixXd& a, const VectorXd& b) {
    Eigen::LDLT<MatrixXd> ldlt(a);
    if (ldlt.info() == Eigen::Success) {
        VectorXd x = ldlt.solve(b);
        if (x.allFinite() && (a * x - b).norm() <= 1e-10 * (1.0 + b.norm())) return x;
    }
    return a.completeOrthogonalDecomposition().solve(b);
}

class Solver {
public:
    Solver(const Dataset& data, const LossSpec& loss, double lambda, MatrixXd gram)
        : loss_(loss), ys_(data.ys()), ws_(data.weights()), lambda_(lambda), k_(std::move(gram)) {
        n_ = k_.rows();
        coef_.resize(n_);
        for (Index i = 0; i < n_; ++i) coef_(i) = ws_[static_cast<std::size_t>(i)] / (2.0 * lambda_);
        s_ = VectorXd::Zero(n_);
        alpha_ = VectorXd::Zero(n_);
        f_ = VectorXd::Zero(n_);
    }

    double max_curvature() const {
        double c = 0.0;
        for (Index i = 0; i < n_; ++i) c = std::max(c, coef_(i) * k_(i, i));
        return c;
    }

    // One pass of exact coordinate maximisation of the dual in index order.
    void sweep() {
        for (Index i = 0; i < n_; ++i) {
            const double y = ys_[static_cast<std::size_t>(i)];
            const double a = coef_(i) * k_(i, i);
            const double f_minus = f_(i) + a * s_(i);
            double s_new;
            if (a > 0.0) {
                s_new = loss_.prox_slope(y, f_minus, a);
            } else {
                s_new = loss_.subdifferential_range(y, f_minus, f_minus).project(s_(i));
            }
            if (s_new == s_(i)) continue;
            const double d_alpha = -coef_(i) * (s_new - s_(i));
            s_(i) = s_new;
            alpha_(i) += d_alpha;
            f_.noalias() += d_alpha * k_.col(i);
        }
    }

    double certificate(const VectorXd& alpha) const {
        const VectorXd f = k_ * alpha;
        return residual_of(loss_, ys_, ws_, lambda_, alpha, f);
    }

    const VectorXd& alpha() const { return alpha_; }

    // Re-solves the current active set exactly: coordinates whose subgradient
    // sits strictly inside a kink interval must predict exactly that kink,
    // all others keep their slope. Returns the polished coefficients.
    VectorXd polish_piecewise() const {
        std::vector<Index> free;
        std::vector<double> targets;
        std::vector<double> kinks, slopes;
        VectorXd alpha = alpha_;
        for (Index i = 0; i < n_; ++i) {
            if (coef_(i) == 0.0) {
                alpha(i) = 0.0;
                continue;
            }
            loss_.linear_pieces(ys_[static_cast<std::size_t>(i)], kinks, slopes);
            const double s = s_(i);
            bool on_slope = false;
            for (double sl : slopes) on_slope = on_slope || s == sl;
            if (on_slope) {
                alpha(i) = -coef_(i) * s;
                continue;
            }
            for (std::size_t j = 0; j < kinks.size(); ++j) {
                if (slopes[j] < s && s < slopes[j + 1]) {
                    free.push_back(i);
                    targets.push_back(kinks[j]);
                    break;
                }
            }
        }
        if (free.empty()) return alpha;
        const auto m = static_cast<Index>(free.size());
        MatrixXd kff(m, m);
        VectorXd rhs(m);
        for (Index r = 0; r < m; ++r) {
            for (Index c = 0; c < m; ++c) kff(r, c) = k_(free[r], free[c]);
            rhs(r) = targets[static_cast<std::size_t>(r)];
        }
        std::vector<char> is_free(static_cast<std::size_t>(n_), 0);
        for (Index i : free) is_free[static_cast<std::size_t>(i)] = 1;
        for (Index r = 0; r < m; ++r) {
            double acc = 0.0;
            for (Index j = 0; j < n_; ++j)
                if (!is_free[static_cast<std::size_t>(j)]) acc += k_(free[r], j) * alpha(j);
            rhs(r) -= acc;
        }
        const VectorXd sol = solve_psd(kff, rhs);
        for (Index r = 0; r < m; ++r) {
            const Index i = free[r];
            loss_.linear_pieces(ys_[static_cast<std::size_t>(i)], kinks, slopes);
            // keep the subgradient inside the interval it was classified into
            double lo = slopes.front(), hi = slopes.back();
            for (std::size_t j = 0; j < kinks.size(); ++j)
                if (kinks[j] == targets[static_cast<std::size_t>(r)]) {
                    lo = slopes[j];
                    hi = slopes[j + 1];
                }
            const double s = std::clamp(-sol(r) / coef_(i), lo, hi);
            alpha(i) = std::isfinite(sol(r)) ? -coef_(i) * s : alpha_(i);
        }
        return alpha;
    }

    // Newton iterations on 2 lambda alpha + w .* L'(K alpha) = 0 for smooth losses.
    VectorXd polish_smooth() const {
        VectorXd alpha = alpha_;
        auto residual_vec = [&](const VectorXd& a, const VectorXd& f) {
            VectorXd g(n_);
            for (Index i = 0; i < n_; ++i) {
                const double y = ys_[static_cast<std::size_t>(i)];
                g(i) = 2.0 * lambda_ * a(i) +
                       ws_[static_cast<std::size_t>(i)] * loss_.subdifferential_range(y, f(i), f(i)).lo;
            }
            return g;
        };
        VectorXd f = k_ * alpha;
        VectorXd g = residual_vec(alpha, f);
        for (int it = 0; it < 50 && g.lpNorm<Eigen::Infinity>() > 0.0; ++it) {
            MatrixXd jac = k_;
            for (Index i = 0; i < n_; ++i) {
                const double y = ys_[static_cast<std::size_t>(i)];
                jac.row(i) *= ws_[static_cast<std::size_t>(i)] * loss_.curvature(y, f(i));
                jac(i, i) += 2.0 * lambda_;
            }
            const VectorXd step = jac.partialPivLu().solve(-g);
            if (!step.allFinite()) break;
            double t = 1.0;
            bool improved = false;
            for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
                const VectorXd cand = alpha + t * step;
                const VectorXd fc = k_ * cand;
                const VectorXd gc = residual_vec(cand, fc);
                if (gc.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>()) {
                    alpha = cand;
                    f = fc;
                    g = gc;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        return alpha;
    }

private:
    const LossSpec& loss_;
    std::span<const double> ys_;
    std::span<const double> ws_;
    double lambda_;
    MatrixXd k_;
    Index n_ = 0;
    VectorXd coef_;
    VectorXd s_;
    VectorXd alpha_;
    VectorXd f_;
};

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TrainedSvm::TrainedSvm(KernelSpec kernel, double lambda, std::vector<Point> support_xs,
                       std::vector<double> alphas, LossSpec loss, double certificate_residual)
    : kernel_(std::move(kernel)),
      lambda_(lambda),
      support_xs_(std::move(support_xs)),
      alphas_(std::move(alphas)),
      loss_(std::move(loss)),
      residual_(certificate_residual) {
    if (!(lambda_ > 0.0)) throw ConfigError("lambda must be positive");
    if (support_xs_.size() != alphas_.size())
        throw ConfigError("support points and coefficients differ in length");
}

double TrainedSvm::predict(const Point& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < alphas_.size(); ++i) acc += alphas_[i] * kernel_.eval(x, support_xs_[i]);
    return acc;
}

double TrainedSvm::rkhs_norm() const {
    const auto k = gram_matrix(kernel_, support_xs_);
    const Eigen::Map<const VectorXd> a(alphas_.data(), static_cast<Index>(alphas_.size()));
    return std::sqrt(std::max(0.0, a.dot(k * a)));
}

TrainedSvm train(const Dataset& data, const LossSpec& loss, const KernelSpec& kernel, double lambda,
                 const TrainOptions& options) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
    if (!(options.tol > 0.0)) throw ConfigError("tol must be positive");
    for (double y : data.ys()) loss.eval(data.xs().front(), y, 0.0);  // label validation

    MatrixXd gram = gram_matrix(kernel, data.xs());
    const Index n = gram.rows();
    {
        const double scale = std::max(1.0, gram.diagonal().maxCoeff());
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < -options.psd_tol * scale)
            throw NumericError("Gram matrix is not positive semidefinite within tolerance");
    }

    Solver solver(data, loss, lambda, std::move(gram));
    std::size_t budget = options.max_sweeps;
    if (budget == 0) {
        const double cond = 1.0 + solver.max_curvature();
        budget = static_cast<std::size_t>(200.0 * static_cast<double>(n) * std::ceil(std::sqrt(cond)));
        budget = std::clamp<std::size_t>(budget, 1000, 200000);
    }

    const double target = options.tol * 1e-3;
    VectorXd best = solver.alpha();
    double best_res = solver.certificate(best);
    auto consider = [&](const VectorXd& cand) {
        const double r = solver.certificate(cand);
        if (r < best_res) {
            best_res = r;
            best = cand;
        }
    };

    std::size_t check_every = 1;
    for (std::size_t sweep = 0; sweep < budget && best_res > target; ++sweep) {
        solver.sweep();
        if ((sweep + 1) % check_every != 0) continue;
        consider(solver.alpha());
        consider(loss.piecewise_linear() ? solver.polish_piecewise() : solver.polish_smooth());
        check_every = std::min<std::size_t>(check_every * 2, 16);
    }
    if (best_res > options.tol)
        throw SolverError("solver did not reach the certificate tolerance", best_res);

    return TrainedSvm(kernel, lambda, data.xs(), to_std(best), loss, best_res);
}

double certify(const TrainedSvm& model, const Dataset& data) {
    if (model.support_xs().size() != data.size())
        throw ConfigError("certify: model and data sizes differ");
    const auto gram = gram_matrix(model.kernel(), data.xs());
    const Eigen::Map<const VectorXd> a(model.alphas().data(), static_cast<Index>(model.alphas().size()));
    const VectorXd alpha = a;
    const VectorXd f = gram * alpha;
    return residual_of(model.loss(), data.ys(), data.weights(), model.lambda(), alpha, f);
}

double objective(const Dataset& data, const LossSpec& loss, const KernelSpec& kernel, double lambda,
                 const std::vector<double>& alphas, LossForm form) {
    const auto gram = gram_matrix(kernel, data.xs());
    const Eigen::Map<const VectorXd> a(alphas.data(), static_cast<Index>(alphas.size()));
    const VectorXd f = gram * a;
    double risk = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& x = data.xs()[i];
        const double l = form == LossForm::plain ? loss.eval(x, data.ys()[i], f(static_cast<Index>(i)))
                                                 : loss.eval_shifted(x, data.ys()[i], f(static_cast<Index>(i)));
        risk += data.weights()[i] * l;
    }
    return risk + lambda * a.dot(f);
}

double objective(const TrainedSvm& model, const Dataset& data, LossForm form) {
    return objective(data, model.loss(), model.kernel(), model.lambda(), model.alphas(), form);
}

}  // namespace locsvm
