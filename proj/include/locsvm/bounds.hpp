#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locsvm/dataset.hpp"
#include "locsvm/kernels.hpp"
#include "locsvm/losses.hpp"
#include "locsvm/regions.hpp"

namespace locsvm {

enum class Theorem { global_sup, global_lp, localized_sup, localized_lp, diff_region_l1 };

std::string_view to_string(Theorem t);

/// Names of the additive terms every report carries, in CSV column order.
inline const std::vector<std::string> kTermNames{"tv_term", "lambda_term", "kernel_term",
                                                 "kernel_sqrt_term", "dreg_term"};

/// A stability bound with its additive decomposition. For the max-composed
/// localized sup bound the terms are those of the maximizing region.
struct BoundReport {
    Theorem theorem = Theorem::global_sup;
    double total = 0.0;
    double p = 0.0;  // 0 for supremum-norm bounds
    std::map<std::string, double> terms;
    /// kappa and tau for the global bounds.
    std::map<std::string, double> digest;
    /// Per-region or per-piece vectors (kappa_b, tau_b, rho_1b, region_total, ...).
    std::map<std::string, std::vector<double>> vectors;

    double term(const std::string& name) const;
    double sum_of_terms() const;
};

/// The empirical ingredients of the single-model bounds for one region
/// (or for the whole space).
struct RegionInputs {
    double kappa = 1.0;
    double tau = 1.0;
    double tv = 0.0;
    double dlambda = 0.0;
    double kernel_diff = 0.0;
    double mass = 1.0;
};

/// sup-norm stability of SVMs:
/// |L|_1 / tau * (kappa^2 tv + kappa^2 / tau dlambda + ksup / 2 + kappa sqrt(ksup)).
BoundReport bound_global_sup(double lipschitz, double kappa, double tau, double tv, double dlambda,
                             double ksup_diff);

/// L_p-norm stability of SVMs; same shape with the L_p kernel difference.
BoundReport bound_global_lp(double lipschitz, double kappa, double tau, double tv, double dlambda,
                            double klp_diff, double p);

/// Localized SVMs on a shared regionalization, sup norm: max over regions of the global sup bound.
BoundReport bound_localized_sup(double lipschitz, std::span<const RegionInputs> regions);

/// Localized SVMs on a shared regionalization, L_p norm:
/// |L|_1 sum_b mass_b^(1/p) (kappa_b^2/tau_b tv_b + kappa_b^2/tau_b^2 dlambda_b
///                          + klp_b / (2 tau_b) + kappa_b / tau_b sqrt(klp_b)).
BoundReport bound_localized_lp(double lipschitz, std::span<const RegionInputs> regions, double p);

/// One side of a comparison between localized SVMs on partitions.
struct PartitionSide {
    const Dataset* data = nullptr;
    const Regionalization* regions = nullptr;
    /// One value per cell, or a single shared value.
    std::vector<double> lambdas;
    std::vector<KernelSpec> kernels;
};

/// L_1(P_anchor^X) bound for localized SVMs on two different partitions.
/// With anchor_second the roles of the two sides are interchanged, bounding
/// the L_1(P_2^X) norm instead. Throws RegionError when an intersection
/// piece has zero mass under either measure.
BoundReport bound_diff_region_l1(const PartitionSide& first, const PartitionSide& second,
                                 const LossSpec& loss, bool anchor_second = false);

/// Total variation |P1 - P2|(X x Y) of two empirical measures; atoms are
/// matched by bit-exact equality of (x, y).
double tv_distance(const Dataset& d1, const Dataset& d2);

using Predictor = std::function<double(const Point&)>;

/// max over the grid of |f1 - f2|.
double empirical_sup_diff(const Predictor& f1, const Predictor& f2, std::span<const Point> grid);

/// (sum_i w_i |f1(x_i) - f2(x_i)|^p)^(1/p).
double empirical_lp_diff(const Predictor& f1, const Predictor& f2, double p, const WeightedPoints& xs);

std::string bound_csv_header();
/// Comma-separated theorem, total and the kTermNames columns.
std::string bound_csv_row(const BoundReport& r);

}  // namespace locsvm
