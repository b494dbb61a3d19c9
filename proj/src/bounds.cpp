#include "locsvm/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "locsvm/errors.hpp"
#include "locsvm/localized.hpp"

namespace locsvm {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be finite and >= 0");
}

void check_inputs(double lipschitz, const RegionInputs& in) {
    require_nonnegative(lipschitz, "lipschitz");
    require_nonnegative(in.kappa, "kappa");
    require_nonnegative(in.tv, "tv");
    require_nonnegative(in.dlambda, "dlambda");
    require_nonnegative(in.kernel_diff, "kernel difference");
    require_nonnegative(in.mass, "mass");
    if (!(in.tau > 0.0)) throw ConfigError("tau must be positive");
}

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be finite and >= 1");
}

// Terms of the single-SVM bound, already multiplied by |L|_1 / tau.
std::map<std::string, double> svm_terms(double lipschitz, const RegionInputs& in) {
    const double c = lipschitz / in.tau;
    const double k2 = in.kappa * in.kappa;
    return {{"tv_term", c * k2 * in.tv},
            {"lambda_term", c * k2 / in.tau * in.dlambda},
            {"kernel_term", c * 0.5 * in.kernel_diff},
            {"kernel_sqrt_term", c * in.kappa * std::sqrt(in.kernel_diff)},
            {"dreg_term", 0.0}};
}

double sum_terms(const std::map<std::string, double>& terms) {
    double s = 0.0;
    for (const auto& name : kTermNames) s += terms.at(name);
    return s;
}

BoundReport global_report(Theorem th, double lipschitz, const RegionInputs& in, double p) {
    check_inputs(lipschitz, in);
    BoundReport r;
    r.theorem = th;
    r.p = p;
    r.terms = svm_terms(lipschitz, in);
    r.total = sum_terms(r.terms);
    r.digest = {{"kappa", in.kappa}, {"tau", in.tau}};
    return r;
}

std::vector<double> column(std::span<const RegionInputs> regions, double RegionInputs::*field) {
    std::vector<double> out;
    for (const auto& r : regions) out.push_back(r.*field);
    return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::size_t i) {
    return v.size() == 1 ? v.front() : v.at(i);
}

}  // namespace

std::string_view to_string(Theorem t) {
    switch (t) {
        case Theorem::global_sup: return "global_sup";
        case Theorem::global_lp: return "global_lp";
        case Theorem::localized_sup: return "localized_sup";
        case Theorem::localized_lp: return "localized_lp";
        case Theorem::diff_region_l1: return "diff_region_l1";
    }
    return "unknown";
}

double BoundReport::term(const std::string& name) const {
    auto it = terms.find(name);
    return it == terms.end() ? 0.0 : it->second;
}

double BoundReport::sum_of_terms() const {
    double s = 0.0;
    for (const auto& name : kTermNames) s += term(name);
    return s;
}

BoundReport bound_global_sup(double lipschitz, double kappa, double tau, double tv, double dlambda,
                             double ksup_diff) {
    return global_report(Theorem::global_sup, lipschitz, {kappa, tau, tv, dlambda, ksup_diff, 1.0}, 0.0);
}

BoundReport bound_global_lp(double lipschitz, double kappa, double tau, double tv, double dlambda,
                            double klp_diff, double p) {
    check_p(p);
    return global_report(Theorem::global_lp, lipschitz, {kappa, tau, tv, dlambda, klp_diff, 1.0}, p);
}

BoundReport bound_localized_sup(double lipschitz, std::span<const RegionInputs> regions) {
    if (regions.empty()) throw ConfigError("need at least one region");
    BoundReport r;
    r.theorem = Theorem::localized_sup;
    std::vector<double> totals;
    std::size_t arg = 0;
    for (std::size_t b = 0; b < regions.size(); ++b) {
        check_inputs(lipschitz, regions[b]);
        totals.push_back(sum_terms(svm_terms(lipschitz, regions[b])));
        if (totals[b] > totals[arg]) arg = b;
    }
    r.terms = svm_terms(lipschitz, regions[arg]);
    r.total = totals[arg];
    r.vectors = {{"region_total", totals},
                 {"kappa_b", column(regions, &RegionInputs::kappa)},
                 {"tau_b", column(regions, &RegionInputs::tau)}};
    return r;
}

BoundReport bound_localized_lp(double lipschitz, std::span<const RegionInputs> regions, double p) {
    if (regions.empty()) throw ConfigError("need at least one region");
    check_p(p);
    BoundReport r;
    r.theorem = Theorem::localized_lp;
    r.p = p;
    for (const auto& name : kTermNames) r.terms[name] = 0.0;
    std::vector<double> totals;
    for (const auto& in : regions) {
        check_inputs(lipschitz, in);
        const double weight = std::pow(in.mass, 1.0 / p);
        double region_total = 0.0;
        for (const auto& [name, value] : svm_terms(lipschitz, in)) {
            r.terms[name] += weight * value;
            region_total += weight * value;
        }
        totals.push_back(region_total);
    }
    r.total = sum_terms(r.terms);
    r.vectors = {{"region_total", totals},
                 {"kappa_b", column(regions, &RegionInputs::kappa)},
                 {"tau_b", column(regions, &RegionInputs::tau)},
                 {"mass_b", column(regions, &RegionInputs::mass)}};
    return r;
}

BoundReport bound_diff_region_l1(const PartitionSide& first, const PartitionSide& second,
                                 const LossSpec& loss, bool anchor_second) {
    const PartitionSide& one = anchor_second ? second : first;
    const PartitionSide& two = anchor_second ? first : second;
    if (!one.data || !one.regions || !two.data || !two.regions)
        throw ConfigError("bound_diff_region_l1: missing data or regionalization");
    const auto& r1 = *one.regions;
    const auto& r2 = *two.regions;
    auto check_side = [](const PartitionSide& s) {
        const auto n = s.regions->size();
        if ((s.lambdas.size() != 1 && s.lambdas.size() != n) || (s.kernels.size() != 1 && s.kernels.size() != n))
            throw ConfigError("lambdas and kernels must be scalars or one per cell");
        for (double l : s.lambdas)
            if (!(l > 0.0)) throw ConfigError("lambda must be positive");
    };
    check_side(one);
    check_side(two);

    const auto structure = intersect(r1, r2);
    const auto q1 = one.data->marginal();
    const auto q2 = two.data->marginal();
    for (std::size_t b = 0; b < structure.pieces.size(); ++b) {
        if (mass(q1, structure.pieces[b]) <= 0.0 || mass(q2, structure.pieces[b]) <= 0.0)
            throw RegionError("intersection piece " + std::to_string(b) + " has zero mass", b);
    }

    const double lip = loss.lipschitz();
    BoundReport r;
    r.theorem = Theorem::diff_region_l1;
    r.p = 1.0;
    for (const auto& name : kTermNames) r.terms[name] = 0.0;

    std::vector<double> tv_a;
    for (std::size_t a = 0; a < r2.size(); ++a) {
        const auto& region = r2.regions()[a];
        const double m = mass(q1, region);
        const auto& k = pick(two.kernels, a);
        const double tv = tv_distance(restrict(*one.data, region), restrict(*two.data, region));
        tv_a.push_back(tv);
        r.terms["tv_term"] += lip * m * k.sup_norm() * k.sup_norm() / pick(two.lambdas, a) * tv;
    }

    std::vector<double> kappa_b, tau_b, rho_b, dreg_b, kdiff_b, mass_b;
    for (std::size_t b = 0; b < structure.pieces.size(); ++b) {
        const std::size_t a1 = structure.a1[b], a2 = structure.a2[b];
        const auto& k1 = pick(one.kernels, a1);
        const auto& k2 = pick(two.kernels, a2);
        const double l1 = pick(one.lambdas, a1), l2 = pick(two.lambdas, a2);
        const double kappa = std::max(k1.sup_norm(), k2.sup_norm());
        const double tau = std::min(l1, l2);
        const double rho = std::max(mass(q1, r1.regions()[a1]), mass(q1, r2.regions()[a2]));
        const double piece_mass = mass(q1, structure.pieces[b]);
        const double kdiff =
            kernel_lp_diff(k1, k2, 1.0, restrict(*one.data, structure.pieces[b]).marginal());
        const double dreg = d_reg(q1, r1, r2, structure, b);

        r.terms["lambda_term"] += lip * rho * kappa * kappa / (tau * tau) * std::abs(l1 - l2);
        r.terms["kernel_term"] += lip * piece_mass * 0.5 / tau * kdiff;
        r.terms["kernel_sqrt_term"] += lip * piece_mass * kappa / tau * std::sqrt(kdiff);
        r.terms["dreg_term"] += lip * rho * kappa * kappa / tau * dreg;

        kappa_b.push_back(kappa);
        tau_b.push_back(tau);
        rho_b.push_back(rho);
        dreg_b.push_back(dreg);
        kdiff_b.push_back(kdiff);
        mass_b.push_back(piece_mass);
    }
    r.total = sum_terms(r.terms);
    r.digest = {{"anchor", anchor_second ? 2.0 : 1.0}};
    r.vectors = {{"kappa_b", kappa_b}, {"tau_b", tau_b},     {"rho_1b", rho_b},   {"dreg_b", dreg_b},
                 {"kernel_l1_b", kdiff_b}, {"piece_mass", mass_b}, {"tv_a", tv_a}};
    return r;
}

double tv_distance(const Dataset& d1, const Dataset& d2) {
    using Key = std::vector<std::uint64_t>;
    auto key = [](const Point& x, double y) {
        Key k;
        k.reserve(x.size() + 1);
        for (double v : x) k.push_back(std::bit_cast<std::uint64_t>(v));
        k.push_back(std::bit_cast<std::uint64_t>(y));
        return k;
    };
    std::map<Key, double> atoms;
    for (std::size_t i = 0; i < d1.size(); ++i) atoms[key(d1.xs()[i], d1.ys()[i])] += d1.weights()[i];
    for (std::size_t i = 0; i < d2.size(); ++i) atoms[key(d2.xs()[i], d2.ys()[i])] -= d2.weights()[i];
    // Neumaier summation keeps sums like n * (1/n) at their rounded value
    double sum = 0.0, comp = 0.0;
    for (const auto& [k, m] : atoms) {
        const double v = std::abs(m);
        const double t = sum + v;
        comp += std::abs(sum) >= v ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return std::clamp(sum + comp, 0.0, 2.0);
}

double empirical_sup_diff(const Predictor& f1, const Predictor& f2, std::span<const Point> grid) {
    if (grid.empty()) throw std::invalid_argument("empirical_sup_diff: empty grid");
    double m = 0.0;
    for (const auto& x : grid) m = std::max(m, std::abs(f1(x) - f2(x)));
    return m;
}

double empirical_lp_diff(const Predictor& f1, const Predictor& f2, double p, const WeightedPoints& xs) {
    if (!(p >= 1.0)) throw std::invalid_argument("empirical_lp_diff: p must be >= 1");
    if (xs.points.empty()) throw std::invalid_argument("empirical_lp_diff: empty sample");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.points.size(); ++i)
        acc += xs.weights[i] * std::pow(std::abs(f1(xs.points[i]) - f2(xs.points[i])), p);
    return std::pow(acc, 1.0 / p);
}

std::string bound_csv_header() {
    std::string h = "theorem,p,total";
    for (const auto& name : kTermNames) h += "," + name;
    return h;
}

std::string bound_csv_row(const BoundReport& r) {
    char buf[64];
    std::string row(to_string(r.theorem));
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", r.p, r.total);
    row += buf;
    for (const auto& name : kTermNames) {
        std::snprintf(buf, sizeof buf, ",%.17g", r.term(name));
        row += buf;
    }
    return row;
}

}  // namespace locsvm
