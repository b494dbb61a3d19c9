#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "locsvm/errors.hpp"
#include "locsvm/kernels.hpp"

using namespace locsvm;

namespace {

// Enumerates grid x grid directly, independently of kernel_sup_diff.
double brute_sup(const KernelSpec& a, const KernelSpec& b, const std::vector<Point>& grid) {
    double m = 0.0;
    for (const auto& x : grid)
        for (const auto& z : grid) m = std::max(m, std::abs(a.eval(x, z) - b.eval(x, z)));
    return m;
}

}  // namespace

TEST_CASE("kernel values") {
    const auto g1 = KernelSpec::gaussian(1.0);
    CHECK(g1.eval({0.0}, {0.0}) == 1.0);
    CHECK(g1.eval({0.0}, {1.0}) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(KernelSpec::laplacian(2.0).eval({0.0}, {0.5}) == doctest::Approx(std::exp(-1.0)));
    CHECK(KernelSpec::linear_bounded(2.0).eval({1.0, 0.5}, {0.5, -1.0}) == doctest::Approx(0.0));
}

TEST_CASE("sup norms") {
    CHECK(KernelSpec::gaussian(3.0).sup_norm() == 1.0);
    CHECK(KernelSpec::laplacian(0.1).sup_norm() == 1.0);
    CHECK(KernelSpec::linear_bounded(2.5).sup_norm() == 2.5);
    CHECK(KernelSpec::gaussian(1.0).scaled(4.0).sup_norm() == 2.0);
}

TEST_CASE("kernel errors") {
    CHECK_THROWS_AS(KernelSpec::gaussian(1.0).eval({0.0}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(KernelSpec::linear_bounded(1.0).eval({2.0}, {0.0}), DomainError);
    CHECK_THROWS_AS(KernelSpec::gaussian(0.0), ConfigError);
    CHECK_THROWS_AS(KernelSpec(KernelFamily::laplacian, {}), ConfigError);
    CHECK_THROWS(kernel_sup_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(2.0), {}));
    WeightedPoints empty;
    CHECK_THROWS(kernel_lp_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(2.0), 1.0, empty));
    WeightedPoints one{{{0.0}}, {1.0}};
    CHECK_THROWS(kernel_lp_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(2.0), 0.5, one));
}

TEST_CASE("kernel_sup_diff reference values") {
    const std::vector<Point> g01{{0.0}, {1.0}};
    CHECK(kernel_sup_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(1.0), g01) == 0.0);
    CHECK(kernel_sup_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(2.0), g01) ==
          doctest::Approx(0.23254415793482963).epsilon(1e-14));
    const std::vector<Point> g05{{0.0}, {0.5}};
    CHECK(kernel_sup_diff(KernelSpec::gaussian(1.0), KernelSpec::laplacian(1.0), g05) ==
          doctest::Approx(0.17227012335877145).epsilon(1e-14));
}

TEST_CASE("kernel_lp_diff reference values") {
    WeightedPoints xs{{{0.0}, {1.0}}, {0.5, 0.5}};
    CHECK(kernel_lp_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(1.0), 2.0, xs) == 0.0);
    CHECK(kernel_lp_diff(KernelSpec::gaussian(1.0), KernelSpec::gaussian(2.0), 1.0, xs) ==
          doctest::Approx(0.11627207896741482).epsilon(1e-14));
    WeightedPoints single{{{0.0}}, {1.0}};
    CHECK(kernel_lp_diff(KernelSpec::gaussian(1.0), KernelSpec::laplacian(3.0), 1.0, single) == 0.0);
}

TEST_CASE("property: symmetry, positive semidefiniteness, scaling") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> size(1, 8), dim(1, 3);
    const std::vector<KernelSpec> kernels{KernelSpec::gaussian(0.5), KernelSpec::gaussian(20.0),
                                          KernelSpec::laplacian(2.0), KernelSpec::linear_bounded(2.0)};
    for (int trial = 0; trial < 300; ++trial) {
        const int n = size(rng), d = dim(rng);
        std::vector<Point> pts(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(d)));
        for (auto& p : pts)
            for (auto& v : p) v = u(rng);
        for (const auto& k : kernels) {
            const auto g = gram_matrix(k, pts);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    CHECK(k.eval(pts[i], pts[j]) == k.eval(pts[j], pts[i]));
                    CHECK(std::abs(g(i, j)) <= k.sup_norm() * k.sup_norm() + 1e-12);
                }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
            CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
            const auto scaled = k.scaled(3.0);
            CHECK(scaled.eval(pts[0], pts.back()) == doctest::Approx(3.0 * k.eval(pts[0], pts.back())));
        }
    }
}

TEST_CASE("property: Jensen ordering of kernel difference norms") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0), g(0.2, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        WeightedPoints xs;
        const int n = 1 + trial % 12;
        for (int i = 0; i < n; ++i) {
            xs.points.push_back({u(rng)});
            xs.weights.push_back(1.0 / n);
        }
        const auto k1 = KernelSpec::gaussian(g(rng));
        const auto k2 = trial % 2 ? KernelSpec::gaussian(g(rng)) : KernelSpec::laplacian(g(rng));
        const double l1 = kernel_lp_diff(k1, k2, 1.0, xs);
        const double l2 = kernel_lp_diff(k1, k2, 2.0, xs);
        const double sup = kernel_sup_diff(k1, k2, xs.points);
        CHECK(l1 <= l2 + 1e-12);
        CHECK(l2 <= sup + 1e-12);
        CHECK(sup == brute_sup(k1, k2, xs.points));
    }
}
