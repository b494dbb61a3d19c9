#include "doctest.h"

#include <cmath>
#include <random>

#include "locsvm/errors.hpp"
#include "locsvm/losses.hpp"

using namespace locsvm;

namespace {

const Point kX{0.0};

std::vector<LossSpec> all_losses() {
    return {LossSpec::hinge(),           LossSpec::logistic(),       LossSpec::absolute(),
            LossSpec::pinball(0.25),     LossSpec::pinball(0.5),     LossSpec::pinball(0.9),
            LossSpec::eps_insensitive(0.1), LossSpec::eps_insensitive(0.0)};
}

double draw_label(const LossSpec& loss, std::mt19937_64& rng) {
    if (loss.family() == LossFamily::hinge) return std::uniform_int_distribution<int>(0, 1)(rng) ? 1.0 : -1.0;
    return std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
}

}  // namespace

TEST_CASE("loss values at reference points") {
    CHECK(LossSpec::hinge().eval(kX, 1.0, 0.0) == 1.0);
    CHECK(LossSpec::hinge().eval(kX, 1.0, 1.0) == 0.0);
    CHECK(LossSpec::pinball(0.5).eval(kX, 0.0, 2.0) == 1.0);
    CHECK(LossSpec::logistic().eval(kX, 0.3, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(LossSpec::eps_insensitive(0.1).eval(kX, 0.0, 0.05) == 0.0);
    CHECK(LossSpec::absolute().eval(kX, 1.0, -1.0) == 2.0);
}

TEST_CASE("shifted loss values") {
    CHECK(LossSpec::hinge().eval_shifted(kX, 1.0, 2.0) == -1.0);
    CHECK(LossSpec::pinball(0.3).eval_shifted(kX, 1.0, 0.5) == doctest::Approx(-0.15).epsilon(1e-15));
    for (const auto& loss : all_losses()) CHECK(loss.eval_shifted(kX, 1.0, 0.0) == 0.0);
}

TEST_CASE("subdifferentials at smooth points and kinks") {
    CHECK(LossSpec::hinge().subdifferential(kX, 1.0, 0.0) == Interval{-1.0, -1.0});
    CHECK(LossSpec::hinge().subdifferential(kX, 1.0, 1.0) == Interval{-1.0, 0.0});
    CHECK(LossSpec::hinge().subdifferential(kX, -1.0, -1.0) == Interval{0.0, 1.0});
    CHECK(LossSpec::pinball(0.5).subdifferential(kX, 0.0, 0.0) == Interval{-0.5, 0.5});
    CHECK(LossSpec::eps_insensitive(0.1).subdifferential(kX, 0.0, 0.0) == Interval{0.0, 0.0});
    CHECK(LossSpec::eps_insensitive(0.1).subdifferential(kX, 0.0, 0.1) == Interval{0.0, 1.0});
    const auto lg = LossSpec::logistic().subdifferential(kX, 0.0, 1.0);
    CHECK(lg.lo == lg.hi);
    CHECK(lg.lo == doctest::Approx(std::tanh(0.5)));
}

TEST_CASE("invalid parameters are configuration errors") {
    CHECK_THROWS_AS(LossSpec::pinball(0.0), ConfigError);
    CHECK_THROWS_AS(LossSpec::pinball(1.0), ConfigError);
    CHECK_THROWS_AS(LossSpec::eps_insensitive(-0.1), ConfigError);
    CHECK_THROWS_AS(LossSpec(LossFamily::pinball), ConfigError);
    CHECK_THROWS_AS(LossSpec::hinge().eval(kX, 2.0, 0.0), ConfigError);
}

TEST_CASE("lipschitz constants") {
    CHECK(LossSpec::hinge().lipschitz() == 1.0);
    CHECK(LossSpec::logistic().lipschitz() == 1.0);
    CHECK(LossSpec::absolute().lipschitz() == 1.0);
    CHECK(LossSpec::eps_insensitive(0.3).lipschitz() == 1.0);
    CHECK(LossSpec::pinball(0.25).lipschitz() == 0.75);
    CHECK(LossSpec::pinball(0.9).lipschitz() == 0.9);
}

TEST_CASE("property: lipschitz, convexity, shift identity, subgradient inequality") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(-4.0, 4.0), theta_dist(0.0, 1.0);
    for (const auto& loss : all_losses()) {
        CAPTURE(to_string(loss.family()));
        for (int trial = 0; trial < 2000; ++trial) {
            const double y = draw_label(loss, rng);
            const double t1 = t_dist(rng), t2 = t_dist(rng), th = theta_dist(rng);
            const double l1 = loss.eval(kX, y, t1), l2 = loss.eval(kX, y, t2);
            CHECK(l1 >= 0.0);
            CHECK(std::abs(l1 - l2) <= loss.lipschitz() * std::abs(t1 - t2) + 1e-12);
            const double mix = loss.eval(kX, y, th * t1 + (1 - th) * t2);
            CHECK(mix <= th * l1 + (1 - th) * l2 + 1e-12);
            // the anchor cancels up to one rounding of each subtraction
            const double shifted_gap = loss.eval_shifted(kX, y, t1) - loss.eval_shifted(kX, y, t2);
            CHECK(std::abs(shifted_gap - (l1 - l2)) <= 4e-16 * (1.0 + l1 + l2 + loss.eval(kX, y, 0.0)));

            const auto sub = loss.subdifferential(kX, y, t1);
            CHECK(sub.lo <= sub.hi);
            CHECK(std::max(std::abs(sub.lo), std::abs(sub.hi)) <= loss.lipschitz());
            for (double s : {sub.lo, sub.hi, 0.5 * (sub.lo + sub.hi)}) {
                const double v = t_dist(rng);
                CHECK(s * (v - t1) <= loss.eval(kX, y, v) - l1 + 1e-12);
            }
            // monotone subdifferential
            const double a = std::min(t1, t2), b = std::max(t1, t2);
            CHECK(loss.subdifferential(kX, y, a).hi <= loss.subdifferential(kX, y, b).lo + 1e-12);
        }
    }
}

TEST_CASE("property: prox satisfies its optimality condition") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> v_dist(-4.0, 4.0), a_dist(0.01, 3.0);
    for (const auto& loss : all_losses()) {
        CAPTURE(to_string(loss.family()));
        for (int trial = 0; trial < 1000; ++trial) {
            const double y = draw_label(loss, rng);
            const double v = v_dist(rng), a = a_dist(rng);
            const double t = loss.prox(y, v, a);
            const double s = loss.prox_slope(y, v, a);
            CHECK(t == doctest::Approx(v - a * s).epsilon(1e-12));
            const auto sub = loss.subdifferential_range(y, t - 1e-12, t + 1e-12);
            CHECK(sub.distance((v - t) / a) <= 1e-9);
        }
    }
}

// The shift removes a constant, so the subdifferentials of L and L* coincide;
// the library exposes a single subdifferential for both.
TEST_CASE("kink detection is exact on the representable kink") {
    const auto loss = LossSpec::eps_insensitive(0.25);
    CHECK(loss.subdifferential(kX, 1.0, 1.25) == Interval{0.0, 1.0});
    CHECK(loss.subdifferential(kX, 1.0, 0.75) == Interval{-1.0, 0.0});
}
