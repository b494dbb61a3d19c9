#include "doctest.h"

#include <random>

#include "locsvm/errors.hpp"
#include "locsvm/serialize.hpp"

using namespace locsvm;

TEST_CASE("loss and kernel round trip") {
    for (const auto& l : {LossSpec::hinge(), LossSpec::logistic(), LossSpec::absolute(), LossSpec::pinball(0.3),
                          LossSpec::eps_insensitive(0.2)})
        CHECK(loss_from_json(json::parse(to_json(l).dump())) == l);
    for (const auto& k : {KernelSpec::gaussian(2.5), KernelSpec::laplacian(0.1), KernelSpec::linear_bounded(3.0),
                          KernelSpec::gaussian(1.0).scaled(4.0)}) {
        const auto back = kernel_from_json(json::parse(to_json(k).dump()));
        CHECK(back.eval({0.1}, {0.7}) == k.eval({0.1}, {0.7}));
        CHECK(back.sup_norm() == k.sup_norm());
    }
    CHECK_THROWS_AS(loss_from_json(json{{"family", "nope"}}), ConfigError);
    CHECK_THROWS_AS(kernel_from_json(json::array()), ConfigError);
}

TEST_CASE("property: trained models round trip bit-exactly") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point> xs;
        std::vector<double> ys;
        for (int i = 0; i < 60; ++i) {
            xs.push_back({u(rng)});
            ys.push_back(u(rng));
        }
        const Dataset d(xs, ys);
        const auto r = Regionalization::intervals({-0.2, 0.3});
        const auto m = train_localized(d, r, WeightScheme::equal_split, {0.1}, {KernelSpec::gaussian(3.0)},
                                       LossSpec::pinball(0.4));
        const auto back = localized_from_json(json::parse(to_json(m).dump()));
        for (double x = -1.0; x <= 1.0; x += 0.05) CHECK(back.predict({x}) == m.predict({x}));

        const auto g = train(d, LossSpec::logistic(), KernelSpec::laplacian(1.0), 0.2);
        const auto gb = svm_from_json(json::parse(to_json(g).dump()));
        CHECK(gb.alphas() == g.alphas());
        CHECK(gb.predict({0.25}) == g.predict({0.25}));
    }
}

TEST_CASE("regionalizations with infinite ends round trip") {
    const Regionalization r({Box({-std::numeric_limits<double>::infinity()}, {0.2}),
                             Box({-0.2}, {std::numeric_limits<double>::infinity()})},
                            RegionMode::overlapping);
    const auto j = to_json(r);
    const auto back = regionalization_from_json(json::parse(j.dump()));
    CHECK(back.mode() == RegionMode::overlapping);
    CHECK(back.regions() == r.regions());
    CHECK_THROWS_AS(regionalization_from_json(json{{"mode", "partition"}}), ConfigError);
}

TEST_CASE("bound report json carries terms") {
    const auto j = to_json(bound_global_sup(1.0, 1.0, 0.1, 0.2, 0.01, 0.04));
    CHECK(j.at("theorem") == "global_sup");
    CHECK(j.at("terms").at("tv_term").get<double>() == doctest::Approx(2.0));
}
