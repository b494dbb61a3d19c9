#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "locsvm/errors.hpp"
#include "locsvm/regions.hpp"

using namespace locsvm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Box interval(double lo, double hi) { return Box({lo}, {hi}); }

WeightedPoints uniform_grid(std::size_t n) {
    WeightedPoints q;
    for (std::size_t i = 0; i < n; ++i) {
        q.points.push_back({(static_cast<double>(i) + 0.5) / static_cast<double>(n)});
        q.weights.push_back(1.0 / static_cast<double>(n));
    }
    return q;
}

}  // namespace

TEST_CASE("boxes are closed below and open above") {
    const auto b = interval(0.0, 1.0);
    CHECK(b.contains({0.0}));
    CHECK_FALSE(b.contains({1.0}));
    CHECK_THROWS_AS(interval(1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(b.contains({0.0, 0.0}), DomainError);
    CHECK(interval(-kInf, kInf).contains({1e300}));
}

TEST_CASE("validate") {
    const auto halves = Regionalization::intervals({0.0});
    const Dataset both({{-0.5}, {0.5}}, {0.0, 0.0});
    CHECK(validate(halves, both, {}).valid());

    const Dataset right({{0.1}, {0.5}}, {0.0, 0.0});
    const auto report = validate(halves, right, {});
    CHECK(report.cover_ok());
    CHECK(report.zero_mass_regions == std::vector<std::size_t>{0});

    const Regionalization overlap({interval(-1.0, 0.6), interval(0.4, 1.0 + 1e-12)}, RegionMode::overlapping);
    const Dataset spread({{-1.0}, {0.0}, {0.5}, {1.0}}, {0.0, 0.0, 0.0, 0.0});
    const std::vector<Point> grid{{-1.0}, {0.5}, {1.0}};
    CHECK(validate(overlap, spread, grid).valid());
    CHECK(overlap.mode() == RegionMode::overlapping);

    // the same boxes do not form a partition: points in the overlap are double-covered
    const Regionalization not_partition(overlap.regions(), RegionMode::partition);
    CHECK(validate(not_partition, spread, grid).bad_data_points == std::vector<std::size_t>{2});
    const std::vector<Point> outside{{5.0}};
    CHECK(validate(overlap, spread, outside).bad_grid_points == std::vector<std::size_t>{0});
}

TEST_CASE("intersect reference structures") {
    const auto a = Regionalization::intervals({0.0, 0.5});
    const auto same = intersect(a, a);
    CHECK(same.pieces.size() == 3);
    CHECK(same.a1 == std::vector<std::size_t>{0, 1, 2});
    CHECK(same.a2 == same.a1);

    const auto shifted = intersect(Regionalization::intervals({0.0}), Regionalization::intervals({0.05}));
    REQUIRE(shifted.pieces.size() == 3);
    CHECK(shifted.pieces[0] == interval(-kInf, 0.0));
    CHECK(shifted.pieces[1] == interval(0.0, 0.05));
    CHECK(shifted.pieces[2] == interval(0.05, kInf));

    const Regionalization coarse({interval(0.0, 1.0)}, RegionMode::partition);
    const Regionalization fine({interval(0.0, 0.5), interval(0.5, 1.0)}, RegionMode::partition);
    const auto s = intersect(coarse, fine);
    CHECK(s.pieces.size() == 2);
    CHECK(s.j1[0] == std::vector<std::size_t>{0, 1});
    CHECK(s.j2[0] == std::vector<std::size_t>{0});
    CHECK(s.j2[1] == std::vector<std::size_t>{1});

    const Regionalization overlap({interval(0.0, 1.0)}, RegionMode::overlapping);
    CHECK_THROWS_AS(intersect(overlap, fine), ConfigError);
}

TEST_CASE("equal_split weights") {
    const Regionalization r({interval(0.0, 1.0), interval(0.5, 2.0), interval(0.7, 3.0)}, RegionMode::overlapping);
    CHECK(weights(WeightScheme::equal_split, r, {0.2}) == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(weights(WeightScheme::equal_split, r, {0.6}) == std::vector<double>{0.5, 0.5, 0.0});
    const auto thirds = weights(WeightScheme::equal_split, r, {0.8});
    for (double w : thirds) CHECK(w == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(weights(WeightScheme::equal_split, r, {5.0}), RegionError);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const Point x{u(rng)};
        const auto w = weights(WeightScheme::equal_split, r, x);
        double total = 0.0;
        for (std::size_t b = 0; b < w.size(); ++b) {
            CHECK(w[b] >= 0.0);
            CHECK(w[b] <= 1.0);
            if (!r.regions()[b].contains(x)) CHECK(w[b] == 0.0);
            total += w[b];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("d_reg reference values") {
    const auto q = uniform_grid(100000);
    const Regionalization r1({interval(0.0, 0.5), interval(0.5, 1.0)}, RegionMode::partition);
    const Regionalization r2({interval(0.0, 0.6), interval(0.6, 1.0)}, RegionMode::partition);
    const auto s = intersect(r1, r2);
    std::size_t piece = s.pieces.size();
    for (std::size_t b = 0; b < s.pieces.size(); ++b)
        if (s.pieces[b] == interval(0.5, 0.6)) piece = b;
    REQUIRE(piece < s.pieces.size());
    // 0.1/0.6 + (0.5*0.2*0.8 + sqrt(0.16)) + (0.5*(1/6)(5/6) + sqrt((1/6)(5/6)))
    CHECK(d_reg(q, r1, r2, s, piece) == doctest::Approx(1.0887891073610763).epsilon(1e-9));

    const auto same = intersect(r1, r1);
    for (std::size_t b = 0; b < same.pieces.size(); ++b) CHECK(d_reg(q, r1, r1, same, b) == 0.0);

    // parent with zero mass
    const Regionalization far({interval(0.0, 2.0), interval(2.0, 3.0)}, RegionMode::partition);
    const auto sf = intersect(far, far);
    CHECK_THROWS_AS(d_reg(q, far, far, sf, 1), RegionError);
}

TEST_CASE("property: intersection symmetry, mass conservation, d_reg bounds and relabeling") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c1{u(rng), u(rng)}, c2{u(rng), u(rng), u(rng)};
        std::sort(c1.begin(), c1.end());
        std::sort(c2.begin(), c2.end());
        const auto r1 = Regionalization::intervals(c1);
        const auto r2 = Regionalization::intervals(c2);
        const auto s12 = intersect(r1, r2);
        const auto s21 = intersect(r2, r1);
        REQUIRE(s12.pieces.size() == s21.pieces.size());
        for (const auto& p : s12.pieces)
            CHECK(std::find(s21.pieces.begin(), s21.pieces.end(), p) != s21.pieces.end());

        WeightedPoints q;
        for (int i = 0; i < 200; ++i) {
            q.points.push_back({2.0 * u(rng) - 0.5});
            q.weights.push_back(1.0 / 200.0);
        }
        for (std::size_t a = 0; a < r1.size(); ++a) {
            double pieces = 0.0;
            for (std::size_t b : s12.j1[a]) pieces += mass(q, s12.pieces[b]);
            CHECK(std::abs(pieces - mass(q, r1.regions()[a])) <= 1e-12);
        }

        // relabel r2 by reversing its cells
        std::vector<Box> rev(r2.regions().rbegin(), r2.regions().rend());
        const Regionalization r2rev(rev, RegionMode::partition);
        const auto srev = intersect(r1, r2rev);
        for (std::size_t b = 0; b < s12.pieces.size(); ++b) {
            bool positive = mass(q, r1.regions()[s12.a1[b]]) > 0 && mass(q, r2.regions()[s12.a2[b]]) > 0;
            if (!positive) continue;
            const auto t = d_reg_terms(q, r1, r2, s12, b);
            CHECK(t.size_mismatch >= 0.0);
            CHECK(t.size_mismatch <= 1.0);
            CHECK(t.ambiguity1 >= 0.0);
            CHECK(t.ambiguity1 <= 0.625);
            CHECK(t.ambiguity2 <= 0.625);
            const auto it = std::find(srev.pieces.begin(), srev.pieces.end(), s12.pieces[b]);
            REQUIRE(it != srev.pieces.end());
            const auto b2 = static_cast<std::size_t>(it - srev.pieces.begin());
            CHECK(d_reg(q, r1, r2rev, srev, b2) == d_reg(q, r1, r2, s12, b));
        }
    }
}
