#include "locsvm/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "locsvm/errors.hpp"

namespace locsvm {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
        throw ConfigError("box bounds must be nonempty and of equal dimension");
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!(lower_[i] < upper_[i])) throw ConfigError("box needs lower < upper in every dimension");
}

bool Box::contains(const Point& x) const {
    if (x.size() != lower_.size()) throw DomainError("point and box differ in dimension");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(lower_[i] <= x[i] && x[i] < upper_[i])) return false;
    return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
    if (other.dim() != dim()) throw DomainError("boxes differ in dimension");
    std::vector<double> lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        lo[i] = std::max(lower_[i], other.lower_[i]);
        hi[i] = std::min(upper_[i], other.upper_[i]);
        if (!(lo[i] < hi[i])) return std::nullopt;
    }
    return Box(std::move(lo), std::move(hi));
}

std::string_view to_string(RegionMode mode) {
    return mode == RegionMode::partition ? "partition" : "overlapping";
}

RegionMode region_mode_from_string(std::string_view name) {
    if (name == "partition") return RegionMode::partition;
    if (name == "overlapping") return RegionMode::overlapping;
    throw ConfigError("unknown regionalization mode '" + std::string(name) + "'");
}

Regionalization::Regionalization(std::vector<Box> regions, RegionMode mode)
    : regions_(std::move(regions)), mode_(mode) {
    if (regions_.empty()) throw ConfigError("regionalization needs at least one region");
    for (const auto& b : regions_)
        if (b.dim() != regions_.front().dim()) throw ConfigError("regions differ in dimension");
}

Regionalization Regionalization::intervals(const std::vector<double>& cuts) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Box> boxes;
    double lo = -inf;
    for (double c : cuts) {
        boxes.emplace_back(std::vector<double>{lo}, std::vector<double>{c});
        lo = c;
    }
    boxes.emplace_back(std::vector<double>{lo}, std::vector<double>{inf});
    return Regionalization(std::move(boxes), RegionMode::partition);
}

std::vector<std::size_t> Regionalization::covering(const Point& x) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < regions_.size(); ++b)
        if (regions_[b].contains(x)) out.push_back(b);
    return out;
}

ValidationReport validate(const Regionalization& r, const Dataset& data, std::span<const Point> grid) {
    ValidationReport report;
    auto bad = [&](const Point& x) {
        const auto n = r.covering(x).size();
        return r.mode() == RegionMode::partition ? n != 1 : n == 0;
    };
    for (std::size_t i = 0; i < data.size(); ++i)
        if (bad(data.xs()[i])) report.bad_data_points.push_back(i);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (bad(grid[i])) report.bad_grid_points.push_back(i);
    const auto q = data.marginal();
    for (std::size_t b = 0; b < r.size(); ++b) {
        report.masses.push_back(mass(q, r.regions()[b]));
        if (report.masses.back() <= 0.0) report.zero_mass_regions.push_back(b);
    }
    return report;
}

double mass(const WeightedPoints& q, const Box& box) {
    double m = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
        if (box.contains(q.points[i])) m += q.weights[i];
    return m;
}

IntersectionStructure intersect(const Regionalization& r1, const Regionalization& r2) {
    if (r1.mode() != RegionMode::partition || r2.mode() != RegionMode::partition)
        throw ConfigError("intersect needs two partitions");
    if (r1.dim() != r2.dim()) throw DomainError("partitions differ in dimension");
    IntersectionStructure s;
    s.j1.resize(r1.size());
    s.j2.resize(r2.size());
    for (std::size_t a = 0; a < r1.size(); ++a) {
        for (std::size_t c = 0; c < r2.size(); ++c) {
            auto piece = r1.regions()[a].intersect(r2.regions()[c]);
            if (!piece) continue;
            s.j1[a].push_back(s.pieces.size());
            s.j2[c].push_back(s.pieces.size());
            s.pieces.push_back(std::move(*piece));
            s.a1.push_back(a);
            s.a2.push_back(c);
        }
    }
    return s;
}

std::vector<double> weights(WeightScheme /*scheme*/, const Regionalization& r, const Point& x) {
    const auto cover = r.covering(x);
    if (cover.empty()) throw RegionError("point is not covered by any region");
    std::vector<double> w(r.size(), 0.0);
    const double share = 1.0 / static_cast<double>(cover.size());
    for (std::size_t b : cover) w[b] = share;
    return w;
}

DRegTerms d_reg_terms(const WeightedPoints& q, const Regionalization& r1, const Regionalization& r2,
                      const IntersectionStructure& s, std::size_t b) {
    if (b >= s.pieces.size()) throw std::out_of_range("d_reg: piece index out of range");
    const double m1 = mass(q, r1.regions()[s.a1[b]]);
    const double m2 = mass(q, r2.regions()[s.a2[b]]);
    if (m1 <= 0.0) throw RegionError("d_reg: parent region has zero mass", s.a1[b]);
    if (m2 <= 0.0) throw RegionError("d_reg: parent region has zero mass", s.a2[b]);
    const double mp = mass(q, s.pieces[b]);
    auto ambiguity = [](double c) {
        const double prod = std::max(0.0, c * (1.0 - c));
        return 0.5 * prod + std::sqrt(prod);
    };
    DRegTerms t;
    t.size_mismatch = std::abs(m1 - m2) / std::max(m1, m2);
    t.ambiguity1 = ambiguity(mp / m1);
    t.ambiguity2 = ambiguity(mp / m2);
    return t;
}

double d_reg(const WeightedPoints& q, const Regionalization& r1, const Regionalization& r2,
             const IntersectionStructure& s, std::size_t b) {
    return d_reg_terms(q, r1, r2, s, b).total();
}

}  // namespace locsvm
