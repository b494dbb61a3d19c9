#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "locsvm/dataset.hpp"
#include "locsvm/kernels.hpp"
#include "locsvm/types.hpp"

namespace locsvm {

/// Axis-aligned box, closed below and open above in every dimension:
/// lower[i] <= x[i] < upper[i]. Bounds may be infinite.
class Box {
public:
    Box(std::vector<double> lower, std::vector<double> upper);

    std::size_t dim() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }

    bool contains(const Point& x) const;
    /// Nonempty intersection, or nullopt.
    std::optional<Box> intersect(const Box& other) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

enum class RegionMode { overlapping, partition };

std::string_view to_string(RegionMode mode);
RegionMode region_mode_from_string(std::string_view name);

class Regionalization {
public:
    Regionalization(std::vector<Box> regions, RegionMode mode);

    /// Partition of R^1 into consecutive cells split at the given sorted cut points.
    static Regionalization intervals(const std::vector<double>& cuts);

    const std::vector<Box>& regions() const noexcept { return regions_; }
    RegionMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return regions_.size(); }
    std::size_t dim() const noexcept { return regions_.front().dim(); }

    /// Indices of all regions containing x, ascending.
    std::vector<std::size_t> covering(const Point& x) const;

    friend bool operator==(const Regionalization&, const Regionalization&) = default;

private:
    std::vector<Box> regions_;
    RegionMode mode_;
};

struct ValidationReport {
    /// Data points covered by no region (or, for partitions, by more than one).
    std::vector<std::size_t> bad_data_points;
    std::vector<std::size_t> bad_grid_points;
    /// Regions with zero empirical mass.
    std::vector<std::size_t> zero_mass_regions;
    std::vector<double> masses;

    bool cover_ok() const { return bad_data_points.empty() && bad_grid_points.empty(); }
    bool mass_ok() const { return zero_mass_regions.empty(); }
    bool valid() const { return cover_ok() && mass_ok(); }
};

ValidationReport validate(const Regionalization& r, const Dataset& data, std::span<const Point> grid);

/// Empirical mass Q(box) = sum of weights of the points inside.
double mass(const WeightedPoints& q, const Box& box);

/// Nonempty pairwise intersections of two partitions. Piece b is
/// regions1[a1[b]] intersected with regions2[a2[b]]; j1[a] lists the pieces
/// inside regions1[a], likewise j2.
struct IntersectionStructure {
    std::vector<Box> pieces;
    std::vector<std::size_t> a1;
    std::vector<std::size_t> a2;
    std::vector<std::vector<std::size_t>> j1;
    std::vector<std::vector<std::size_t>> j2;
};

IntersectionStructure intersect(const Regionalization& r1, const Regionalization& r2);

enum class WeightScheme { equal_split };

/// w_b(x) = 1{x in X_b} / #{b' : x in X_b'}. Throws RegionError for uncovered x.
std::vector<double> weights(WeightScheme scheme, const Regionalization& r, const Point& x);

/// The three summands of the partition dissimilarity for piece b: the
/// relative size mismatch of its two parents, and for each parent i the
/// ambiguity c(1 - c) / 2 + sqrt(c(1 - c)) with c = Q(piece) / Q(parent_i).
struct DRegTerms {
    double size_mismatch = 0.0;
    double ambiguity1 = 0.0;
    double ambiguity2 = 0.0;
    double total() const { return size_mismatch + ambiguity1 + ambiguity2; }
};

DRegTerms d_reg_terms(const WeightedPoints& q, const Regionalization& r1, const Regionalization& r2,
                      const IntersectionStructure& s, std::size_t b);
double d_reg(const WeightedPoints& q, const Regionalization& r1, const Regionalization& r2,
             const IntersectionStructure& s, std::size_t b);

}  // namespace locsvm
