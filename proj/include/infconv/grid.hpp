#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infconv/error.hpp"

namespace infconv {

using Index = std::size_t;

// Coordinates and displacements. Axes beyond Grid::dim() are zero.
using Point = std::array<double, 3>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr int kMaxDim = 3;

/// A real number, +inf or -inf. Never NaN; ordering is the usual one on the
/// extended reals.
class ExtendedValue {
public:
    enum class Tag { Finite, PosInf, NegInf };

    constexpr ExtendedValue() = default;
    explicit ExtendedValue(double v);

    static constexpr ExtendedValue pos_inf() { return ExtendedValue(kInf, 0); }
    static constexpr ExtendedValue neg_inf() { return ExtendedValue(-kInf, 0); }

    Tag tag() const noexcept;
    bool is_finite() const noexcept { return tag() == Tag::Finite; }
    /// Throws InfiniteValue when not finite.
    double value() const;
    double raw() const noexcept { return v_; }

    friend bool operator==(ExtendedValue a, ExtendedValue b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(ExtendedValue a, ExtendedValue b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (b.v_ < a.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    constexpr ExtendedValue(double v, int) : v_(v) {}
    double v_ = 0.0;
};

enum class NormKind { L1, L2, Linf };

std::string_view to_string(NormKind kind);
NormKind parse_norm(std::string_view name);

/// Norm of the first `dim` components of z. In one dimension every kind is |z|.
inline double norm(NormKind kind, const Point& z, int dim) {
    if (dim == 1) return z[0] < 0.0 ? -z[0] : z[0];
    double s = 0.0;
    switch (kind) {
    case NormKind::L1:
        for (int a = 0; a < dim; ++a) s += z[a] < 0.0 ? -z[a] : z[a];
        return s;
    case NormKind::L2:
        for (int a = 0; a < dim; ++a) s += z[a] * z[a];
        return std::sqrt(s);
    case NormKind::Linf:
        for (int a = 0; a < dim; ++a) {
            const double v = z[a] < 0.0 ? -z[a] : z[a];
            if (v > s) s = v;
        }
        return s;
    }
    return s;
}

/// The norm of E* when E carries `kind` (L1 <-> Linf, L2 self-dual).
double dual_norm(NormKind kind, std::span<const double> coeffs);

/// Uniform rectangular lattice in 1 to 3 dimensions. Flat indices are
/// row-major with the last axis varying fastest.
class Grid {
public:
    Grid(std::vector<double> origin, std::vector<double> spacing, std::vector<Index> counts);

    /// 1D grid from lo to hi (inclusive) with step h; hi - lo must be a
    /// multiple of h up to rounding.
    static Grid line(double lo, double hi, double h);
    /// Cube [lo, hi]^dim with step h on every axis.
    static Grid box(int dim, double lo, double hi, double h);

    int dim() const noexcept { return dim_; }
    Index size() const noexcept { return size_; }
    Index count(int axis) const { return counts_[axis]; }
    double origin(int axis) const { return origin_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    Index stride(int axis) const { return strides_[axis]; }
    double min_spacing() const;

    double coordinate(int axis, Index i) const {
        return origin_[axis] + static_cast<double>(i) * spacing_[axis];
    }

    std::array<Index, 3> unflatten(Index flat) const;
    Index flatten(const std::array<Index, 3>& multi) const;
    Point point(Index flat) const;

    /// x - y computed from index offsets, (ix - iy) * h per axis.
    Point displacement(Index x, Index y) const;

    /// Lattice node whose coordinates match `p` to within rel_tol * spacing
    /// on every axis, if any.
    std::optional<Index> locate(const Point& p, double rel_tol = 1e-9) const;
    /// Nearest lattice node to `p`, clamped to the grid.
    Index nearest(const Point& p) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int dim_ = 0;
    std::array<double, 3> origin_{};
    std::array<double, 3> spacing_{};
    std::array<Index, 3> counts_{1, 1, 1};
    std::array<Index, 3> strides_{1, 1, 1};
    Index size_ = 0;
};

/// Extended-real-valued function sampled on a Grid.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values, bool allow_neg_inf = false);

    static GridFunction constant(const Grid& grid, double c);

    template <typename Fn>
    static GridFunction tabulate(const Grid& grid, Fn&& fn, bool allow_neg_inf = false) {
        std::vector<double> values(grid.size());
        for (Index i = 0; i < grid.size(); ++i) values[i] = fn(grid.point(i));
        return GridFunction(grid, std::move(values), allow_neg_inf);
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](Index i) const { return values_[i]; }
    ExtendedValue at(Index i) const { return ExtendedValue(values_[i]); }
    Index size() const noexcept { return values_.size(); }

    bool allow_neg_inf() const noexcept { return allow_neg_inf_; }
    bool is_proper() const;
    bool has_neg_inf() const;
    bool all_finite() const;

    GridFunction shifted(double c) const;

private:
    Grid grid_;
    std::vector<double> values_;
    bool allow_neg_inf_ = false;
};

/// Membership mask over the points of a grid.
class PointSet {
public:
    explicit PointSet(Grid grid);
    PointSet(Grid grid, std::vector<std::uint8_t> mask);

    template <typename Pred>
    static PointSet where(const Grid& grid, Pred&& pred) {
        std::vector<std::uint8_t> mask(grid.size());
        for (Index i = 0; i < grid.size(); ++i) mask[i] = pred(grid.point(i)) ? 1 : 0;
        return PointSet(grid, std::move(mask));
    }
    static PointSet all(const Grid& grid);
    static PointSet single(const Grid& grid, Index i);
    static PointSet from_indices(const Grid& grid, std::span<const Index> members);
    /// Closed ball of the given radius about the origin.
    static PointSet ball(const Grid& grid, double radius, NormKind kind);

    const Grid& grid() const noexcept { return grid_; }
    bool contains(Index i) const { return mask_[i] != 0; }
    void insert(Index i) { mask_[i] = 1; }
    Index count() const;
    bool empty() const { return count() == 0; }
    std::vector<Index> members() const;
    std::span<const std::uint8_t> mask() const noexcept { return mask_; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    Grid grid_;
    std::vector<std::uint8_t> mask_;
};

/// 0 on the set, +inf elsewhere.
GridFunction indicator(const PointSet& set);

/// -<coeffs, x> on the closed ball of the given radius, +inf outside.
GridFunction linear_minus_on_ball(std::span<const double> coeffs, double radius, const Grid& grid,
                                  NormKind kind);

/// d(x, H) = min over members h of ||x - h||.
GridFunction distance_to_set(const Grid& grid, const PointSet& set, NormKind kind);

}  // namespace infconv
