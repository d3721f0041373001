#include "infconv/grid.hpp"

#include <algorithm>
#include <cmath>

namespace infconv {

ExtendedValue::ExtendedValue(double v) : v_(v) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "extended value cannot be NaN");
}

ExtendedValue::Tag ExtendedValue::tag() const noexcept {
    if (v_ == kInf) return Tag::PosInf;
    if (v_ == -kInf) return Tag::NegInf;
    return Tag::Finite;
}

double ExtendedValue::value() const {
    if (!is_finite()) throw Error(ErrorCode::InfiniteValue, "value is not finite");
    return v_;
}

std::string_view to_string(NormKind kind) {
    switch (kind) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
    }
    return "l2";
}

NormKind parse_norm(std::string_view name) {
    if (name == "l1" || name == "L1") return NormKind::L1;
    if (name == "l2" || name == "L2") return NormKind::L2;
    if (name == "linf" || name == "Linf" || name == "LINF") return NormKind::Linf;
    throw Error(ErrorCode::ParseError, "unknown norm '" + std::string(name) + "'");
}

double dual_norm(NormKind kind, std::span<const double> coeffs) {
    switch (kind) {
    case NormKind::L1: {
        double s = 0.0;
        for (double c : coeffs) s = std::max(s, std::fabs(c));
        return s;
    }
    case NormKind::L2: {
        double s = 0.0;
        for (double c : coeffs) s += c * c;
        return std::sqrt(s);
    }
    case NormKind::Linf: {
        double s = 0.0;
        for (double c : coeffs) s += std::fabs(c);
        return s;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(std::vector<double> origin, std::vector<double> spacing, std::vector<Index> counts) {
    const auto d = origin.size();
    if (d < 1 || d > kMaxDim)
        throw Error(ErrorCode::InvalidArgument, "grid dimension must be 1, 2 or 3");
    if (spacing.size() != d || counts.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "origin, spacing and counts differ in length");
    dim_ = static_cast<int>(d);
    size_ = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (!std::isfinite(origin[a]))
            throw Error(ErrorCode::InvalidArgument, "grid origin must be finite");
        if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
            throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
        if (counts[a] < 1) throw Error(ErrorCode::InvalidArgument, "grid counts must be >= 1");
        origin_[a] = origin[a];
        spacing_[a] = spacing[a];
        counts_[a] = counts[a];
        size_ *= counts[a];
    }
    for (int a = dim_ - 1; a >= 0; --a)
        strides_[a] = (a == dim_ - 1) ? 1 : strides_[a + 1] * counts_[a + 1];
}

Grid Grid::line(double lo, double hi, double h) { return box(1, lo, hi, h); }

Grid Grid::box(int dim, double lo, double hi, double h) {
    if (!(h > 0.0) || !(hi >= lo))
        throw Error(ErrorCode::InvalidArgument, "box requires hi >= lo and h > 0");
    const double steps = (hi - lo) / h;
    const auto n = static_cast<Index>(std::llround(steps)) + 1;
    if (std::fabs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw Error(ErrorCode::InvalidArgument, "box extent is not a multiple of the spacing");
    const auto d = static_cast<std::size_t>(dim);
    return Grid(std::vector<double>(d, lo), std::vector<double>(d, h), std::vector<Index>(d, n));
}

double Grid::min_spacing() const {
    double h = spacing_[0];
    for (int a = 1; a < dim_; ++a) h = std::min(h, spacing_[a]);
    return h;
}

std::array<Index, 3> Grid::unflatten(Index flat) const {
    std::array<Index, 3> m{0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
        m[a] = flat / strides_[a];
        flat -= m[a] * strides_[a];
    }
    return m;
}

Index Grid::flatten(const std::array<Index, 3>& multi) const {
    Index flat = 0;
    for (int a = 0; a < dim_; ++a) flat += multi[a] * strides_[a];
    return flat;
}

Point Grid::point(Index flat) const {
    const auto m = unflatten(flat);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) p[a] = coordinate(a, m[a]);
    return p;
}

Point Grid::displacement(Index x, Index y) const {
    const auto mx = unflatten(x);
    const auto my = unflatten(y);
    Point z{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) {
        const double di = static_cast<double>(mx[a]) - static_cast<double>(my[a]);
        z[a] = di * spacing_[a];
    }
    return z;
}

std::optional<Index> Grid::locate(const Point& p, double rel_tol) const {
    std::array<Index, 3> m{0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
        const double t = (p[a] - origin_[a]) / spacing_[a];
        const double r = std::round(t);
        if (std::fabs(t - r) > rel_tol || r < 0.0 || r > static_cast<double>(counts_[a] - 1))
            return std::nullopt;
        m[a] = static_cast<Index>(r);
    }
    return flatten(m);
}

Index Grid::nearest(const Point& p) const {
    std::array<Index, 3> m{0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
        const double t = std::round((p[a] - origin_[a]) / spacing_[a]);
        const double c = std::clamp(t, 0.0, static_cast<double>(counts_[a] - 1));
        m[a] = static_cast<Index>(c);
    }
    return flatten(m);
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(Grid grid, std::vector<double> values, bool allow_neg_inf)
    : grid_(std::move(grid)), values_(std::move(values)), allow_neg_inf_(allow_neg_inf) {
    if (values_.size() != grid_.size())
        throw Error(ErrorCode::DimensionMismatch, "value count does not match grid size");
    for (double v : values_) {
        if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "grid values cannot be NaN");
        if (v == -kInf && !allow_neg_inf_)
            throw Error(ErrorCode::NegInfUnsupported,
                        "-inf value in a function without allow_neg_inf");
    }
}

GridFunction GridFunction::constant(const Grid& grid, double c) {
    return GridFunction(grid, std::vector<double>(grid.size(), c), c == -kInf);
}

bool GridFunction::is_proper() const {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

bool GridFunction::has_neg_inf() const {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return v == -kInf; });
}

bool GridFunction::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction GridFunction::shifted(double c) const {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "shift must be finite");
    auto out = values_;
    for (double& v : out) v += c;
    return GridFunction(grid_, std::move(out), allow_neg_inf_);
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(Grid grid) : grid_(std::move(grid)), mask_(grid_.size(), 0) {}

PointSet::PointSet(Grid grid, std::vector<std::uint8_t> mask)
    : grid_(std::move(grid)), mask_(std::move(mask)) {
    if (mask_.size() != grid_.size())
        throw Error(ErrorCode::DimensionMismatch, "mask size does not match grid size");
    for (auto& b : mask_) b = b ? 1 : 0;
}

PointSet PointSet::all(const Grid& grid) {
    return PointSet(grid, std::vector<std::uint8_t>(grid.size(), 1));
}

PointSet PointSet::single(const Grid& grid, Index i) {
    if (i >= grid.size()) throw Error(ErrorCode::InvalidArgument, "index outside grid");
    PointSet s(grid);
    s.insert(i);
    return s;
}

PointSet PointSet::from_indices(const Grid& grid, std::span<const Index> members) {
    PointSet s(grid);
    for (Index i : members) {
        if (i >= grid.size()) throw Error(ErrorCode::InvalidArgument, "index outside grid");
        s.insert(i);
    }
    return s;
}

PointSet PointSet::ball(const Grid& grid, double radius, NormKind kind) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
    // Nodes that sit on the sphere up to coordinate rounding count as members.
    const double slack = 1e-12 * std::max(1.0, radius);
    const int d = grid.dim();
    return where(grid, [&](const Point& p) { return norm(kind, p, d) <= radius + slack; });
}

Index PointSet::count() const {
    return static_cast<Index>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

std::vector<Index> PointSet::members() const {
    std::vector<Index> out;
    for (Index i = 0; i < mask_.size(); ++i)
        if (mask_[i]) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical functions

GridFunction indicator(const PointSet& set) {
    if (set.empty()) throw Error(ErrorCode::EmptySet, "indicator of an empty set");
    std::vector<double> v(set.grid().size());
    for (Index i = 0; i < v.size(); ++i) v[i] = set.contains(i) ? 0.0 : kInf;
    return GridFunction(set.grid(), std::move(v));
}

GridFunction linear_minus_on_ball(std::span<const double> coeffs, double radius, const Grid& grid,
                                  NormKind kind) {
    if (coeffs.size() != static_cast<std::size_t>(grid.dim()))
        throw Error(ErrorCode::DimensionMismatch, "coefficient vector does not match grid dimension");
    const auto ball = PointSet::ball(grid, radius, kind);
    std::vector<double> v(grid.size(), kInf);
    for (Index i = 0; i < grid.size(); ++i) {
        if (!ball.contains(i)) continue;
        const Point p = grid.point(i);
        double s = 0.0;
        for (int a = 0; a < grid.dim(); ++a) s += coeffs[a] * p[a];
        v[i] = -s;
    }
    return GridFunction(grid, std::move(v));
}

GridFunction distance_to_set(const Grid& grid, const PointSet& set, NormKind kind) {
    if (!(set.grid() == grid)) throw Error(ErrorCode::DimensionMismatch, "set lives on another grid");
    const auto members = set.members();
    if (members.empty()) throw Error(ErrorCode::EmptySet, "distance to an empty set");
    std::vector<double> v(grid.size(), kInf);
    for (Index x = 0; x < grid.size(); ++x) {
        if (set.contains(x)) {
            v[x] = 0.0;
            continue;
        }
        double best = kInf;
        for (Index h : members) best = std::min(best, norm(kind, grid.displacement(x, h), grid.dim()));
        v[x] = best;
    }
    return GridFunction(grid, std::move(v));
}

}  // namespace infconv
