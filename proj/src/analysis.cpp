#include "infconv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace infconv {

namespace {

// Amount by which a exceeds b on the extended reals; 0 when a <= b.
double excess(double a, double b) {
    if (a <= b) return 0.0;
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return a - b;
}

void record(CheckReport& r, double violation, std::vector<Index> where) {
    if (violation > r.worst_violation) {
        r.worst_violation = violation;
        r.witness = std::move(where);
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Calls visit(x, y) on every unordered pair for small grids and on a seeded
// random sample of pairs otherwise.
template <typename Visit>
void for_pairs(Index n, std::uint64_t seed, Visit&& visit) {
    if (n <= kExhaustiveLimit) {
        for (Index x = 0; x < n; ++x)
            for (Index y = x + 1; y < n; ++y) visit(x, y);
        return;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (Index s = 0; s < kSampledPairs; ++s) {
        const Index x = pick(rng);
        const Index y = pick(rng);
        if (x != y) visit(std::min(x, y), std::max(x, y));
    }
}

std::vector<Index> symmetric_difference(const PointSet& a, const PointSet& b) {
    std::vector<Index> out;
    for (Index i = 0; i < a.grid().size(); ++i)
        if (a.contains(i) != b.contains(i)) out.push_back(i);
    return out;
}

// argmin_set that tolerates f == +inf (every point minimizes).
PointSet minimizers(const GridFunction& f, double tol) {
    if (!f.is_proper() && !f.has_neg_inf()) return PointSet::all(f.grid());
    return argmin_set(f, tol);
}

}  // namespace

// ---------------------------------------------------------------------------

CoercivityMinorant::CoercivityMinorant(std::vector<std::pair<double, double>> breakpoints,
                                       double beta)
    : breakpoints_(std::move(breakpoints)), beta_(beta) {
    if (!std::isfinite(beta_)) throw Error(ErrorCode::InvalidArgument, "beta must be finite");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const auto [t, v] = breakpoints_[i];
        if (!(t >= 0.0) || !(v >= 0.0) || !std::isfinite(t) || !std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, "phi breakpoints must be finite and >= 0");
        if (i > 0 && !(t > breakpoints_[i - 1].first))
            throw Error(ErrorCode::InvalidArgument, "phi arguments must be strictly increasing");
        if (i > 0 && v < breakpoints_[i - 1].second)
            throw Error(ErrorCode::InvalidArgument, "phi must be nondecreasing");
    }
}

double CoercivityMinorant::phi(double t) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [](double v, const auto& bp) { return v < bp.first; });
    if (it == breakpoints_.begin()) return 0.0;
    return std::prev(it)->second;
}

double AffineMinorant::operator()(const Point& x) const {
    double s = alpha;
    for (std::size_t a = 0; a < slope.size(); ++a) s += slope[a] * x[a];
    return s;
}

// ---------------------------------------------------------------------------

ExtendedValue infimum(const GridFunction& f) {
    const auto v = f.values();
    return ExtendedValue(*std::min_element(v.begin(), v.end()));
}

PointSet argmin_set(const GridFunction& f, double tol) {
    const double m = infimum(f).raw();
    if (m == kInf) throw Error(ErrorCode::NoFiniteValues, "function is identically +inf");
    std::vector<std::uint8_t> mask(f.size());
    if (m == -kInf) {
        for (Index i = 0; i < f.size(); ++i) mask[i] = f[i] == -kInf;
        return PointSet(f.grid(), std::move(mask));
    }
    for (Index i = 0; i < f.size(); ++i) mask[i] = f[i] <= m + tol;
    return PointSet(f.grid(), std::move(mask));
}

CheckReport check_infimum_preservation(const GridFunction& f, const GridFunction& env) {
    CheckReport r{"infimum_preservation", true, 0.0, {}, ""};
    const double a = infimum(f).raw();
    const double b = infimum(env).raw();
    if (a == b) {
        r.worst_violation = 0.0;
    } else if (std::isfinite(a) && std::isfinite(b)) {
        r.worst_violation = std::fabs(a - b);
    } else {
        r.worst_violation = kInf;
    }
    r.passed = r.worst_violation <= kDefaultTol;
    r.detail = "inf f = " + fmt(a) + ", inf envelope = " + fmt(b);
    return r;
}

CheckReport check_infimum_preservation(const GridFunction& f, const EnvelopeResult& env) {
    return check_infimum_preservation(f, env.envelope);
}

CheckReport check_minimizer_preservation(const GridFunction& f, const GridFunction& env,
                                         double tol) {
    CheckReport r{"minimizer_preservation", true, 0.0, {}, ""};
    const auto a = minimizers(f, tol);
    const auto b = minimizers(env, tol);
    const auto diff = symmetric_difference(a, b);
    r.worst_violation = static_cast<double>(diff.size());
    if (!diff.empty()) r.witness = {diff.front()};
    r.passed = diff.empty();
    r.detail = "|argmin f| = " + std::to_string(a.count()) +
               ", |argmin envelope| = " + std::to_string(b.count()) +
               ", differing points = " + std::to_string(diff.size());
    return r;
}

CheckReport check_minimizer_preservation(const GridFunction& f, const EnvelopeResult& env,
                                         double tol) {
    return check_minimizer_preservation(f, env.envelope, tol);
}

CheckReport check_monotone_in_n(std::span<const GridFunction> seq, const GridFunction& f) {
    CheckReport r{"monotone_in_n", true, 0.0, {}, ""};
    auto compare = [&](const GridFunction& lo, const GridFunction& hi, Index level) {
        for (Index x = 0; x < f.size(); ++x) {
            const double slack = 1e-12 * std::max(1.0, std::isfinite(hi[x]) ? std::fabs(hi[x]) : 0.0);
            record(r, excess(lo[x], hi[x] + slack), {level, x});
        }
    };
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (!(seq[n].grid() == f.grid()))
            throw Error(ErrorCode::DimensionMismatch, "sequence member on a different grid");
        const auto& next = n + 1 < seq.size() ? seq[n + 1] : f;
        compare(seq[n], next, n);
    }
    r.passed = r.worst_violation == 0.0;
    r.detail = std::to_string(seq.size()) + " envelopes checked; witness is (sequence position, node)";
    return r;
}

CheckReport check_monotone_in_n(std::span<const EnvelopeResult> seq, const GridFunction& f) {
    std::vector<GridFunction> values;
    values.reserve(seq.size());
    for (const auto& e : seq) values.push_back(e.envelope);
    return check_monotone_in_n(std::span<const GridFunction>(values), f);
}

CheckReport check_lipschitz(const GridFunction& f, double k, NormKind norm, std::uint64_t seed) {
    if (!f.all_finite())
        throw Error(ErrorCode::InfiniteValue, "Lipschitz check needs finite values everywhere");
    if (!(k >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Lipschitz constant must be >= 0");
    CheckReport r{"lipschitz", true, 0.0, {}, ""};
    const Grid& grid = f.grid();
    Index pairs = 0;
    for_pairs(grid.size(), seed, [&](Index x, Index y) {
        ++pairs;
        const double dist = infconv::norm(norm, grid.displacement(x, y), grid.dim());
        record(r, std::fabs(f[x] - f[y]) - k * dist, {x, y});
    });
    r.passed = r.worst_violation <= kDefaultTol;
    r.detail = "k = " + fmt(k) + ", norm = " + std::string(to_string(norm)) + ", " +
               std::to_string(pairs) + " pairs checked";
    return r;
}

CheckReport check_midpoint_convex(const GridFunction& f, std::uint64_t seed) {
    CheckReport r{"midpoint_convex", true, 0.0, {}, ""};
    const Grid& grid = f.grid();
    const int dim = grid.dim();
    Index pairs = 0;

    auto visit = [&](Index x, Index y) {
        const auto mx = grid.unflatten(x);
        const auto my = grid.unflatten(y);
        std::array<Index, 3> mid{0, 0, 0};
        for (int a = 0; a < dim; ++a) {
            if ((mx[a] + my[a]) % 2 != 0) return;
            mid[a] = (mx[a] + my[a]) / 2;
        }
        ++pairs;
        const double fx = f[x];
        const double fy = f[y];
        if (fx == kInf || fy == kInf) return;
        const double rhs = (fx == -kInf || fy == -kInf) ? -kInf : 0.5 * (fx + fy);
        const Index m = grid.flatten(mid);
        record(r, excess(f[m], rhs), {x, y});
    };

    if (grid.size() <= kExhaustiveLimit) {
        for_pairs(grid.size(), seed, visit);
    } else {
        // Sample x freely and pick y with matching parity on every axis.
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Index> pick(0, grid.size() - 1);
        for (Index s = 0; s < kSampledPairs; ++s) {
            const Index x = pick(rng);
            auto my = grid.unflatten(pick(rng));
            const auto mx = grid.unflatten(x);
            for (int a = 0; a < dim; ++a) {
                if ((mx[a] + my[a]) % 2 == 0) continue;
                my[a] = my[a] + 1 < grid.count(a) ? my[a] + 1 : my[a] - 1;
            }
            const Index y = grid.flatten(my);
            if (x != y) visit(std::min(x, y), std::max(x, y));
        }
    }
    r.passed = r.worst_violation <= kDefaultTol;
    r.detail = std::to_string(pairs) + " midpoint pairs checked";
    return r;
}

CheckReport check_coercivity_bound(const EnvelopeResult& env, const GridFunction& f,
                                   const PointSet& support, double k, NormKind norm) {
    const Grid& grid = f.grid();
    if (!(support.grid() == grid) || !(env.envelope.grid() == grid))
        throw Error(ErrorCode::DimensionMismatch, "inputs live on different grids");
    bool indicator_like = true;
    for (Index x = 0; x < grid.size(); ++x) {
        if (!support.contains(x) && f[x] != kInf)
            throw Error(ErrorCode::PreconditionViolated,
                        "f is finite at node " + std::to_string(x) + " outside the support set");
        if (support.contains(x) && f[x] != 0.0) indicator_like = false;
    }
    const double m = infimum(f).raw();
    if (!std::isfinite(m))
        throw Error(ErrorCode::PreconditionViolated, "f must be bounded below and proper");

    CheckReport r{"coercivity_bound", true, 0.0, {}, ""};
    const auto dist = distance_to_set(grid, support, norm);
    double max_gap = 0.0;
    for (Index x = 0; x < grid.size(); ++x) {
        const double bound = m + k * dist[x];
        record(r, excess(bound, env.envelope[x]), {x});
        if (std::isfinite(env.envelope[x]))
            max_gap = std::max(max_gap, std::fabs(env.envelope[x] - bound));
        else
            max_gap = kInf;
    }
    r.passed = r.worst_violation <= kDefaultTol;
    const bool equal = max_gap <= kDefaultTol;
    r.detail = std::string("min f = ") + fmt(m) + "; equality " + (equal ? "holds" : "does not hold") +
               " (max |envelope - bound| = " + fmt(max_gap) + ")" +
               (indicator_like ? "; f is the indicator of the support" : "");
    return r;
}

CheckReport check_coercive_minorant(const GridFunction& f, const CoercivityMinorant& minorant,
                                    NormKind norm) {
    CheckReport r{"coercive_minorant", true, 0.0, {}, ""};
    const Grid& grid = f.grid();
    for (Index x = 0; x < grid.size(); ++x) {
        const double bound = minorant.phi(infconv::norm(norm, grid.point(x), grid.dim())) + minorant.beta();
        record(r, excess(bound, f[x]), {x});
    }
    r.passed = r.worst_violation <= kDefaultTol;
    r.detail = "beta = " + fmt(minorant.beta()) + ", " +
               std::to_string(minorant.breakpoints().size()) + " phi breakpoints";
    return r;
}

AffineMinorant affine_minorant(const GridFunction& f, double k, std::optional<Index> base_point) {
    if (!f.is_proper()) throw Error(ErrorCode::NonProper, "function is identically +inf");
    const auto convex = check_midpoint_convex(f);
    if (!convex.passed) throw Error(ErrorCode::NotConvex, "midpoint convexity check failed");

    const Grid& grid = f.grid();
    const auto env = moreau_yosida(f, k);
    Index base = 0;
    if (base_point) {
        if (*base_point >= grid.size()) throw Error(ErrorCode::InvalidArgument, "base point outside grid");
        base = *base_point;
    } else {
        const auto v = env.envelope.values();
        base = static_cast<Index>(std::min_element(v.begin(), v.end()) - v.begin());
    }
    const Index prox = env.argmin[base];
    const Point disp = grid.displacement(base, prox);
    const Point xb = grid.point(base);

    AffineMinorant out;
    out.base_point = base;
    out.slope.resize(static_cast<std::size_t>(grid.dim()));
    double dot = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        out.slope[a] = k * disp[a];
        dot += out.slope[a] * xb[a];
    }
    out.alpha = env.envelope[base] - dot;

    for (Index x = 0; x < grid.size(); ++x) {
        if (f[x] == kInf) continue;
        const double lhs = out(grid.point(x));
        if (lhs > f[x] + kDefaultTol * std::max(1.0, std::fabs(f[x])))
            throw Error(ErrorCode::NotConvex, "affine function from base point " + std::to_string(base) +
                                                  " exceeds f at node " + std::to_string(x));
    }
    return out;
}

std::vector<Index> minimizing_sequence(const GridFunction& f, std::size_t count) {
    if (!f.is_proper()) throw Error(ErrorCode::NonProper, "function is identically +inf");
    // Lowest index per distinct finite value, in decreasing value order.
    std::map<double, Index, std::greater<>> first_index;
    for (Index i = 0; i < f.size(); ++i)
        if (std::isfinite(f[i])) first_index.try_emplace(f[i], i);
    std::vector<Index> path;
    for (const auto& [value, index] : first_index) path.push_back(index);
    if (path.size() > count) path.erase(path.begin(), path.end() - static_cast<std::ptrdiff_t>(count));
    return path;
}

}  // namespace infconv
