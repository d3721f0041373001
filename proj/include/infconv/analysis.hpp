#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infconv/envelope.hpp"
#include "infconv/grid.hpp"

namespace infconv {

struct CheckReport {
    std::string name;
    bool passed = true;
    /// >= 0; +inf when an infinite value breaks the inequality.
    double worst_violation = 0.0;
    /// Flat index or index pair locating the worst violation; empty if none.
    std::vector<Index> witness;
    std::string detail;
};

/// phi(||x||) + beta minorant with phi tabulated on (t, phi(t)) breakpoints.
class CoercivityMinorant {
public:
    /// Breakpoint arguments must be strictly increasing and >= 0, values
    /// nondecreasing and >= 0.
    CoercivityMinorant(std::vector<std::pair<double, double>> breakpoints, double beta);

    /// Step interpolation from below: value at the last breakpoint <= t, 0
    /// before the first breakpoint. Never exceeds the tabulated phi.
    double phi(double t) const;
    double beta() const noexcept { return beta_; }
    std::span<const std::pair<double, double>> breakpoints() const noexcept { return breakpoints_; }

private:
    std::vector<std::pair<double, double>> breakpoints_;
    double beta_;
};

struct AffineMinorant {
    std::vector<double> slope;
    double alpha = 0.0;
    Index base_point = 0;

    double operator()(const Point& x) const;
};

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 42;
// Pairwise checks are exhaustive up to this many points, sampled above it.
inline constexpr Index kExhaustiveLimit = 256;
inline constexpr Index kSampledPairs = 100000;

ExtendedValue infimum(const GridFunction& f);

/// Points with f(x) <= inf f + tol. When inf f = -inf the set is the -inf
/// points. Throws NoFiniteValues when f == +inf.
PointSet argmin_set(const GridFunction& f, double tol);

CheckReport check_infimum_preservation(const GridFunction& f, const GridFunction& env);
CheckReport check_infimum_preservation(const GridFunction& f, const EnvelopeResult& env);

CheckReport check_minimizer_preservation(const GridFunction& f, const GridFunction& env,
                                         double tol = kDefaultTol);
CheckReport check_minimizer_preservation(const GridFunction& f, const EnvelopeResult& env,
                                         double tol = kDefaultTol);

/// f_1 <= f_2 <= ... <= f pointwise, with 1e-12 slack.
CheckReport check_monotone_in_n(std::span<const EnvelopeResult> seq, const GridFunction& f);
CheckReport check_monotone_in_n(std::span<const GridFunction> seq, const GridFunction& f);

/// |f(x) - f(x')| <= k||x - x'|| + 1e-9. Throws InfiniteValue unless f is
/// finite everywhere.
CheckReport check_lipschitz(const GridFunction& f, double k, NormKind norm,
                            std::uint64_t seed = kDefaultSeed);

/// f(mid) <= (f(x) + f(y))/2 + 1e-9 for every pair whose midpoint is a node.
CheckReport check_midpoint_convex(const GridFunction& f, std::uint64_t seed = kDefaultSeed);

/// env(x) >= min f + k d(x, H) - 1e-9, for f == +inf off H. Throws
/// PreconditionViolated when f is finite somewhere outside H.
CheckReport check_coercivity_bound(const EnvelopeResult& env, const GridFunction& f,
                                   const PointSet& support, double k, NormKind norm);

CheckReport check_coercive_minorant(const GridFunction& f, const CoercivityMinorant& minorant,
                                    NormKind norm);

/// Affine x -> <slope, x> + alpha below f at every node, read off the Moreau
/// envelope with parameter k at a base point: slope = k(base - prox(base)),
/// alpha = env(base) - <slope, base>. The default base point is the lowest
/// index minimizing the envelope. Throws NotConvex if f fails the midpoint
/// check or the returned pair fails verification, NonProper for f == +inf.
AffineMinorant affine_minorant(const GridFunction& f, double k = 1.0,
                               std::optional<Index> base_point = std::nullopt);

/// Indices with strictly decreasing values ending at a global minimizer;
/// at most `count` long.
std::vector<Index> minimizing_sequence(const GridFunction& f, std::size_t count);

}  // namespace infconv
