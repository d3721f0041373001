#pragma once

#include <vector>

#include "infconv/analysis.hpp"
#include "infconv/envelope.hpp"
#include "infconv/grid.hpp"

namespace infconv {

/// Scattered samples of a function on a finite set S, to be extended with
/// Lipschitz constant k. Points must be pairwise distinct; the Lipschitz
/// property itself is reported by validate_lipschitz and enforced by
/// mcshane_extend.
class SampleSet {
public:
    SampleSet(int dim, std::vector<Point> points, std::vector<double> values, NormKind norm, double k);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<double>& values() const noexcept { return values_; }
    NormKind norm() const noexcept { return norm_; }
    double k() const noexcept { return k_; }

private:
    int dim_;
    std::vector<Point> points_;
    std::vector<double> values_;
    NormKind norm_;
    double k_;
};

/// All-pairs |v_i - v_j| <= k||p_i - p_j|| + 1e-12.
CheckReport validate_lipschitz(const SampleSet& samples);

/// Pasch-Hausdorff envelope of the function equal to the samples on S and
/// +inf elsewhere: min over samples s of v_s + k||x - s||, by direct
/// minimization. Witnesses index the sample list (WitnessDomain::Samples).
/// A node that coincides with a sample takes that sample's value exactly.
/// Throws LipschitzViolated if validate_lipschitz fails.
EnvelopeResult mcshane_extend(const SampleSet& samples, const Grid& grid);

/// Every node within tol of the minimum of the extension is a sample point,
/// and the minimum equals the smallest sample value. Throws SamplesOffGrid if
/// some sample is not a node of the extension grid.
CheckReport verify_minimizer_location(const SampleSet& samples, const EnvelopeResult& ext,
                                      double tol = kDefaultTol);

}  // namespace infconv
