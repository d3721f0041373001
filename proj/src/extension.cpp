#include "infconv/extension.hpp"

#include <algorithm>
#include <cmath>

namespace infconv {

namespace {

Point difference(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

}  // namespace

SampleSet::SampleSet(int dim, std::vector<Point> points, std::vector<double> values, NormKind norm,
                     double k)
    : dim_(dim), points_(std::move(points)), values_(std::move(values)), norm_(norm), k_(k) {
    if (dim_ < 1 || dim_ > kMaxDim) throw Error(ErrorCode::InvalidArgument, "sample dimension must be 1..3");
    if (points_.size() != values_.size())
        throw Error(ErrorCode::DimensionMismatch, "points and values differ in length");
    if (points_.empty()) throw Error(ErrorCode::EmptySet, "sample set is empty");
    if (!(k_ > 0.0) || !std::isfinite(k_))
        throw Error(ErrorCode::InvalidArgument, "Lipschitz constant must be positive");
    for (auto& p : points_) {
        for (int a = dim_; a < kMaxDim; ++a) p[a] = 0.0;
        for (int a = 0; a < dim_; ++a)
            if (!std::isfinite(p[a])) throw Error(ErrorCode::InvalidArgument, "sample point not finite");
    }
    for (double v : values_)
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "sample value not finite");
    auto sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorCode::InvalidArgument, "sample points must be pairwise distinct");
}

CheckReport validate_lipschitz(const SampleSet& samples) {
    CheckReport r{"sample_lipschitz", true, 0.0, {}, ""};
    const auto& p = samples.points();
    const auto& v = samples.values();
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double dist = norm(samples.norm(), difference(p[i], p[j]), samples.dim());
            const double over = std::fabs(v[i] - v[j]) - samples.k() * dist;
            if (over > r.worst_violation) {
                r.worst_violation = over;
                r.witness = {i, j};
            }
        }
    }
    r.passed = r.worst_violation <= 1e-12;
    r.detail = std::to_string(p.size()) + " samples, k = " + std::to_string(samples.k());
    return r;
}

EnvelopeResult mcshane_extend(const SampleSet& samples, const Grid& grid) {
    if (grid.dim() != samples.dim())
        throw Error(ErrorCode::DimensionMismatch, "grid and samples differ in dimension");
    const auto valid = validate_lipschitz(samples);
    if (!valid.passed) throw Error(ErrorCode::LipschitzViolated, "samples are not k-Lipschitz: " + valid.detail);

    const auto& pts = samples.points();
    const auto& vals = samples.values();
    const double k = samples.k();
    std::vector<double> values(grid.size());
    std::vector<Index> witness(grid.size());
    for (Index x = 0; x < grid.size(); ++x) {
        const Point px = grid.point(x);
        double best = kInf;
        Index arg = kNoWitness;
        for (std::size_t s = 0; s < pts.size(); ++s) {
            const Point z = difference(px, pts[s]);
            const double dist = norm(samples.norm(), z, samples.dim());
            if (dist == 0.0) {
                // Lipschitz on S makes the sample itself the exact minimum here.
                best = vals[s];
                arg = s;
                break;
            }
            const double cost = vals[s] + k * dist;
            if (cost < best) {
                best = cost;
                arg = s;
            }
        }
        values[x] = best;
        witness[x] = arg;
    }
    return EnvelopeResult{GridFunction(grid, std::move(values)), std::move(witness),
                          EnvelopeResult::WitnessDomain::Samples};
}

CheckReport verify_minimizer_location(const SampleSet& samples, const EnvelopeResult& ext,
                                      double tol) {
    const Grid& grid = ext.envelope.grid();
    PointSet sample_nodes(grid);
    for (const auto& p : samples.points()) {
        const auto node = grid.locate(p, 1e-9);
        if (!node) throw Error(ErrorCode::SamplesOffGrid, "a sample point is not a grid node");
        sample_nodes.insert(*node);
    }
    CheckReport r{"minimizer_location", true, 0.0, {}, ""};
    const auto minimizers = argmin_set(ext.envelope, tol);
    Index outside = 0;
    for (Index x : minimizers.members()) {
        if (!sample_nodes.contains(x)) {
            if (outside == 0) r.witness = {x};
            ++outside;
        }
    }
    const double ext_min = infimum(ext.envelope).raw();
    const double sample_min = *std::min_element(samples.values().begin(), samples.values().end());
    const double gap = std::fabs(ext_min - sample_min);
    r.worst_violation = std::max(static_cast<double>(outside), gap);
    r.passed = outside == 0 && gap == 0.0;
    r.detail = std::to_string(minimizers.count()) + " minimizers, " + std::to_string(outside) +
               " off the sample set; min extension - min samples = " + std::to_string(ext_min - sample_min);
    return r;
}

}  // namespace infconv
