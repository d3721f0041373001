#include <doctest.h>

#include <random>

#include "infconv/extension.hpp"
#include "support.hpp"

using namespace infconv;
using namespace testsupport;

namespace {

// k-Lipschitz samples on distinct grid nodes: values of a random k-Lipschitz
// function (minimum of cones) at the chosen nodes.
SampleSet lipschitz_samples(std::mt19937_64& rng, const Grid& g, std::size_t count, double k, NormKind n) {
    std::vector<Index> nodes(g.size());
    for (Index i = 0; i < g.size(); ++i) nodes[i] = i;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    nodes.resize(std::min(count, g.size()));
    std::vector<Point> cones;
    std::vector<double> heights;
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int c = 0; c < 4; ++c) {
        cones.push_back({d(rng), d(rng), 0.0});
        heights.push_back(d(rng));
    }
    std::vector<Point> pts;
    std::vector<double> vals;
    for (Index i : nodes) {
        const Point p = g.point(i);
        double v = kInf;
        for (std::size_t c = 0; c < cones.size(); ++c) {
            const Point z{p[0] - cones[c][0], p[1] - cones[c][1], 0.0};
            v = std::min(v, heights[c] + 0.5 * k * norm(n, z, g.dim()));
        }
        pts.push_back(p);
        vals.push_back(v);
    }
    return SampleSet(g.dim(), pts, vals, n, k);
}

}  // namespace

TEST_CASE("sample set validation") {
    CHECK(validate_lipschitz(SampleSet(1, {{0.0, 0, 0}}, {3.0}, NormKind::L2, 1.0)).passed);
    const SampleSet bad(2, {{0.0, 0.0, 0}, {1.0, 0.0, 0}, {0.0, 3.0, 0}}, {0.0, 2.0, 1.0}, NormKind::L2, 1.0);
    const auto r = validate_lipschitz(bad);
    CHECK_FALSE(r.passed);
    CHECK(r.witness == std::vector<Index>{0, 1});
    CHECK(r.worst_violation == doctest::Approx(1.0));

    std::vector<Point> pts;
    std::vector<double> vals;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 30; ++i) {
        pts.push_back({d(rng), d(rng), 0.0});
        vals.push_back(std::hypot(pts.back()[0], pts.back()[1]));
    }
    CHECK(validate_lipschitz(SampleSet(2, pts, vals, NormKind::L2, 1.0)).passed);

    CHECK_CODE(SampleSet(1, {{0.0, 0, 0}, {0.0, 0, 0}}, {1.0, 1.0}, NormKind::L2, 1.0), ErrorCode::InvalidArgument);
    CHECK_CODE(SampleSet(1, {{0.0, 0, 0}}, {1.0, 2.0}, NormKind::L2, 1.0), ErrorCode::DimensionMismatch);
    CHECK_CODE(SampleSet(1, {}, {}, NormKind::L2, 1.0), ErrorCode::EmptySet);
    CHECK_CODE(SampleSet(1, {{0.0, 0, 0}}, {1.0}, NormKind::L2, 0.0), ErrorCode::InvalidArgument);
    CHECK_CODE(SampleSet(1, {{0.0, 0, 0}}, {kInf}, NormKind::L2, 1.0), ErrorCode::InvalidArgument);
    CHECK_CODE(mcshane_extend(bad, Grid::box(2, 0.0, 3.0, 1.0)), ErrorCode::LipschitzViolated);
    CHECK_CODE(mcshane_extend(SampleSet(1, {{0.0, 0, 0}}, {1.0}, NormKind::L2, 1.0), Grid::box(2, 0.0, 1.0, 1.0)),
               ErrorCode::DimensionMismatch);
}

TEST_CASE("single sample extends to a cone") {
    const Grid g = Grid::box(2, -1.0, 1.0, 0.25);
    const SampleSet s(2, {{0.3, -0.1, 0}}, {2.0}, NormKind::L1, 3.0);
    const auto ext = mcshane_extend(s, g);
    CHECK(ext.witness_domain == EnvelopeResult::WitnessDomain::Samples);
    for (Index x = 0; x < g.size(); ++x) {
        const Point p = g.point(x);
        CHECK(ext.envelope[x] == doctest::Approx(2.0 + 3.0 * (std::fabs(p[0] - 0.3) + std::fabs(p[1] + 0.1))));
        CHECK(ext.argmin[x] == 0);
    }
    const SampleSet on(2, {{0.25, -0.5, 0}}, {2.0}, NormKind::L2, 1.0);
    const auto r = verify_minimizer_location(on, mcshane_extend(on, g));
    CHECK(r.passed);
    CHECK_CODE(verify_minimizer_location(s, ext), ErrorCode::SamplesOffGrid);
}

TEST_CASE("strict and tied sample minima") {
    const Grid g = Grid::line(0.0, 4.0, 0.5);
    const SampleSet strict(1, {{0.5, 0, 0}, {2.0, 0, 0}, {3.5, 0, 0}}, {1.0, 0.0, 1.0}, NormKind::L2, 1.0);
    const auto e1 = mcshane_extend(strict, g);
    CHECK(argmin_set(e1.envelope, kDefaultTol).members() == std::vector<Index>{4});
    CHECK(verify_minimizer_location(strict, e1).passed);

    const SampleSet tied(1, {{0.5, 0, 0}, {2.0, 0, 0}, {3.5, 0, 0}}, {0.0, 1.0, 0.0}, NormKind::L2, 1.0);
    const auto e2 = mcshane_extend(tied, g);
    CHECK(argmin_set(e2.envelope, kDefaultTol).members() == std::vector<Index>{1, 7});
    CHECK(verify_minimizer_location(tied, e2).passed);
}

TEST_CASE("random extensions: exact on S, k-Lipschitz, minimum preserved, maximal") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const NormKind n = trial % 3 == 0 ? NormKind::L1 : (trial % 3 == 1 ? NormKind::L2 : NormKind::Linf);
        const Grid g = Grid::box(2, -2.0, 2.0, 0.25);
        const double k = pick(rng, {0.5, 1.0, 2.0});
        const auto s = lipschitz_samples(rng, g, 12, k, n);
        REQUIRE(validate_lipschitz(s).passed);
        const auto ext = mcshane_extend(s, g);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(ext.envelope[*g.locate(s.points()[i])] == s.values()[i]);
        CHECK(check_lipschitz(ext.envelope, k, n).passed);
        CHECK(verify_minimizer_location(s, ext).passed);

        // Competitors: k-Lipschitz minorants of the samples stay below.
        for (int c = 0; c < 5; ++c) {
            const Point center{std::uniform_real_distribution<double>(-2, 2)(rng),
                               std::uniform_real_distribution<double>(-2, 2)(rng), 0.0};
            const double slope = std::uniform_real_distribution<double>(0.0, k)(rng);
            auto comp = [&](const Point& p) {
                return -slope * norm(n, Point{p[0] - center[0], p[1] - center[1], 0.0}, 2);
            };
            double shift = kInf;
            for (std::size_t i = 0; i < s.size(); ++i) shift = std::min(shift, s.values()[i] - comp(s.points()[i]));
            for (Index x = 0; x < g.size(); ++x) CHECK(comp(g.point(x)) + shift <= ext.envelope[x] + 1e-12);
        }
    }
}
