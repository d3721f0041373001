#include <doctest.h>

#include <numeric>

#include "infconv/repro.hpp"
#include "support.hpp"

using namespace infconv;
using namespace infconv::repro;

TEST_CASE("sup-norm problem: weights and ramp") {
    for (int m : {4, 10, 100, 1000}) {
        const auto w = example16_weights(m);
        REQUIRE(w.size() == static_cast<std::size_t>(m) + 1);
        CHECK(w[static_cast<std::size_t>(m / 2)] == 0.0);
        double l1 = 0.0;
        for (double v : w) l1 += std::fabs(v);
        CHECK(std::fabs(l1 - (1.0 - 1.0 / m)) <= 1e-12);
        const auto u = example16_ramp_nodes(m);
        CHECK(u.front() == 1.0);
        CHECK(u.back() == -1.0);
        CHECK(u[static_cast<std::size_t>(m / 2)] == 0.0);
    }
    CHECK_CODE(example16_weights(5), ErrorCode::OddSubdivision);
    CHECK_CODE(example16_discrete_minimum(2), ErrorCode::OddSubdivision);
}

TEST_CASE("sup-norm problem: minima") {
    CHECK(std::fabs(example16_discrete_minimum(4) - 4.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(example16_discrete_minimum(1000) - 1000.0 / 999.0) <= 1e-12);
    for (int m : {4, 6, 10, 100})
        CHECK(std::fabs(example16_minimum_by_bisection(m) - example16_discrete_minimum(m)) <= 1e-12);

    const int ms[] = {4, 10, 100};
    const auto r = example16_paper_sequence(ms);
    CHECK(r.passed);
    REQUIRE(r.rows.size() == 3);
    CHECK(std::fabs(r.rows[0].sup_norm - 4.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(r.rows[2].sup_norm - 100.0 / 99.0) <= 1e-12);
    CHECK(std::fabs(r.rows[1].raw_constraint - 0.9) <= 1e-12);
    const int odd[] = {4, 7};
    CHECK_CODE(example16_paper_sequence(odd), ErrorCode::OddSubdivision);

    // The sign(w)/(1-h) competitor attains the discrete minimum.
    const auto w = example16_weights(10);
    double c = 0.0;
    for (double v : w) c += std::fabs(v) / (1.0 - 0.1);
    CHECK(std::fabs(c - 1.0) <= 1e-12);

    const auto fam = example16_ramp_family(10);
    CHECK(std::fabs(fam[0] - 10.0 / 9.0) <= 1e-12);
    for (Index j = 1; j < fam.size(); ++j) CHECK(fam[j] > fam[j - 1]);
}

TEST_CASE("Weierstrass construction") {
    const Grid g = Grid::box(2, -1.0, 1.0, 0.1);
    const Point p{0.3, -0.2, 0.0};
    std::vector<Point> seq;
    for (int n = 1; n <= 20; ++n) {
        const double r = 0.5 * std::pow(0.5, n);
        seq.push_back({p[0] + r * std::cos(n), p[1] + r * std::sin(n), 0.0});
    }
    const auto inst = make_weierstrass_instance(seq, 20, PointSet::all(g), NormKind::L2);
    CHECK(inst.diameter == doctest::Approx(std::sqrt(8.0)));
    const auto r = weierstrass_demo(inst, p, 8);
    CHECK(r.passed);
    CHECK(r.argmin == g.nearest(p));
    const auto f = weierstrass_function(inst);
    for (Index x = 0; x < g.size(); ++x) {
        CHECK(f[x] >= 0.0);
        CHECK(f[x] < 1.0);
    }

    const std::vector<Point> constant(5, Point{0.5, 0.5, 0.0});
    const auto flat = make_weierstrass_instance(constant, 5, PointSet::all(g), NormKind::Linf);
    CHECK(weierstrass_value(flat, {0.5, 0.5, 0.0}) == 0.0);

    const Grid tiny = Grid::box(2, 0.0, 0.0, 1.0);
    CHECK_CODE(make_weierstrass_instance({{0.0, 0.0, 0.0}}, 1, PointSet::all(tiny), NormKind::L2),
               ErrorCode::DegenerateDiameter);
    CHECK_CODE(make_weierstrass_instance({{2.0, 0.0, 0.0}}, 1, PointSet::all(g), NormKind::L2),
               ErrorCode::InvalidArgument);
}

TEST_CASE("norm attainment") {
    const Grid g = Grid::box(2, -1.0, 1.0, 0.2);
    const double zero[] = {0.0, 0.0};
    const auto z = norm_attainment_demo(zero, 1.0, g, NormKind::L2, 3);
    CHECK(z.passed);
    CHECK(z.attained == 0.0);
    CHECK(z.attaining == PointSet::ball(g, 1.0, NormKind::L2).members());

    const Grid line = Grid::line(-2.0, 2.0, 0.5);
    const double one[] = {1.0};
    const auto r1 = norm_attainment_demo(one, 1.0, line, NormKind::L2, 5);
    CHECK(r1.passed);
    CHECK(r1.attained == -1.0);
    CHECK(r1.attaining == std::vector<Index>{*line.locate({1.0, 0.0, 0.0})});

    const double g34[] = {3.0, 4.0};
    const auto r2 = norm_attainment_demo(g34, 1.0, g, NormKind::L2, 5);
    CHECK(r2.passed);
    CHECK(r2.attained == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(r2.attaining == std::vector<Index>{g.nearest({0.6, 0.8, 0.0})});
    CHECK(r2.dual_norm == 5.0);
    for (double m : r2.envelope_minima) CHECK(m == r2.attained);

    CHECK_CODE(norm_attainment_demo(one, 3.0, line, NormKind::L2, 2), ErrorCode::BallOffGrid);
    CHECK_CODE(norm_attainment_demo(one, 0.01, Grid({-0.3}, {0.25}, {3}), NormKind::L2, 2), ErrorCode::BallOffGrid);
}

TEST_CASE("log counterexample") {
    const auto r = remark26_counterexample(Grid::line(-1.0, 1.0, 0.125), 1.0);
    CHECK(r.passed);
    CHECK(r.envelope_all_neg_inf);
    CHECK(r.infimum.passed);
    CHECK_FALSE(r.minimizers.passed);
    CHECK(r.finite_variant.passed);
    CHECK_CODE(remark26_function(Grid({-0.3}, {0.25}, {4})), ErrorCode::ZeroNotOnGrid);
    CHECK_CODE(remark26_function(Grid::line(-1.0, 0.0, 0.5)), ErrorCode::InvalidArgument);
    CHECK_CODE(remark26_function(Grid::box(2, -1.0, 1.0, 0.5)), ErrorCode::InvalidArgument);
}
