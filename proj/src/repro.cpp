#include "infconv/repro.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace infconv::repro {

namespace {

void require_even(int m) {
    if (m < 4 || m % 2 != 0)
        throw Error(ErrorCode::OddSubdivision, "m must be even and at least 4, got " + std::to_string(m));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sup_norm(std::span<const double> u) {
    double s = 0.0;
    for (double v : u) s = std::max(s, std::fabs(v));
    return s;
}

std::string describe(const char* what, double got, double want) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", expected " << want;
    return os.str();
}

// u~_n(t) from the three-piece definition with slope n + 1.
double ramp(double n_plus_1, double t) {
    const double r = 1.0 / n_plus_1;
    if (t <= 0.5 - r) return 1.0;
    if (t >= 0.5 + r) return -1.0;
    return -n_plus_1 * t + n_plus_1 / 2.0;
}

}  // namespace

std::vector<double> example16_weights(int m) {
    require_even(m);
    const double h = 1.0 / m;
    std::vector<double> w(static_cast<std::size_t>(m) + 1);
    const int half = m / 2;
    for (int i = 0; i <= m; ++i) {
        if (i == 0) w[i] = h / 2;
        else if (i < half) w[i] = h;
        else if (i == half) w[i] = 0.0;
        else if (i < m) w[i] = -h;
        else w[i] = -h / 2;
    }
    return w;
}

std::vector<double> example16_ramp_nodes(int m) {
    require_even(m);
    std::vector<double> u(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) u[i] = ramp(static_cast<double>(m), static_cast<double>(i) / m);
    return u;
}

double example16_discrete_minimum(int m) {
    const auto w = example16_weights(m);
    double l1 = 0.0;
    for (double v : w) l1 += std::fabs(v);
    return 1.0 / l1;
}

double example16_minimum_by_bisection(int m) {
    const auto w = example16_weights(m);
    // <w, u> over the box |u_i| <= t is largest at a vertex; feasible iff that
    // maximum reaches 1.
    auto feasible = [&](double t) {
        double best = 0.0;
        for (double wi : w) best += std::max(wi * t, wi * -t);
        return best >= 1.0;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (!feasible(hi)) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

Example16Report example16_paper_sequence(std::span<const int> m_list) {
    Example16Report report;
    for (int m : m_list) {
        const auto w = example16_weights(m);
        auto u = example16_ramp_nodes(m);
        Example16Row row;
        row.m = m;
        row.n = m - 1;
        row.raw_constraint = dot(w, u);
        for (double& v : u) v /= row.raw_constraint;
        row.normalized_constraint = dot(w, u);
        row.sup_norm = sup_norm(u);
        row.discrete_minimum = example16_discrete_minimum(m);
        row.bisection_minimum = example16_minimum_by_bisection(m);

        const double expected_norm = static_cast<double>(m) / (m - 1);
        const double expected_raw = 1.0 - 1.0 / m;
        row.passed = true;
        auto require = [&](bool ok, const char* what, double got, double want) {
            if (!ok) {
                row.passed = false;
                report.failures.push_back("m=" + std::to_string(m) + " " + describe(what, got, want));
            }
        };
        require(std::fabs(row.raw_constraint - expected_raw) <= 1e-12, "c(u~)", row.raw_constraint,
                expected_raw);
        require(std::fabs(row.normalized_constraint - 1.0) <= 1e-12, "c(u)", row.normalized_constraint, 1.0);
        require(std::fabs(row.sup_norm - expected_norm) <= 1e-12, "max|u|", row.sup_norm, expected_norm);
        require(std::fabs(row.discrete_minimum - expected_norm) <= 1e-12, "discrete minimum",
                row.discrete_minimum, expected_norm);
        require(std::fabs(row.bisection_minimum - row.discrete_minimum) <= 1e-12, "bisection minimum",
                row.bisection_minimum, row.discrete_minimum);
        require(row.discrete_minimum > 1.0, "discrete minimum above 1", row.discrete_minimum, 1.0);
        report.rows.push_back(row);
    }
    std::vector<Example16Row> by_m = report.rows;
    std::sort(by_m.begin(), by_m.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
    for (std::size_t i = 1; i < by_m.size(); ++i) {
        if (by_m[i].m != by_m[i - 1].m && !(by_m[i].discrete_minimum < by_m[i - 1].discrete_minimum))
            report.failures.push_back("discrete minima not strictly decreasing at m=" + std::to_string(by_m[i].m));
    }
    report.passed = report.failures.empty();
    return report;
}

GridFunction example16_ramp_family(int m) {
    const auto w = example16_weights(m);
    const double h = 1.0 / m;
    const int count = m / 2;
    std::vector<double> values(static_cast<std::size_t>(count));
    std::vector<double> u(w.size());
    for (int j = 1; j <= count; ++j) {
        const double half_width = j * h;
        for (int i = 0; i <= m; ++i) {
            const double t = static_cast<double>(i) / m;
            u[i] = std::clamp((0.5 - t) / half_width, -1.0, 1.0);
        }
        values[j - 1] = sup_norm(u) / dot(w, u);
    }
    return GridFunction(Grid({h}, {h}, {static_cast<Index>(count)}), std::move(values));
}

GridFunction example16_sequence_norms(int count) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int n = 1; n <= count; ++n) {
        const double np1 = n + 1.0;
        const double r = 1.0 / np1;
        // Trapezoid on the breakpoints is exact for a piecewise-linear u~.
        const double knots[] = {0.0, 0.5 - r, 0.5, 0.5 + r, 1.0};
        double c = 0.0;
        for (int s = 0; s < 4; ++s) {
            const double a = knots[s];
            const double b = knots[s + 1];
            const double area = (b - a) * (ramp(np1, a) + ramp(np1, b)) / 2;
            c += (b <= 0.5) ? area : -area;
        }
        values[n - 1] = 1.0 / c;  // max|u~| = 1
    }
    return GridFunction(Grid({1.0}, {1.0}, {static_cast<Index>(count)}), std::move(values));
}

// ---------------------------------------------------------------------------

WeierstrassInstance make_weierstrass_instance(std::vector<Point> sequence, int terms,
                                              PointSet domain, NormKind norm) {
    if (terms < 1) throw Error(ErrorCode::InvalidArgument, "number of terms must be >= 1");
    if (sequence.empty()) throw Error(ErrorCode::EmptySet, "sequence is empty");
    if (static_cast<std::size_t>(terms) > sequence.size())
        throw Error(ErrorCode::InvalidArgument, "more series terms than sequence points");
    const auto members = domain.members();
    if (members.empty()) throw Error(ErrorCode::EmptySet, "domain A is empty");

    const Grid& grid = domain.grid();
    const int dim = grid.dim();
    Point lo{kInf, kInf, kInf};
    Point hi{-kInf, -kInf, -kInf};
    std::vector<Point> coords;
    coords.reserve(members.size());
    for (Index i : members) {
        coords.push_back(grid.point(i));
        for (int a = 0; a < dim; ++a) {
            lo[a] = std::min(lo[a], coords.back()[a]);
            hi[a] = std::max(hi[a], coords.back()[a]);
        }
    }
    for (auto& p : sequence) {
        for (int a = dim; a < kMaxDim; ++a) p[a] = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double slack = 1e-12 * std::max(1.0, std::fabs(hi[a] - lo[a]));
            if (p[a] < lo[a] - slack || p[a] > hi[a] + slack)
                throw Error(ErrorCode::InvalidArgument, "sequence point outside A");
        }
        if (!domain.contains(grid.nearest(p)))
            throw Error(ErrorCode::InvalidArgument, "sequence point outside A");
    }

    double diameter = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t j = i + 1; j < coords.size(); ++j) {
            const Point z{coords[i][0] - coords[j][0], coords[i][1] - coords[j][1],
                          coords[i][2] - coords[j][2]};
            diameter = std::max(diameter, infconv::norm(norm, z, dim));
        }
    }
    if (diameter == 0.0) throw Error(ErrorCode::DegenerateDiameter, "A has zero diameter");
    return WeierstrassInstance{std::move(sequence), terms, std::move(domain), norm, diameter};
}

double weierstrass_value(const WeierstrassInstance& inst, const Point& x) {
    const int dim = inst.domain.grid().dim();
    const auto len = inst.sequence.size();
    // suffix[k-1] = d(x, X_k) = min_{n >= k} ||x_n - x||
    std::vector<double> suffix(len);
    double running = kInf;
    for (std::size_t n = len; n-- > 0;) {
        const auto& p = inst.sequence[n];
        const Point z{p[0] - x[0], p[1] - x[1], p[2] - x[2]};
        running = std::min(running, infconv::norm(inst.norm, z, dim));
        suffix[n] = running;
    }
    double sum = 0.0;
    double weight = 0.5;
    for (int k = 1; k <= inst.terms; ++k) {
        sum += suffix[static_cast<std::size_t>(k - 1)] * weight / inst.diameter;
        weight *= 0.5;
    }
    return sum;
}

GridFunction weierstrass_function(const WeierstrassInstance& inst) {
    const Grid& grid = inst.domain.grid();
    std::vector<double> values(grid.size(), kInf);
    for (Index i = 0; i < grid.size(); ++i)
        if (inst.domain.contains(i)) values[i] = weierstrass_value(inst, grid.point(i));
    return GridFunction(grid, std::move(values));
}

WeierstrassReport weierstrass_demo(const WeierstrassInstance& inst, const Point& limit, int checked) {
    if (checked < 1 || static_cast<std::size_t>(checked) > inst.sequence.size())
        throw Error(ErrorCode::InvalidArgument, "checked range exceeds the sequence");
    WeierstrassReport report;
    for (int k0 = 1; k0 <= checked; ++k0) {
        const double v = weierstrass_value(inst, inst.sequence[static_cast<std::size_t>(k0 - 1)]);
        const double bound = std::ldexp(1.0, 1 - k0);
        report.value_at_sequence.push_back(v);
        report.bound.push_back(bound);
        if (!(v < bound)) report.failures.push_back(describe("f(x_k0) below 2^(1-k0)", v, bound));
    }
    const auto f = weierstrass_function(inst);
    const auto vals = f.values();
    report.argmin = static_cast<Index>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    report.min_value = vals[report.argmin];
    report.nearest_to_limit = f.grid().nearest(limit);
    report.tail_bound = std::ldexp(1.0, -inst.terms);
    if (report.argmin != report.nearest_to_limit)
        report.failures.push_back("grid argmin " + std::to_string(report.argmin) +
                                  " is not the node nearest the limit " +
                                  std::to_string(report.nearest_to_limit));
    report.passed = report.failures.empty();
    return report;
}

// ---------------------------------------------------------------------------

NormAttainmentReport norm_attainment_demo(std::span<const double> coeffs, double radius,
                                          const Grid& grid, NormKind norm, int n_max) {
    const int dim = grid.dim();
    for (int a = 0; a < dim; ++a) {
        const double first = grid.coordinate(a, 0);
        const double last = grid.coordinate(a, grid.count(a) - 1);
        if (first > -radius || last < radius)
            throw Error(ErrorCode::BallOffGrid, "grid does not cover the ball");
    }
    const auto ball = PointSet::ball(grid, radius, norm);
    if (ball.empty()) throw Error(ErrorCode::BallOffGrid, "no grid node lies in the ball");

    NormAttainmentReport report;
    report.coeffs.assign(coeffs.begin(), coeffs.end());
    report.radius = radius;
    report.norm = norm;
    report.dual_norm = dual_norm(norm, coeffs);

    const auto f = linear_minus_on_ball(coeffs, radius, grid, norm);
    double best = -kInf;
    for (Index i : ball.members()) {
        const Point p = grid.point(i);
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += coeffs[a] * p[a];
        best = std::max(best, s);
    }
    report.expected = -best;
    report.attained = infimum(f).raw();
    if (std::fabs(report.attained - report.expected) > 1e-12)
        report.failures.push_back(describe("min f", report.attained, report.expected));

    const auto argmin_f = argmin_set(f, kDefaultTol);
    report.attaining = argmin_f.members();

    const auto seq = envelope_sequence(f, n_max, norm);
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double m = infimum(seq[n].envelope).raw();
        report.envelope_minima.push_back(m);
        const bool same = argmin_set(seq[n].envelope, kDefaultTol) == argmin_f;
        report.argmin_matches.push_back(same);
        if (std::fabs(m - report.attained) > kDefaultTol)
            report.failures.push_back("n=" + std::to_string(n + 1) + " " + describe("min f_n", m, report.attained));
        if (!same) report.failures.push_back("n=" + std::to_string(n + 1) + " argmin f_n differs from argmin f");
    }

    // A node is boundary-adjacent when some axis neighbour is outside the
    // ball mask or off the grid.
    auto boundary_adjacent = [&](Index i) {
        const auto m = grid.unflatten(i);
        for (int a = 0; a < dim; ++a) {
            if (m[a] == 0 || m[a] + 1 == grid.count(a)) return true;
            auto lo = m;
            auto hi = m;
            --lo[a];
            ++hi[a];
            if (!ball.contains(grid.flatten(lo)) || !ball.contains(grid.flatten(hi))) return true;
        }
        return false;
    };
    report.boundary_adjacent =
        std::all_of(report.attaining.begin(), report.attaining.end(), boundary_adjacent);
    const bool nonzero = std::any_of(coeffs.begin(), coeffs.end(), [](double c) { return c != 0.0; });
    if (nonzero && !report.boundary_adjacent)
        report.failures.push_back("a minimizer is not adjacent to the ball boundary");
    report.passed = report.failures.empty();
    return report;
}

// ---------------------------------------------------------------------------

GridFunction remark26_function(const Grid& grid_1d) {
    if (grid_1d.dim() != 1) throw Error(ErrorCode::InvalidArgument, "expected a 1D grid");
    const auto zero = grid_1d.locate({0.0, 0.0, 0.0}, 1e-9);
    if (!zero) throw Error(ErrorCode::ZeroNotOnGrid, "0 is not a node of the grid");
    std::vector<double> values(grid_1d.size());
    bool has_positive = false;
    for (Index i = 0; i < grid_1d.size(); ++i) {
        const double x = grid_1d.coordinate(0, i);
        if (i == *zero) {
            values[i] = -kInf;
        } else if (x > 0.0) {
            values[i] = std::log(x);
            has_positive = true;
        } else {
            values[i] = kInf;
        }
    }
    if (!has_positive) throw Error(ErrorCode::InvalidArgument, "grid has no positive node");
    return GridFunction(grid_1d, std::move(values), true);
}

Remark26Report remark26_counterexample(const Grid& grid_1d, double k) {
    const auto f = remark26_function(grid_1d);
    Remark26Report report;
    report.k = k;
    const auto env = inf_conv_bruteforce(f, Kernel::conical(k));
    const auto v = env.envelope.values();
    report.envelope_all_neg_inf = std::all_of(v.begin(), v.end(), [](double x) { return x == -kInf; });
    if (!report.envelope_all_neg_inf) report.failures.push_back("envelope is not identically -inf");

    report.infimum = check_infimum_preservation(f, env);
    if (!report.infimum.passed) report.failures.push_back("infimum check should pass (both -inf)");
    report.minimizers = check_minimizer_preservation(f, env);
    if (report.minimizers.passed)
        report.failures.push_back("minimizer preservation unexpectedly passed for the -inf function");

    // Replace -inf by a finite floor well below every ln x on the grid.
    double lowest = 0.0;
    for (double x : f.values())
        if (std::isfinite(x)) lowest = std::min(lowest, x);
    report.finite_floor = lowest - 1000.0;
    std::vector<double> finite(f.values().begin(), f.values().end());
    for (double& x : finite)
        if (x == -kInf) x = report.finite_floor;
    const GridFunction g(grid_1d, std::move(finite));
    const auto env_g = pasch_hausdorff(g, k);
    report.finite_variant = check_minimizer_preservation(g, env_g);
    if (!report.finite_variant.passed)
        report.failures.push_back("minimizer preservation fails for the finite variant");
    report.passed = report.failures.empty();
    return report;
}

}  // namespace infconv::repro
