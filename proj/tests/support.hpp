#pragma once

// Seeded instance generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "infconv/envelope.hpp"
#include "infconv/grid.hpp"

namespace testsupport {

using namespace infconv;

inline double pick(std::mt19937_64& rng, std::initializer_list<double> options) {
    std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
    return *(options.begin() + d(rng));
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Grid with `dim` axes of lo..hi points each and a dyadic spacing, so
/// offsets times spacing are exact.
inline Grid random_grid(std::mt19937_64& rng, int dim, std::size_t lo, std::size_t hi) {
    std::vector<double> origin, spacing;
    std::vector<Index> counts;
    for (int a = 0; a < dim; ++a) {
        const double h = pick(rng, {0.25, 0.5, 1.0});
        counts.push_back(uniform_size(rng, lo, hi));
        origin.push_back(-h * static_cast<double>(uniform_size(rng, 0, counts.back())));
        spacing.push_back(h);
    }
    return Grid(origin, spacing, counts);
}

enum class Values { Integer, Real };

/// Proper function with a few +inf boxes. Integer values make ties exact;
/// real values are generic.
inline GridFunction random_function(std::mt19937_64& rng, const Grid& grid, Values kind,
                                    bool with_inf = true) {
    std::vector<double> v(grid.size());
    std::uniform_int_distribution<int> integer(-20, 20);
    std::uniform_real_distribution<double> real(-10.0, 10.0);
    for (auto& x : v) x = kind == Values::Integer ? integer(rng) : real(rng);
    if (with_inf) {
        const int boxes = static_cast<int>(uniform_size(rng, 0, 3));
        for (int b = 0; b < boxes; ++b) {
            std::array<Index, 3> lo{0, 0, 0}, hi{0, 0, 0};
            for (int a = 0; a < grid.dim(); ++a) {
                const Index n = grid.count(a);
                lo[a] = uniform_size(rng, 0, n - 1);
                hi[a] = std::min(n - 1, lo[a] + uniform_size(rng, 0, n / 2));
            }
            for (Index i = 0; i < grid.size(); ++i) {
                const auto m = grid.unflatten(i);
                bool in = true;
                for (int a = 0; a < grid.dim(); ++a) in = in && m[a] >= lo[a] && m[a] <= hi[a];
                if (in) v[i] = kInf;
            }
        }
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == kInf; }))
            v[uniform_size(rng, 0, v.size() - 1)] = 0.0;
    }
    return GridFunction(grid, std::move(v));
}

/// Discrete convex function in 1D: cumulative sums of nondecreasing slopes.
inline GridFunction random_convex_1d(std::mt19937_64& rng, const Grid& grid) {
    std::vector<double> slopes(grid.size());
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (auto& s : slopes) s = d(rng);
    std::sort(slopes.begin(), slopes.end());
    std::vector<double> v(grid.size());
    double acc = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    for (Index i = 0; i < grid.size(); ++i) {
        v[i] = acc;
        acc += slopes[i];
    }
    return GridFunction(grid, std::move(v));
}

/// Separable convex function sum_a g_a(x_a) on a box, g_a discrete convex.
inline GridFunction random_separable_convex(std::mt19937_64& rng, const Grid& grid) {
    std::vector<std::vector<double>> parts;
    for (int a = 0; a < grid.dim(); ++a) {
        const Grid line({0.0}, {grid.spacing(a)}, {grid.count(a)});
        const auto g = random_convex_1d(rng, line);
        parts.emplace_back(g.values().begin(), g.values().end());
    }
    std::vector<double> v(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const auto m = grid.unflatten(i);
        double s = 0.0;
        for (int a = 0; a < grid.dim(); ++a) s += parts[a][m[a]];
        v[i] = s;
    }
    return GridFunction(grid, std::move(v));
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace testsupport

#ifdef DOCTEST_LIBRARY_INCLUDED
// Expects `expr` to throw infconv::Error with the given code.
#define CHECK_CODE(expr, expected)                          \
    do {                                                    \
        try {                                               \
            (void)(expr);                                   \
            FAIL("expected error " << to_string(expected)); \
        } catch (const Error& e) {                          \
            CHECK(e.code() == (expected));                  \
        }                                                   \
    } while (0)
#endif
