#pragma once

#include <span>
#include <string>
#include <vector>

#include "infconv/analysis.hpp"
#include "infconv/envelope.hpp"
#include "infconv/grid.hpp"

namespace infconv::repro {

// ---------------------------------------------------------------------------
// Sup-norm minimization over the hyperplane
//   M = { u in C[0,1] : int_0^1/2 u - int_1/2^1 u = 1 }
// with u piecewise linear on m equal subintervals (m even, so 1/2 is a node).
// The constraint is the trapezoid rule <w, u> with
//   w_0 = h/2, w_i = h (0 < i < m/2), w_{m/2} = 0, w_i = -h (m/2 < i < m), w_m = -h/2.

std::vector<double> example16_weights(int m);

/// Node values of the ramp sequence 1 | -(n+1)t + (n+1)/2 | -1 with n + 1 = m,
/// before normalization.
std::vector<double> example16_ramp_nodes(int m);

struct Example16Row {
    int m = 0;
    int n = 0;
    double raw_constraint = 0.0;         // c(u~), expected 1 - 1/m
    double normalized_constraint = 0.0;  // c(u) after u = u~ / c(u~), expected 1
    double sup_norm = 0.0;               // max |u|, expected (n+1)/n
    double discrete_minimum = 0.0;       // 1 / sum |w|
    double bisection_minimum = 0.0;      // independent cross-check
    bool passed = false;
};

struct Example16Report {
    std::vector<Example16Row> rows;
    std::vector<std::string> failures;
    bool passed = false;
};

/// Builds u~ and u = u~/c(u~) for each m and checks c(u) = 1 and
/// max|u| = m/(m-1) to 1e-12; also checks that the discrete minima decrease
/// strictly and stay above 1. Throws OddSubdivision for odd m or m < 4.
Example16Report example16_paper_sequence(std::span<const int> m_list);

/// min { max|u_i| : <w, u> = 1 } = 1 / sum|w_i| = m/(m-1).
double example16_discrete_minimum(int m);

/// The same minimum by bisection on the sup-norm level t, deciding
/// feasibility from the vertices of the box |u_i| <= t.
double example16_minimum_by_bisection(int m);

/// f(r) = max|u_r| for the feasible ramps of half-width r = j/m,
/// j = 1..m/2, on the grid r = 1/m, 2/m, ..., 1/2.
GridFunction example16_ramp_family(int m);

/// ||u_n|| for n = 1..count on the grid n = 1, 2, ..., count, with the
/// constraint integrated exactly over the ramp breakpoints.
GridFunction example16_sequence_norms(int count);

// ---------------------------------------------------------------------------
// f(x) = sum_{k=1}^{K} d(x, X_k) / (2^k D(A)), X_k = { x_n : n >= k }, on a
// bounded set A.

struct WeierstrassInstance {
    std::vector<Point> sequence;  // x_1, x_2, ...
    int terms = 1;                // K
    PointSet domain;              // A
    NormKind norm = NormKind::L2;
    double diameter = 0.0;        // D(A), max pairwise distance over A
};

/// Validates that every sequence point lies in A (inside the bounding box of
/// A with its nearest node in A) and computes D(A). Throws
/// DegenerateDiameter when D(A) = 0.
WeierstrassInstance make_weierstrass_instance(std::vector<Point> sequence, int terms,
                                              PointSet domain, NormKind norm);

double weierstrass_value(const WeierstrassInstance& inst, const Point& x);

/// Values on the nodes of A, +inf off A.
GridFunction weierstrass_function(const WeierstrassInstance& inst);

struct WeierstrassReport {
    std::vector<double> value_at_sequence;  // f(x_k0), k0 = 1..checked
    std::vector<double> bound;              // 2^(1 - k0)
    Index argmin = 0;
    Index nearest_to_limit = 0;
    double min_value = 0.0;
    double tail_bound = 0.0;  // 2^-K truncation bound
    std::vector<std::string> failures;
    bool passed = false;
};

/// Checks f(x_k0) < 2^(1-k0) for k0 = 1..checked and that the global grid
/// minimizer is the node nearest `limit`.
WeierstrassReport weierstrass_demo(const WeierstrassInstance& inst, const Point& limit, int checked);

// ---------------------------------------------------------------------------
// f = -g + I_B on the grid ball; every envelope f_n keeps min f and argmin f.

struct NormAttainmentReport {
    std::vector<double> coeffs;
    double radius = 1.0;
    NormKind norm = NormKind::L2;
    double dual_norm = 0.0;
    double attained = 0.0;  // min f
    double expected = 0.0;  // -max { <g, x> : x node in B }
    std::vector<Index> attaining;
    std::vector<double> envelope_minima;  // min f_n, n = 1..n_max
    std::vector<bool> argmin_matches;
    bool boundary_adjacent = false;
    std::vector<std::string> failures;
    bool passed = false;
};

/// Throws BallOffGrid when the ball has no node or is not covered by the
/// grid.
NormAttainmentReport norm_attainment_demo(std::span<const double> coeffs, double radius,
                                          const Grid& grid, NormKind norm, int n_max);

// ---------------------------------------------------------------------------
// ln x for x > 0, -inf at 0, +inf for x < 0.

GridFunction remark26_function(const Grid& grid_1d);

struct Remark26Report {
    double k = 1.0;
    bool envelope_all_neg_inf = false;
    CheckReport infimum;          // expected to pass (both -inf)
    CheckReport minimizers;       // expected to FAIL
    CheckReport finite_variant;   // -inf replaced by a finite floor; expected to pass
    double finite_floor = 0.0;
    std::vector<std::string> failures;
    bool passed = false;
};

/// Throws ZeroNotOnGrid when 0 is not a node, InvalidArgument for a grid
/// that is not 1D or has no positive node.
Remark26Report remark26_counterexample(const Grid& grid_1d, double k);

}  // namespace infconv::repro
