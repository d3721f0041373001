#pragma once

#include <optional>
#include <vector>

#include "infconv/grid.hpp"

namespace infconv {

/// Inf-convolution kernels: conical k*||z|| (Pasch-Hausdorff) and quadratic
/// (k/2)*||z||_2^2 (Moreau-Yosida).
struct Kernel {
    enum class Kind { Conical, Quadratic };

    Kind kind = Kind::Conical;
    double k = 1.0;
    NormKind norm = NormKind::L2;

    static Kernel conical(double k, NormKind norm = NormKind::L2);
    static Kernel quadratic(double k);

    double operator()(const Point& z, int dim) const;
};

inline constexpr Index kNoWitness = static_cast<Index>(-1);

struct EnvelopeResult {
    /// What the witness indices refer to: nodes of the envelope grid, or
    /// entries of a sample list (Lipschitz extension).
    enum class WitnessDomain { Grid, Samples };

    GridFunction envelope;
    std::vector<Index> argmin;
    WitnessDomain witness_domain = WitnessDomain::Grid;

    std::optional<Index> witness(Index x) const {
        return argmin[x] == kNoWitness ? std::nullopt : std::optional<Index>(argmin[x]);
    }
};

// Exact minimum over every grid point y of f(y) + kernel(x - y). Ties go to
// the lowest flat index. A single -inf value makes the whole envelope -inf
// with the first -inf point as witness; f == +inf gives +inf everywhere.
EnvelopeResult inf_conv_bruteforce(const GridFunction& f, const Kernel& kernel);

/// f_k(x) = min_y f(y) + k||x - y||.
///
/// One-dimensional inputs use a forward/backward witness scan and L1 inputs
/// in higher dimensions use one scan per axis; both are exact and linear in
/// the number of points. L2 and Linf in two or more dimensions have no
/// separable decomposition and are evaluated by inf_conv_bruteforce.
/// Witnesses follow the same lowest-index rule as the brute-force oracle and
/// envelope values are recomputed as f(witness) + kernel(x - witness).
///
/// Throws NegInfUnsupported for functions flagged allow_neg_inf, NonProper
/// for f == +inf and InvalidArgument for k <= 0.
EnvelopeResult pasch_hausdorff(const GridFunction& f, double k, NormKind norm = NormKind::L2);

/// f_<k>(x) = min_y f(y) + (k/2)||x - y||_2^2 by per-axis lower envelopes of
/// parabolas. Same preconditions as pasch_hausdorff.
EnvelopeResult moreau_yosida(const GridFunction& f, double k);

/// Dispatches to the fast transform for the kernel.
EnvelopeResult envelope(const GridFunction& f, const Kernel& kernel);

/// Pasch-Hausdorff envelopes f_1, ..., f_{n_max}.
std::vector<EnvelopeResult> envelope_sequence(const GridFunction& f, int n_max,
                                              NormKind norm = NormKind::L2);

/// Coordinates of the witness at x. Throws NoWitness when the envelope value
/// at x is not finite.
Point proximal_point(const EnvelopeResult& result, Index x);

/// proximal_point for every node; nullopt where no finite witness exists.
std::vector<std::optional<Point>> proximal_map(const EnvelopeResult& result);

}  // namespace infconv
