#include "infconv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace infconv {

Kernel Kernel::conical(double k, NormKind norm) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "kernel constant k must be positive");
    return Kernel{Kind::Conical, k, norm};
}

Kernel Kernel::quadratic(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "kernel constant k must be positive");
    return Kernel{Kind::Quadratic, k, NormKind::L2};
}

double Kernel::operator()(const Point& z, int dim) const {
    if (kind == Kind::Conical) return k * infconv::norm(norm, z, dim);
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += z[a] * z[a];
    return 0.5 * k * s;
}

namespace {

EnvelopeResult make_result(const GridFunction& f, std::vector<double> values,
                           std::vector<Index> argmin) {
    return EnvelopeResult{GridFunction(f.grid(), std::move(values), f.allow_neg_inf()),
                          std::move(argmin), EnvelopeResult::WitnessDomain::Grid};
}

// Runs body(begin, end) over [0, n) split into contiguous chunks. Each output
// element depends only on its own index, so the split does not change results.
template <typename Body>
void parallel_chunks(Index n, double work, Body&& body) {
    unsigned threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (work < 2e6 || threads == 1 || n < 2 * threads) {
        body(Index{0}, n);
        return;
    }
    threads = std::min(threads, 16u);
    std::vector<std::jthread> pool;
    const Index chunk = (n + threads - 1) / threads;
    for (Index begin = 0; begin < n; begin += chunk) {
        const Index end = std::min(n, begin + chunk);
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

void require_fast_path_input(const GridFunction& f, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "kernel constant k must be positive");
    if (f.allow_neg_inf())
        throw Error(ErrorCode::NegInfUnsupported,
                    "fast transforms do not accept functions flagged allow_neg_inf");
    if (!f.is_proper()) throw Error(ErrorCode::NonProper, "function is identically +inf");
}

// 1D conical transform of one line: out[i] = min_j in[j] + k*|i - j|*h.
// `in` and `out` are strided views into flat arrays; witnesses are positions
// on the line. Lowest position wins ties.
void conical_line(const double* in, Index stride, Index n, double k, double h, double* out,
                  Index* witness, std::vector<Index>& left) {
    left.assign(n, kNoWitness);
    Index best = kNoWitness;
    double best_cost = kInf;
    for (Index i = 0; i < n; ++i) {
        if (best != kNoWitness)
            best_cost = in[best * stride] + k * (static_cast<double>(i - best) * h);
        const double own = in[i * stride];
        if (own < best_cost) {
            best = i;
            best_cost = own;
        }
        left[i] = best;
    }
    best = kNoWitness;
    best_cost = kInf;
    for (Index r = n; r-- > 0;) {
        if (best != kNoWitness)
            best_cost = in[best * stride] + k * (static_cast<double>(best - r) * h);
        const double own = in[r * stride];
        if (own <= best_cost && own < kInf) {
            best = r;
            best_cost = own;
        }
        const Index l = left[r];
        const double left_cost =
            l == kNoWitness ? kInf : in[l * stride] + k * (static_cast<double>(r - l) * h);
        if (l != kNoWitness && left_cost <= best_cost) {
            out[r * stride] = left_cost;
            witness[r * stride] = l;
        } else if (best != kNoWitness) {
            out[r * stride] = best_cost;
            witness[r * stride] = best;
        } else {
            out[r * stride] = kInf;
            witness[r * stride] = kNoWitness;
        }
    }
}

// Lower envelope of the parabolas in[j] + a*(i - j)^2 over the finite entries
// of one line. Breakpoints are exact-tie friendly: a parabola that only
// touches the envelope at a single point is dropped in favour of the lower
// index already on the stack, and queries on a breakpoint keep the lower
// index.
void parabola_line(const double* in, Index stride, Index n, double a, double* out, Index* witness,
                   std::vector<Index>& hull, std::vector<double>& bounds) {
    hull.clear();
    bounds.clear();
    for (Index q = 0; q < n; ++q) {
        const double fq = in[q * stride];
        if (fq == kInf) continue;
        const double dq = static_cast<double>(q);
        double s = -kInf;
        while (!hull.empty()) {
            const Index p = hull.back();
            const double dp = static_cast<double>(p);
            s = ((fq + a * dq * dq) - (in[p * stride] + a * dp * dp)) / (2.0 * a * (dq - dp));
            if (hull.size() > 1 && s <= bounds.back()) {
                hull.pop_back();
                bounds.pop_back();
                continue;
            }
            break;
        }
        if (hull.empty()) s = -kInf;
        hull.push_back(q);
        bounds.push_back(s);
    }
    if (hull.empty()) {
        for (Index i = 0; i < n; ++i) {
            out[i * stride] = kInf;
            witness[i * stride] = kNoWitness;
        }
        return;
    }
    // bounds[v] is where hull[v] starts to win; bounds[0] = -inf.
    std::size_t v = 0;
    for (Index i = 0; i < n; ++i) {
        const double di = static_cast<double>(i);
        while (v + 1 < hull.size() && bounds[v + 1] < di) ++v;
        const Index j = hull[v];
        const double d = di - static_cast<double>(j);
        out[i * stride] = in[j * stride] + a * (d * d);
        witness[i * stride] = j;
    }
}

// Applies one 1D transform along every line of `axis`, composing witnesses so
// they keep pointing at nodes of the original function.
template <typename LineFn>
void separable_pass(const Grid& grid, int axis, std::vector<double>& values,
                    std::vector<Index>& witness, LineFn&& line) {
    const Index n = grid.count(axis);
    const Index stride = grid.stride(axis);
    std::vector<double> out(values.size());
    std::vector<Index> line_witness(values.size());
    std::vector<Index> composed(values.size());
    for (Index base = 0; base < grid.size(); ++base) {
        if ((base / stride) % n != 0) continue;
        line(values.data() + base, stride, n, out.data() + base, line_witness.data() + base);
        for (Index i = 0; i < n; ++i) {
            const Index pos = base + i * stride;
            const Index j = line_witness[pos];
            composed[pos] = j == kNoWitness ? kNoWitness : witness[base + j * stride];
        }
    }
    values.swap(out);
    witness.swap(composed);
}

// Envelope values are f(w) + kernel(x - w) for the final witness w, which is
// the same expression the brute-force oracle evaluates.
EnvelopeResult finish(const GridFunction& f, const Kernel& kernel, std::vector<Index> witness) {
    const Grid& grid = f.grid();
    std::vector<double> values(grid.size(), kInf);
    for (Index x = 0; x < grid.size(); ++x) {
        const Index w = witness[x];
        if (w != kNoWitness) values[x] = f[w] + kernel(grid.displacement(x, w), grid.dim());
    }
    return make_result(f, std::move(values), std::move(witness));
}

EnvelopeResult separable_transform(const GridFunction& f, const Kernel& kernel) {
    const Grid& grid = f.grid();
    std::vector<double> values(f.values().begin(), f.values().end());
    std::vector<Index> witness(grid.size());
    for (Index i = 0; i < grid.size(); ++i) witness[i] = values[i] < kInf ? i : kNoWitness;

    std::vector<Index> scratch;
    std::vector<double> bounds;
    // Last axis first: the final pass then breaks ties on the slowest axis,
    // which yields the lowest flat index overall.
    for (int axis = grid.dim() - 1; axis >= 0; --axis) {
        const double h = grid.spacing(axis);
        if (kernel.kind == Kernel::Kind::Conical) {
            separable_pass(grid, axis, values, witness,
                           [&](const double* in, Index stride, Index n, double* out, Index* w) {
                               conical_line(in, stride, n, kernel.k, h, out, w, scratch);
                           });
        } else {
            const double a = 0.5 * kernel.k * h * h;
            separable_pass(grid, axis, values, witness,
                           [&](const double* in, Index stride, Index n, double* out, Index* w) {
                               parabola_line(in, stride, n, a, out, w, scratch, bounds);
                           });
        }
    }
    return finish(f, kernel, std::move(witness));
}

}  // namespace

EnvelopeResult inf_conv_bruteforce(const GridFunction& f, const Kernel& kernel) {
    const Grid& grid = f.grid();
    const Index n = grid.size();
    const int dim = grid.dim();

    for (Index y = 0; y < n; ++y) {
        if (f[y] == -kInf)
            return make_result(f, std::vector<double>(n, -kInf), std::vector<Index>(n, y));
    }

    struct Candidate {
        double value;
        Point index;  // multi-index as doubles
        Index flat;
    };
    std::vector<Candidate> candidates;
    for (Index y = 0; y < n; ++y) {
        if (f[y] == kInf) continue;
        const auto m = grid.unflatten(y);
        candidates.push_back({f[y],
                              {static_cast<double>(m[0]), static_cast<double>(m[1]),
                               static_cast<double>(m[2])},
                              y});
    }

    std::vector<double> values(n, kInf);
    std::vector<Index> argmin(n, kNoWitness);
    const Point h{grid.spacing(0), dim > 1 ? grid.spacing(1) : 0.0, dim > 2 ? grid.spacing(2) : 0.0};

    parallel_chunks(n, static_cast<double>(n) * static_cast<double>(candidates.size()),
                    [&](Index begin, Index end) {
                        for (Index x = begin; x < end; ++x) {
                            const auto m = grid.unflatten(x);
                            const Point mx{static_cast<double>(m[0]), static_cast<double>(m[1]),
                                           static_cast<double>(m[2])};
                            double best = kInf;
                            Index arg = kNoWitness;
                            for (const auto& c : candidates) {
                                Point z{0.0, 0.0, 0.0};
                                for (int a = 0; a < dim; ++a) z[a] = (mx[a] - c.index[a]) * h[a];
                                const double cost = c.value + kernel(z, dim);
                                if (cost < best) {
                                    best = cost;
                                    arg = c.flat;
                                }
                            }
                            values[x] = best;
                            argmin[x] = arg;
                        }
                    });
    return make_result(f, std::move(values), std::move(argmin));
}

EnvelopeResult pasch_hausdorff(const GridFunction& f, double k, NormKind norm) {
    require_fast_path_input(f, k);
    const auto kernel = Kernel::conical(k, norm);
    if (f.grid().dim() == 1 || norm == NormKind::L1) return separable_transform(f, kernel);
    return inf_conv_bruteforce(f, kernel);
}

EnvelopeResult moreau_yosida(const GridFunction& f, double k) {
    require_fast_path_input(f, k);
    return separable_transform(f, Kernel::quadratic(k));
}

EnvelopeResult envelope(const GridFunction& f, const Kernel& kernel) {
    if (kernel.kind == Kernel::Kind::Conical) return pasch_hausdorff(f, kernel.k, kernel.norm);
    return moreau_yosida(f, kernel.k);
}

std::vector<EnvelopeResult> envelope_sequence(const GridFunction& f, int n_max, NormKind norm) {
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
    std::vector<EnvelopeResult> seq;
    seq.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) seq.push_back(pasch_hausdorff(f, static_cast<double>(n), norm));
    return seq;
}

Point proximal_point(const EnvelopeResult& result, Index x) {
    if (result.witness_domain != EnvelopeResult::WitnessDomain::Grid)
        throw Error(ErrorCode::InvalidArgument, "witnesses do not refer to grid nodes");
    if (x >= result.argmin.size()) throw Error(ErrorCode::InvalidArgument, "index outside grid");
    const auto w = result.witness(x);
    if (!w || !std::isfinite(result.envelope[x]))
        throw Error(ErrorCode::NoWitness, "no finite witness at node " + std::to_string(x));
    return result.envelope.grid().point(*w);
}

std::vector<std::optional<Point>> proximal_map(const EnvelopeResult& result) {
    std::vector<std::optional<Point>> out(result.argmin.size());
    for (Index x = 0; x < out.size(); ++x) {
        const auto w = result.witness(x);
        if (w && std::isfinite(result.envelope[x]))
            out[x] = result.envelope.grid().point(*w);
    }
    return out;
}

}  // namespace infconv
