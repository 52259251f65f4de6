#include "jns/cz.hpp"

#include <cmath>
#include <sstream>

namespace jns {

namespace {

/// Bottom-up sums of |f| * cell_measure for every dyadic cube, indexed
/// [level][linear]. Fixed summation order, so every caller sees identical
/// averages and level sets match the maximal function exactly.
std::vector<std::vector<double>> abs_integral_table(const GridFunction& f) {
    const DomainSpec& d = f.domain();
    std::vector<std::vector<double>> sums(std::size_t(d.K) + 1);
    sums[std::size_t(d.K)].resize(std::size_t(d.cell_count()));
    const double cm = d.cell_measure();
    for (std::int64_t cell = 0; cell < d.cell_count(); ++cell)
        sums[std::size_t(d.K)][std::size_t(cell)] = std::abs(f.value(cell)) * cm;
    for (int k = d.K - 1; k >= 0; --k) {
        const std::int64_t count = std::int64_t{1} << (d.n * k);
        sums[std::size_t(k)].assign(std::size_t(count), 0.0);
        const std::int64_t child_count = std::int64_t{1} << (d.n * (k + 1));
        // accumulate children in increasing linear order
        for (std::int64_t child = 0; child < child_count; ++child) {
            // parent linear index: halve each axis coordinate
            std::int64_t parent = 0;
            std::int64_t rest = child;
            std::array<std::int64_t, kMaxDim> cc{};
            const std::int64_t mask = (std::int64_t{1} << (k + 1)) - 1;
            for (int i = d.n - 1; i >= 0; --i) {
                cc[i] = rest & mask;
                rest >>= (k + 1);
            }
            for (int i = 0; i < d.n; ++i) parent = (parent << k) | (cc[i] >> 1);
            sums[std::size_t(k)][std::size_t(parent)] +=
                sums[std::size_t(k) + 1][std::size_t(child)];
        }
    }
    return sums;
}

std::int64_t cube_linear(const DomainSpec& d, const DyadicCube& c) {
    std::int64_t idx = 0;
    for (int i = 0; i < d.n; ++i) idx = (idx << c.level) | c.index[i];
    return idx;
}

double cube_abs_average(const DomainSpec& d, const std::vector<std::vector<double>>& sums,
                        const DyadicCube& c) {
    return sums[std::size_t(c.level)][std::size_t(cube_linear(d, c))] / c.measure(d);
}

CZConfig resolved_config(const GridFunction& f, const DyadicCube& q, const CZConfig& config) {
    CZConfig out = config;
    if (out.Ctilde == 0.0) out.Ctilde = std::ldexp(1.0, f.domain().n + 1);
    if (out.gamma == 0.0) {
        const auto sums = abs_integral_table(f);
        out.gamma = cube_abs_average(f.domain(), sums, q);
    }
    return out;
}

void collect_stopping(const GridFunction& f, const std::vector<std::vector<double>>& sums,
                      const DyadicCube& cube, double threshold, std::vector<DyadicCube>& out) {
    const DomainSpec& d = f.domain();
    if (cube_abs_average(d, sums, cube) > threshold) {
        out.push_back(cube);
        return;
    }
    if (cube.level == d.K) return;
    for (const DyadicCube& child : cube_children(cube, d))
        collect_stopping(f, sums, child, threshold, out);
}

}  // namespace

GridFunction dyadic_maximal(const GridFunction& f, const DyadicCube& q) {
    const DomainSpec& d = f.domain();
    if (!q.valid_in(d)) throw error("cube outside domain");
    const auto sums = abs_integral_table(f);
    std::vector<double> out(std::size_t(d.cell_count()), 0.0);

    // top-down, carrying the running ancestor max
    std::vector<std::pair<DyadicCube, double>> stack;
    stack.push_back({q, 0.0});
    while (!stack.empty()) {
        auto [cube, above] = stack.back();
        stack.pop_back();
        const double here = std::max(above, cube_abs_average(d, sums, cube));
        if (cube.level == d.K) {
            std::array<std::int64_t, kMaxDim> c{};
            for (int i = 0; i < d.n; ++i) c[i] = cube.cell_begin(d, i);
            out[std::size_t(d.cell_index(c))] = here;
            continue;
        }
        for (const DyadicCube& child : cube_children(cube, d)) stack.push_back({child, here});
    }
    return GridFunction(d, std::move(out));
}

std::vector<DyadicCube> stopping_cubes(const GridFunction& f, const DyadicCube& q,
                                       const CZConfig& config, int k) {
    if (k < 1) throw error("stopping level k must be >= 1");
    const CZConfig cfg = resolved_config(f, q, config);
    const auto sums = abs_integral_table(f);
    const double threshold = std::pow(cfg.Ctilde, double(k)) * cfg.gamma;
    std::vector<DyadicCube> out;
    collect_stopping(f, sums, q, threshold, out);
    return out;
}

std::size_t CZDecomposition::piece_count() const {
    std::size_t c = 0;
    for (const CZLevel& l : levels) c += l.pieces.size();
    return c;
}

std::vector<double> CZDecomposition::sup_bound_margins(int n) const {
    std::vector<double> out;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double bound =
            std::ldexp(1.0, n + 1) * c_s * std::pow(config.Ctilde, double(k) + 1.0) * config.gamma;
        double margin = 0.0;
        for (const CZPiece& p : levels[k].pieces)
            if (bound > 0.0) margin = std::max(margin, p.sup_norm / bound);
        out.push_back(margin);
    }
    return out;
}

CZDecomposition cz_decompose(const GridFunction& f, const DyadicCube& q, const CZConfig& config) {
    const DomainSpec& d = f.domain();
    if (!q.valid_in(d)) throw error("cube outside domain");
    const CZConfig cfg = resolved_config(f, q, config);
    const auto sums = abs_integral_table(f);
    const double mean = cube_abs_average(d, sums, q);
    if (cfg.gamma < mean * (1.0 - 1e-12)) throw error("threshold below mean");
    if (!(cfg.Ctilde > std::ldexp(1.0, d.n))) throw error("ratio too small");

    CZDecomposition out;
    out.root = q;
    out.config = cfg;
    out.c_s = projection_constant_cached(cfg.s, d.n);
    out.root_polynomial = project_cellwise(f, q, cfg.s);

    // stopping cubes per level until the level set empties
    std::vector<std::vector<DyadicCube>> stops;
    stops.push_back({q});
    for (int k = 1;; ++k) {
        const double threshold = std::pow(cfg.Ctilde, double(k)) * cfg.gamma;
        std::vector<DyadicCube> level;
        collect_stopping(f, sums, q, threshold, level);
        if (level.empty()) break;
        stops.push_back(std::move(level));
    }

    // sampled projection grids per stopping cube
    std::vector<std::vector<std::vector<double>>> proj(stops.size());
    for (std::size_t k = 0; k < stops.size(); ++k)
        for (const DyadicCube& cube : stops[std::size_t(k)]) {
            const SpacePolynomial p =
                (k == 0) ? out.root_polynomial : project_cellwise(f, cube, cfg.s);
            std::vector<double> grid;
            grid.reserve(std::size_t(cube.cell_count(d)));
            for_each_cell(d, cube, [&](std::int64_t cell) { grid.push_back(p.at_cell(d, cell)); });
            proj[k].push_back(std::move(grid));
        }

    // local cell offset of a global cell within a cube
    auto local_offset = [&](const DyadicCube& cube, std::int64_t cell) {
        auto c = d.cell_coords(cell);
        std::int64_t off = 0;
        const std::int64_t per = cube.cells_per_axis(d);
        for (int i = 0; i < d.n; ++i) off = off * per + (c[i] - cube.cell_begin(d, i));
        return off;
    };

    out.levels.resize(stops.size());
    for (std::size_t k = 0; k < stops.size(); ++k) {
        for (std::size_t j = 0; j < stops[k].size(); ++j) {
            const DyadicCube& cube = stops[k][j];
            CZPiece piece;
            piece.cube = cube;
            piece.values.assign(std::size_t(cube.cell_count(d)), 0.0);
            // (f - P_{k,j}) off the next level set
            std::int64_t at = 0;
            for_each_cell(d, cube, [&](std::int64_t cell) {
                piece.values[std::size_t(at)] = f.value(cell) - proj[k][j][std::size_t(at)];
                ++at;
            });
            // overwrite with P_{k+1,i} - P_{k,j} on the nested stopping cubes
            if (k + 1 < stops.size()) {
                for (std::size_t i = 0; i < stops[k + 1].size(); ++i) {
                    const DyadicCube& inner = stops[k + 1][i];
                    if (!cube.contains(d, inner)) continue;
                    std::int64_t at_inner = 0;
                    for_each_cell(d, inner, [&](std::int64_t cell) {
                        piece.values[std::size_t(local_offset(cube, cell))] =
                            proj[k + 1][i][std::size_t(at_inner)] -
                            proj[k][j][std::size_t(local_offset(cube, cell))];
                        ++at_inner;
                    });
                }
            }
            for (double v : piece.values) piece.sup_norm = std::max(piece.sup_norm, std::abs(v));
            out.levels[k].pieces.push_back(std::move(piece));
        }
    }

    // --- verify the lemma's conclusions; violations are hard errors ---

    // level sets equal stopping unions, as exact cell sets
    const GridFunction maximal = dyadic_maximal(f, q);
    for (std::size_t k = 1; k < stops.size(); ++k) {
        const double threshold = std::pow(cfg.Ctilde, double(k)) * cfg.gamma;
        std::vector<char> in_stop(std::size_t(d.cell_count()), 0);
        for (const DyadicCube& cube : stops[k])
            for_each_cell(d, cube, [&](std::int64_t cell) { in_stop[std::size_t(cell)] = 1; });
        bool ok = true;
        for_each_cell(d, q, [&](std::int64_t cell) {
            const bool in_set = maximal.value(cell) > threshold;
            if (in_set != bool(in_stop[std::size_t(cell)])) ok = false;
        });
        if (!ok) throw error("cz invariant violated: stopping union != maximal level set");
    }

    // vanishing moments and sup bounds
    const double h2 = d.cell_side() / 2.0;
    const auto betas = multi_indices_upto(d.n, cfg.s);
    for (std::size_t k = 0; k < out.levels.size(); ++k) {
        const double bound =
            std::ldexp(1.0, d.n + 1) * out.c_s * std::pow(cfg.Ctilde, double(k) + 1.0) * cfg.gamma;
        for (CZPiece& piece : out.levels[k].pieces) {
            if (piece.sup_norm > bound * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "cz invariant violated: sup " << piece.sup_norm << " > bound " << bound
                   << " at level " << k;
                throw error(os.str());
            }
            double corner = 0.0;
            for (int i = 0; i < d.n; ++i)
                corner = std::max(corner, std::max(std::abs(piece.cube.low(d, i)),
                                                   std::abs(piece.cube.low(d, i) +
                                                            piece.cube.side(d))));
            for (const MultiIndex& beta : betas) {
                Accumulator acc;
                std::int64_t at = 0;
                for_each_cell(d, piece.cube, [&](std::int64_t cell) {
                    auto c = d.cell_coords(cell);
                    double w = piece.values[std::size_t(at)];
                    for (int i = 0; i < d.n; ++i)
                        w *= monomial_box_integral(d.cell_center(c[i]), h2, beta.beta[i]);
                    acc.add(w);
                    ++at;
                });
                // ambient floor: a piece whose sup sits at roundoff below the
                // level bound is numerically zero, so measure its moments
                // against the level scale rather than its own noise
                const double scale = piece.cube.measure(d) *
                                     std::max(piece.sup_norm, 1e-6 * bound) *
                                     std::pow(std::max(1.0, corner), double(beta.order()));
                const double rel = std::abs(acc.total()) / scale;
                piece.max_moment_residual = std::max(piece.max_moment_residual, rel);
                if (rel > 1e-9) {
                    std::ostringstream os;
                    os << "cz invariant violated: moment residual " << rel << " at level " << k
                       << ", cube " << to_string(piece.cube, d.n) << " (cells "
                       << piece.cube.cell_count(d) << "), |beta| " << beta.order() << ", sup "
                       << piece.sup_norm;
                    throw error(os.str());
                }
            }
        }
    }

    // reconstruction: f - P_Q(f) = sum of pieces, cellwise
    {
        std::vector<double> acc(std::size_t(d.cell_count()), 0.0);
        for (const CZLevel& level : out.levels)
            for (const CZPiece& piece : level.pieces) {
                std::int64_t at = 0;
                for_each_cell(d, piece.cube, [&](std::int64_t cell) {
                    acc[std::size_t(cell)] += piece.values[std::size_t(at)];
                    ++at;
                });
            }
        const double tol = 1e-9 * std::max(f.max_abs(), 1e-30);
        bool ok = true;
        std::int64_t at = 0;
        std::vector<double> rootgrid;
        rootgrid.reserve(std::size_t(q.cell_count(d)));
        for_each_cell(d, q,
                      [&](std::int64_t cell) { rootgrid.push_back(out.root_polynomial.at_cell(d, cell)); });
        for_each_cell(d, q, [&](std::int64_t cell) {
            const double lhs = f.value(cell) - rootgrid[std::size_t(at)];
            if (std::abs(lhs - acc[std::size_t(cell)]) > tol) ok = false;
            ++at;
        });
        if (!ok) throw error("cz invariant violated: reconstruction mismatch");
    }

    return out;
}

TailBound tail_bound_check(const GridFunction& f, const DyadicCube& q0, double Ctilde, double w,
                           double gamma) {
    if (!(w >= 1.0)) throw error("w must lie in [1, inf)");
    if (!(Ctilde > 1.0)) throw error("Ctilde must exceed 1");
    if (!(gamma > 0.0)) throw error("gamma must be positive");
    const DomainSpec& d = f.domain();
    if (!q0.valid_in(d)) throw error("cube outside domain");

    double fmax = 0.0;
    for_each_cell(d, q0,
                  [&](std::int64_t cell) { fmax = std::max(fmax, std::abs(f.value(cell))); });

    TailBound out;
    Accumulator lhs;
    const double cm = d.cell_measure();
    for (int k = 1;; ++k) {
        const double mu = std::pow(Ctilde, double(k)) * gamma;
        if (mu >= fmax) break;  // level set empty from here on
        double meas = 0.0;
        for_each_cell(d, q0, [&](std::int64_t cell) {
            if (std::abs(f.value(cell)) > mu) meas += cm;
        });
        if (meas == 0.0) break;
        lhs.add(std::pow(mu, w) * meas);
    }
    out.lhs = lhs.total();

    Accumulator norm;
    for_each_cell(d, q0,
                  [&](std::int64_t cell) { norm.add(std::pow(std::abs(f.value(cell)), w) * cm); });
    out.rhs = norm.total() / (1.0 - std::pow(Ctilde, -w));
    out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
    return out;
}

}  // namespace jns
