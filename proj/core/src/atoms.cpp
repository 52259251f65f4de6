#include "jns/atoms.hpp"

#include <cmath>

namespace jns {

namespace {

double conj_exponent(double p) { return std::isinf(p) ? 1.0 : p / (p - 1.0); }

bool boxes_disjoint(const CellBox& a, const CellBox& b, int n) {
    for (int i = 0; i < n; ++i)
        if (a.cell_end(i) <= b.cell_begin(i) || b.cell_end(i) <= a.cell_begin(i)) return true;
    return false;
}

}  // namespace

AtomParams AtomParams::make(double v, double w, int s, double alpha, double c0,
                            const DomainSpec& domain) {
    if (!(v > 1.0) || std::isinf(v)) throw error("v must lie in (1, inf)");
    if (!(w > 1.0)) throw error("w must lie in (1, inf]");
    if (s < 0) throw error("s must be a non-negative integer");
    if (!(alpha >= 0.0)) throw error("alpha must be non-negative");
    if (!(c0 > 0.0) || c0 > domain.side()) throw error("c0 must lie in (0, domain side]");
    AtomParams out;
    out.v = v;
    out.w = w;
    out.s = s;
    out.alpha = alpha;
    out.c0 = snap_dyadic(c0);
    out.v_conj = conj_exponent(v);
    out.w_conj = conj_exponent(w);
    if (std::abs(1.0 / v + 1.0 / out.v_conj - 1.0) > 1e-15)
        throw error("conjugate identity violated for v");
    if (!std::isinf(w) && std::abs(1.0 / w + 1.0 / out.w_conj - 1.0) > 1e-15)
        throw error("conjugate identity violated for w");
    return out;
}

NormParams AtomParams::dual_norm_params(const DomainSpec& domain) const {
    return NormParams::make(v_conj, w_conj, s, alpha, c0, Variant::localized, domain);
}

double LocalAtom::lw_norm(const DomainSpec& d, double w) const {
    if (std::isinf(w)) return sup_norm();
    Accumulator acc;
    const double cm = d.cell_measure();
    for (double v : values) acc.add(std::pow(std::abs(v), w) * cm);
    return std::pow(acc.total(), 1.0 / w);
}

double LocalAtom::sup_norm() const {
    double r = 0.0;
    for (double v : values) r = std::max(r, std::abs(v));
    return r;
}

AtomReport validate_atom(const DomainSpec& d, const LocalAtom& atom, const AtomParams& params) {
    AtomReport out;
    if (!atom.support.valid_in(d) || std::int64_t(atom.values.size()) != atom.support.cell_count(d)) {
        out.valid = false;
        out.detail = "support box invalid";
        return out;
    }
    const double measure = atom.support.measure(d);
    const double winv = std::isinf(params.w) ? 0.0 : 1.0 / params.w;
    const double size_bound = std::pow(measure, winv - 1.0 / params.v - params.alpha);
    const double lw = atom.lw_norm(d, params.w);
    out.size_ratio = lw / size_bound;
    if (out.size_ratio > 1.0 + 1e-12) {
        out.valid = false;
        out.detail = "size bound exceeded";
    }
    if (atom.support.side(d) < params.c0) {
        const double h2 = d.cell_side() / 2.0;
        double corner = 0.0;
        for (int i = 0; i < d.n; ++i) {
            const double low = double(atom.support.cell_begin(i)) * d.cell_side();
            corner = std::max(corner, std::max(std::abs(low), std::abs(low + atom.support.side(d))));
        }
        // natural sup scale of a (v,w)-atom on this cube; floors the relative
        // moment test for atoms that are numerically zero
        const double sup_scale = std::pow(measure, -1.0 / params.v - params.alpha);
        for (const MultiIndex& beta : multi_indices_upto(d.n, params.s)) {
            Accumulator acc;
            std::int64_t at = 0;
            for_each_cell(d, atom.support, [&](std::int64_t cell) {
                auto c = d.cell_coords(cell);
                double w = atom.values[std::size_t(at++)];
                for (int i = 0; i < d.n; ++i)
                    w *= monomial_box_integral(d.cell_center(c[i]), h2, beta.beta[i]);
                acc.add(w);
            });
            const double scale = measure * std::max(atom.sup_norm(), 1e-6 * sup_scale) *
                                 std::pow(std::max(1.0, corner), double(beta.order()));
            const double rel = std::abs(acc.total()) / scale;
            out.max_moment_residual = std::max(out.max_moment_residual, rel);
        }
        if (out.max_moment_residual > 1e-9) {
            out.valid = false;
            out.detail = out.detail.empty() ? "moment condition violated"
                                            : out.detail + "; moment condition violated";
        }
    }
    return out;
}

double Polymer::budget(double v) const {
    Accumulator acc;
    for (double l : lambdas) acc.add(std::pow(std::abs(l), v));
    return std::pow(acc.total(), 1.0 / v);
}

AtomReport validate_polymer(const DomainSpec& d, const Polymer& polymer,
                            const AtomParams& params) {
    AtomReport out;
    if (polymer.lambdas.size() != polymer.atoms.size()) {
        out.valid = false;
        out.detail = "coefficient/atom count mismatch";
        return out;
    }
    for (std::size_t i = 0; i < polymer.atoms.size(); ++i) {
        AtomReport r = validate_atom(d, polymer.atoms[i], params);
        out.size_ratio = std::max(out.size_ratio, r.size_ratio);
        out.max_moment_residual = std::max(out.max_moment_residual, r.max_moment_residual);
        if (!r.valid) {
            out.valid = false;
            out.detail = "atom " + std::to_string(i) + ": " + r.detail;
            return out;
        }
        for (std::size_t j = i + 1; j < polymer.atoms.size(); ++j)
            if (!boxes_disjoint(polymer.atoms[i].support, polymer.atoms[j].support, d.n)) {
                out.valid = false;
                out.detail = "atom supports overlap";
                return out;
            }
    }
    return out;
}

double pair_polymer(const Polymer& polymer, const GridFunction& f, bool strict) {
    const DomainSpec& d = f.domain();
    const double cm = d.cell_measure();
    Accumulator acc;
    for (std::size_t j = 0; j < polymer.atoms.size(); ++j) {
        const LocalAtom& atom = polymer.atoms[j];
        if (strict && !atom.support.is_dyadic(d))
            throw error("non-dyadic atom cube in strict mode");
        Accumulator inner;
        std::int64_t at = 0;
        for_each_cell(d, atom.support, [&](std::int64_t cell) {
            inner.add(atom.values[std::size_t(at++)] * f.value(cell) * cm);
        });
        acc.add(polymer.lambdas[j] * inner.total());
    }
    return acc.total();
}

double pair_decomposition(const AtomicDecomposition& dec, const GridFunction& f, bool strict) {
    Accumulator acc;
    for (const Polymer& p : dec.polymers) acc.add(pair_polymer(p, f, strict));
    return acc.total();
}

double hk_upper_bound(const AtomicDecomposition& d, double v) {
    Accumulator acc;
    for (const Polymer& p : d.polymers) acc.add(p.budget(v));
    return acc.total();
}

double hk_lower_bound(const AtomicDecomposition& d,
                      const std::vector<const GridFunction*>& test_functions,
                      const NormParams& jn_params) {
    double best = 0.0;
    bool any = false;
    for (const GridFunction* f : test_functions) {
        const double norm = jn_norm_dyadic(*f, jn_params).value;
        if (norm == 0.0) continue;
        any = true;
        best = std::max(best, std::abs(pair_decomposition(d, *f)) / norm);
    }
    if (!any) throw error("all test functions have zero dyadic jn norm");
    return best;
}

H1Bounds h1_upper_bound(const AtomicDecomposition& d, const DomainSpec& domain, double v) {
    H1Bounds out;
    Accumulator fine;
    for (const Polymer& p : d.polymers)
        for (std::size_t j = 0; j < p.atoms.size(); ++j)
            fine.add(std::pow(p.atoms[j].support.measure(domain), 1.0 - 1.0 / v) *
                     std::abs(p.lambdas[j]));
    out.fine = fine.total();
    out.coarse = std::pow(domain.measure(), 1.0 - 1.0 / v) * hk_upper_bound(d, v);
    // the Holder step guarantees fine <= coarse for disjoint supports
    if (out.fine > out.coarse * (1.0 + 1e-12))
        throw error("h1 bound ordering violated: fine exceeds coarse");
    return out;
}

RefineResult refine_atoms(const DomainSpec& d, const Polymer& g, const AtomParams& params,
                          double C0) {
    RefineResult out;
    if (params.w_is_inf()) {
        out.decomposition.polymers.push_back(g);
        out.level_budgets.push_back(g.budget(params.v));
        out.passthrough = true;
        return out;
    }
    if (!(C0 > std::ldexp(1.0, d.n))) throw error("ratio too small");
    const double cs = projection_constant_cached(params.s, d.n);
    const double scale0 = std::ldexp(1.0, d.n + 2) * cs * C0;  // 2^{n+2} C_(s) C0
    const AtomParams inf_params =
        AtomParams::make(params.v, std::numeric_limits<double>::infinity(), params.s,
                         params.alpha, params.c0, d);

    Polymer level0;
    std::vector<Polymer> deeper;

    for (std::size_t l = 0; l < g.atoms.size(); ++l) {
        const LocalAtom& atom = g.atoms[l];
        if (atom.sup_norm() == 0.0) {
            ++out.skipped_zero_atoms;  // zero atom: nothing to refine
            continue;
        }
        if (!atom.support.is_dyadic(d)) throw error("refine requires dyadic atom cubes");
        const DyadicCube q = atom.support.as_cube(d);
        const double measure = atom.support.measure(d);
        const double gamma = atom.lw_norm(d, params.w) * std::pow(measure, -1.0 / params.w);

        std::vector<double> full(std::size_t(d.cell_count()), 0.0);
        std::int64_t at = 0;
        for_each_cell(d, atom.support, [&](std::int64_t cell) {
            full[std::size_t(cell)] = atom.values[std::size_t(at++)];
        });
        const GridFunction fa(d, std::move(full));
        CZConfig cfg;
        cfg.s = params.s;
        cfg.Ctilde = C0;
        cfg.gamma = gamma;
        const CZDecomposition cz = cz_decompose(fa, q, cfg);

        // level 0: [A_{0,1} + P_Q(a)] / (2^{n+2} C_(s) C0)
        LocalAtom a0;
        a0.support = atom.support;
        a0.values = cz.levels[0].pieces[0].values;
        at = 0;
        for_each_cell(d, atom.support, [&](std::int64_t cell) {
            a0.values[std::size_t(at++)] += cz.root_polynomial.at_cell(d, cell);
        });
        for (double& x : a0.values) x /= scale0;
        const AtomReport r0 = validate_atom(d, a0, inf_params);
        if (!r0.valid) throw error("refined level-0 atom invalid: " + r0.detail);
        level0.lambdas.push_back(g.lambdas[l] * scale0);
        level0.atoms.push_back(std::move(a0));

        for (std::size_t k = 1; k < cz.levels.size(); ++k) {
            if (deeper.size() < k) deeper.resize(k);
            const double level_bound =
                std::ldexp(1.0, d.n + 1) * cs * std::pow(C0, double(k) + 1.0) * gamma;
            for (const CZPiece& piece : cz.levels[k].pieces) {
                if (piece.sup_norm <= 1e-12 * level_bound) continue;  // numerically zero
                const double piece_measure = piece.cube.measure(d);
                const double coef = level_bound *
                                    std::pow(piece_measure, 1.0 / params.v + params.alpha);
                LocalAtom ak;
                ak.support = CellBox::from_cube(d, piece.cube);
                ak.values = piece.values;
                for (double& x : ak.values) x /= coef;
                const AtomReport rk = validate_atom(d, ak, inf_params);
                if (!rk.valid) throw error("refined atom invalid: " + rk.detail);
                deeper[k - 1].lambdas.push_back(g.lambdas[l] * coef);
                deeper[k - 1].atoms.push_back(std::move(ak));
            }
        }
    }

    out.decomposition.polymers.push_back(std::move(level0));
    for (Polymer& p : deeper)
        if (!p.atoms.empty()) out.decomposition.polymers.push_back(std::move(p));
    for (const Polymer& p : out.decomposition.polymers)
        out.level_budgets.push_back(p.budget(params.v));
    return out;
}

DualResult dual_optimizer(const GridFunction& f, const Packing& packing,
                          const AtomParams& params) {
    if (params.w_is_inf()) throw error("dual optimizer needs w < inf");
    const DomainSpec& d = f.domain();
    const double wp = params.w_conj;  // the jn-side q
    const double cm = d.cell_measure();

    struct Candidate {
        CellBox box;
        std::vector<double> t;  // extremal minus its localized projection samples
        double a_value = 0.0;   // |Q|^{-alpha} (avg |r|^{w'})^{1/w'}
    };
    std::vector<Candidate> cands;

    for (const DyadicCube& cube : packing.cubes) {
        const CellBox box = CellBox::from_cube(d, cube);
        const bool truncate = box.side(d) >= params.c0;
        std::vector<double> r = cellwise_residual(f, box, params.s, truncate);
        const double measure = box.measure(d);
        Accumulator pow_acc;
        for (double x : r) pow_acc.add(std::pow(std::abs(x), wp) * cm);
        const double mean_pow = pow_acc.total() / measure;
        if (mean_pow == 0.0) continue;
        const double a_value = std::pow(measure, -params.alpha) * std::pow(mean_pow, 1.0 / wp);

        // w-Holder extremal of r, normalized to (avg |a|^w)^{1/w} = 1
        std::vector<double> a(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double s = r[i] >= 0.0 ? 1.0 : -1.0;
            a[i] = s * std::pow(std::abs(r[i]), wp - 1.0);
        }
        Accumulator a_acc;
        for (double x : a) a_acc.add(std::pow(std::abs(x), params.w) * cm);
        const double a_norm = std::pow(a_acc.total() / measure, 1.0 / params.w);
        for (double& x : a) x /= a_norm;

        Candidate c;
        c.box = box;
        c.a_value = a_value;
        if (!truncate) {
            const SpacePolynomial z = project_cellwise_span(d, box, a, params.s);
            c.t.reserve(a.size());
            std::size_t at = 0;
            double t_sup = 0.0, a_sup = 0.0;
            for_each_cell(d, box, [&](std::int64_t cell) {
                c.t.push_back(a[at] - z.at_cell(d, cell));
                t_sup = std::max(t_sup, std::abs(c.t.back()));
                a_sup = std::max(a_sup, std::abs(a[at]));
                ++at;
            });
            // roundoff-scale remainder: the extremal is itself a polynomial
            // sample, so this cube contributes nothing
            if (t_sup <= 1e-12 * a_sup) continue;
        } else {
            c.t = std::move(a);
        }
        cands.push_back(std::move(c));
    }

    if (cands.empty()) throw error("zero oscillations on all cubes: ratio undefined");

    Accumulator s_acc;
    for (const Candidate& c : cands)
        s_acc.add(c.box.measure(d) * std::pow(c.a_value, params.v_conj));
    const double S = s_acc.total();

    DualResult out;
    Polymer polymer;
    for (Candidate& c : cands) {
        const double lambda =
            std::pow(c.a_value, params.v_conj - 1.0) / std::pow(S, 1.0 / params.v);
        LocalAtom atom;
        atom.support = c.box;
        atom.values = std::move(c.t);
        const double measure = c.box.measure(d);
        const double winv = 1.0 / params.w;
        const double size_bound = std::pow(measure, winv - 1.0 / params.v - params.alpha);
        const double sigma = atom.lw_norm(d, params.w) / size_bound;
        if (sigma == 0.0) continue;
        for (double& x : atom.values) x /= sigma;
        const AtomReport rep = validate_atom(d, atom, params);
        if (!rep.valid) throw error("dual optimizer atom invalid: " + rep.detail);
        polymer.lambdas.push_back(std::pow(measure, -params.alpha) * lambda * sigma);
        polymer.atoms.push_back(std::move(atom));
    }
    out.budget = polymer.budget(params.v);
    out.g.polymers.push_back(std::move(polymer));
    out.pairing = pair_decomposition(out.g, f);
    if (out.budget == 0.0) throw error("zero oscillations on all cubes: ratio undefined");
    out.ratio = out.pairing / out.budget;
    return out;
}

AtomicDecomposition tile_decomposition(const GridFunction& f, const AtomParams& params,
                                       std::int64_t tile_side_cells) {
    const DomainSpec& d = f.domain();
    const std::int64_t N = d.cells_per_axis();
    if (tile_side_cells < 1 || N % tile_side_cells != 0 ||
        (tile_side_cells & (tile_side_cells - 1)) != 0)
        throw error("tile side must be a dyadic divisor of the grid");
    if (double(tile_side_cells) * d.cell_side() < params.c0)
        throw error("tile side must be at least c0");
    const double winv = params.w_is_inf() ? 0.0 : 1.0 / params.w;

    AtomicDecomposition out;
    Polymer polymer;
    std::array<std::int64_t, kMaxDim> lo{};
    while (true) {
        CellBox box;
        box.lo = lo;
        box.side_cells = tile_side_cells;
        LocalAtom atom;
        atom.support = box;
        atom.values.reserve(std::size_t(box.cell_count(d)));
        for_each_cell(d, box, [&](std::int64_t cell) { atom.values.push_back(f.value(cell)); });
        const double lw = atom.lw_norm(d, params.w);
        if (lw > 0.0) {
            const double size_bound =
                std::pow(box.measure(d), winv - 1.0 / params.v - params.alpha);
            const double k = lw / size_bound;
            for (double& x : atom.values) x /= k;
            polymer.lambdas.push_back(k);
            polymer.atoms.push_back(std::move(atom));
        }
        int i = d.n - 1;
        while (i >= 0) {
            lo[i] += tile_side_cells;
            if (lo[i] < N) break;
            lo[i--] = 0;
        }
        if (i < 0) break;
    }
    out.polymers.push_back(std::move(polymer));
    return out;
}

ExperimentResult experiment_hk_lebesgue(const GridFunction& f, const AtomParams& params,
                                        std::int64_t tile_side_cells) {
    if (!(params.w <= params.v) || params.alpha != 0.0)
        throw error("unsupported configuration: need w <= v and alpha = 0");
    const DomainSpec& d = f.domain();
    ExperimentResult out;
    out.name = "hk Lebesgue identification (w <= v)";
    const double lw = lebesgue_norm(f, params.w);
    const double scale = std::pow(d.measure(), 1.0 / params.v - 1.0 / params.w);

    const AtomicDecomposition single = tile_decomposition(f, params, d.cells_per_axis());
    const double b_single = hk_upper_bound(single, params.v);
    const AtomicDecomposition tiled = tile_decomposition(f, params, tile_side_cells);
    const double b_tiled = hk_upper_bound(tiled, params.v);

    out.values = {{"Lw", lw},
                  {"budget_single", b_single},
                  {"budget_tiled", b_tiled},
                  {"scale", scale}};
    out.checks.push_back({"single-atom budget = |Q0|^{1/v-1/w} Lw", b_single, scale * lw,
                          std::abs(b_single - scale * lw) <= 1e-12 * (scale * lw + 1e-300)});
    out.checks.push_back({"Lw <= |Q0|^{1/w-1/v} tiled budget", lw, b_tiled / scale,
                          lw <= (b_tiled / scale) * (1.0 + 1e-12)});
    if (params.v == params.w)
        out.checks.push_back({"tiled budget = Lv (v = w)", b_tiled, lw,
                              std::abs(b_tiled - lw) <= 1e-12 * (lw + 1e-300)});
    return out;
}

}  // namespace jns
