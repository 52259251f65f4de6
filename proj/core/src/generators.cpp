#include "jns/generators.hpp"

#include <cmath>

#include "jns/rng.hpp"

namespace jns {

GridFunction gen_constant(const DomainSpec& d, double value) {
    return GridFunction::constant(d, value);
}

GridFunction gen_spike(const DomainSpec& d, double value, std::int64_t width_cells) {
    if (width_cells < 1 || width_cells > d.cells_per_axis())
        throw error("spike width out of range");
    std::vector<double> v(std::size_t(d.cell_count()), 0.0);
    CellBox box;
    box.side_cells = width_cells;
    for_each_cell(d, box, [&](std::int64_t cell) { v[std::size_t(cell)] = value; });
    return GridFunction(d, std::move(v));
}

GridFunction gen_step(const DomainSpec& d, double hi, double lo) {
    std::vector<double> v(std::size_t(d.cell_count()));
    const std::int64_t half = d.cells_per_axis() / 2;
    for (std::int64_t cell = 0; cell < d.cell_count(); ++cell) {
        const auto c = d.cell_coords(cell);
        v[std::size_t(cell)] = (d.K == 0 || c[0] < half) ? hi : lo;
    }
    return GridFunction(d, std::move(v));
}

GridFunction gen_random(const DomainSpec& d, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    std::vector<double> v(std::size_t(d.cell_count()));
    for (double& x : v) x = rng.uniform(lo, hi);
    return GridFunction(d, std::move(v));
}

GridFunction gen_haar_sum(const DomainSpec& d, std::uint64_t seed, int terms) {
    Rng rng(seed);
    std::vector<double> v(std::size_t(d.cell_count()), 0.0);
    for (int t = 0; t < terms; ++t) {
        const int level = int(rng.int_in(0, std::max(0, d.K - 1)));
        DyadicCube cube;
        cube.level = level;
        for (int i = 0; i < d.n; ++i) cube.index[i] = rng.int_in(0, (std::int64_t{1} << level) - 1);
        const int axis = int(rng.int_in(0, d.n - 1));
        const double c = rng.uniform(-1.0, 1.0);
        const std::int64_t split = cube.cell_begin(d, axis) + cube.cells_per_axis(d) / 2;
        for_each_cell(d, cube, [&](std::int64_t cell) {
            const auto cc = d.cell_coords(cell);
            v[std::size_t(cell)] += (cc[axis] < split) ? c : -c;
        });
    }
    return GridFunction(d, std::move(v));
}

GridFunction gen_log_sample(const DomainSpec& d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(std::size_t(d.cell_count()));
    for (double& x : v) {
        double u = rng.uniform01();
        while (u <= 0.0) u = rng.uniform01();
        x = -std::log(u);
    }
    return GridFunction(d, std::move(v));
}

GenKind gen_kind_from_string(const std::string& name) {
    if (name == "constant") return GenKind::constant;
    if (name == "spike") return GenKind::spike;
    if (name == "step") return GenKind::step;
    if (name == "random") return GenKind::random;
    if (name == "haar-sum") return GenKind::haar_sum;
    if (name == "log-sample") return GenKind::log_sample;
    throw error("unknown generator kind: " + name);
}

GridFunction generate(GenKind kind, const DomainSpec& d, std::uint64_t seed, double value,
                      std::int64_t width, int terms) {
    switch (kind) {
    case GenKind::constant:
        return gen_constant(d, value);
    case GenKind::spike:
        return gen_spike(d, value, width);
    case GenKind::step:
        return gen_step(d, value, 0.0);
    case GenKind::random:
        return gen_random(d, seed);
    case GenKind::haar_sum:
        return gen_haar_sum(d, seed, terms);
    case GenKind::log_sample:
        return gen_log_sample(d, seed);
    }
    throw error("unknown generator kind");
}

}  // namespace jns
