#include "jns/grid_function.hpp"

#include <cmath>

namespace jns {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

}  // namespace

double monomial_box_integral(double center, double halfwidth, int degree) {
    // (1/(t+1)) [ (c+h)^{t+1} - (c-h)^{t+1} ] expanded so only odd powers of h
    // survive; all surviving terms share the sign of c^{parity}.
    const int t1 = degree + 1;
    double sum = 0.0;
    double hpow = halfwidth;  // h^j for odd j
    for (int j = 1; j <= t1; j += 2) {
        sum += binomial(t1, j) * std::pow(center, double(t1 - j)) * hpow;
        hpow *= halfwidth * halfwidth;
    }
    return 2.0 * sum / double(t1);
}

GridFunction::GridFunction(DomainSpec domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
    if (std::int64_t(values_.size()) != domain_.cell_count())
        throw error("grid value count does not match domain");
    for (double v : values_)
        if (!std::isfinite(v)) throw error("grid values must be finite");
}

GridFunction GridFunction::constant(const DomainSpec& domain, double a) {
    return GridFunction(domain, std::vector<double>(std::size_t(domain.cell_count()), a));
}

double GridFunction::max_abs() const {
    double r = 0.0;
    for (double v : values_) r = std::max(r, std::abs(v));
    return r;
}

std::int64_t GridFunction::prefix_index(const std::array<std::int64_t, kMaxDim>& c) const {
    const std::int64_t stride = domain_.cells_per_axis() + 1;
    std::int64_t idx = 0;
    for (int i = 0; i < domain_.n; ++i) idx = idx * stride + c[i];
    return idx;
}

void GridFunction::prepare_moments(int order) {
    if (order < 0) throw error("moment order must be non-negative");
    if (order <= moment_order_) return;

    const int n = domain_.n;
    const std::int64_t N = domain_.cells_per_axis();
    const double h2 = domain_.cell_side() / 2.0;

    cell_mono_.assign(std::size_t(order) + 1, std::vector<double>(std::size_t(N)));
    for (int t = 0; t <= order; ++t)
        for (std::int64_t ci = 0; ci < N; ++ci)
            cell_mono_[std::size_t(t)][std::size_t(ci)] =
                monomial_box_integral(domain_.cell_center(ci), h2, t);

    table_betas_ = multi_indices_upto(n, order);
    tables_.assign(table_betas_.size(), {});

    std::int64_t prefix_size = 1;
    for (int i = 0; i < n; ++i) prefix_size *= (N + 1);

    for (std::size_t b = 0; b < table_betas_.size(); ++b) {
        const MultiIndex& beta = table_betas_[b];
        std::vector<double>& tab = tables_[b];
        tab.assign(std::size_t(prefix_size), 0.0);

        // Scatter per-cell contributions at offset-by-one indices.
        for (std::int64_t cell = 0; cell < domain_.cell_count(); ++cell) {
            auto c = domain_.cell_coords(cell);
            double w = values_[std::size_t(cell)];
            for (int i = 0; i < n; ++i)
                w *= cell_mono_[std::size_t(beta.beta[i])][std::size_t(c[i])];
            std::array<std::int64_t, kMaxDim> p{};
            for (int i = 0; i < n; ++i) p[i] = c[i] + 1;
            tab[std::size_t(prefix_index(p))] = w;
        }

        // Separable prefix pass per axis, compensated along each line.
        std::int64_t stride = 1;
        for (int axis = n - 1; axis >= 0; --axis) {
            const std::int64_t axis_len = N + 1;
            const std::int64_t lines = prefix_size / axis_len;
            for (std::int64_t line = 0; line < lines; ++line) {
                // decompose line id into the non-axis coordinates
                std::int64_t base = 0;
                std::int64_t rem = line;
                std::int64_t outer_stride = stride * axis_len;
                base = (rem / stride) * outer_stride + (rem % stride);
                Accumulator acc;
                for (std::int64_t j = 0; j < axis_len; ++j) {
                    std::int64_t at = base + j * stride;
                    acc.add(tab[std::size_t(at)]);
                    tab[std::size_t(at)] = acc.total();
                }
            }
            stride *= axis_len;
        }
    }
    moment_order_ = order;
}

double GridFunction::box_moment(const std::array<std::int64_t, kMaxDim>& cell_lo,
                                const std::array<std::int64_t, kMaxDim>& cell_hi,
                                const MultiIndex& beta) const {
    if (beta.order() > moment_order_) throw error("moment order not prepared");
    std::size_t b = 0;
    for (; b < table_betas_.size(); ++b) {
        bool eq = true;
        for (int i = 0; i < domain_.n; ++i)
            if (table_betas_[b].beta[i] != beta.beta[i]) { eq = false; break; }
        if (eq) break;
    }
    if (b == table_betas_.size()) throw error("moment order not prepared");

    const std::vector<double>& tab = tables_[b];
    const int n = domain_.n;
    double total = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::array<std::int64_t, kMaxDim> p{};
        int ones = 0;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                p[i] = cell_hi[i];
                ++ones;
            } else {
                p[i] = cell_lo[i];
            }
        }
        const double sign = ((n - ones) % 2 == 0) ? 1.0 : -1.0;
        total += sign * tab[std::size_t(prefix_index(p))];
    }
    return total;
}

double GridFunction::cell_monomial(int degree, std::int64_t ci) const {
    if (degree > moment_order_) throw error("moment order not prepared");
    return cell_mono_[std::size_t(degree)][std::size_t(ci)];
}

double integrate_monomial(const GridFunction& f, const DyadicCube& cube, const MultiIndex& beta) {
    const DomainSpec& d = f.domain();
    if (!cube.valid_in(d)) throw error("cube outside domain");
    std::array<std::int64_t, kMaxDim> lo{}, hi{};
    for (int i = 0; i < d.n; ++i) {
        lo[i] = cube.cell_begin(d, i);
        hi[i] = cube.cell_end(d, i);
    }
    return f.box_moment(lo, hi, beta);
}

double cell_average(const GridFunction& f, const DyadicCube& cube) {
    return integrate_monomial(f, cube, MultiIndex::zero(f.domain().n)) / cube.measure(f.domain());
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
    if (!(f.domain() == g.domain())) throw error("domain mismatch");
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.values()[i];
    return GridFunction(f.domain(), std::move(v));
}

GridFunction scale(const GridFunction& f, double factor) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x *= factor;
    return GridFunction(f.domain(), std::move(v));
}

}  // namespace jns
