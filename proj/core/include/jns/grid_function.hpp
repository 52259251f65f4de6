#pragma once

#include <span>
#include <vector>

#include "jns/dyadic.hpp"

namespace jns {

/// Exact integral of x^t over [center - halfwidth, center + halfwidth].
/// Uses the odd-binomial central expansion, whose terms all share one sign,
/// so no cancellation occurs for cells far from the origin.
[[nodiscard]] double monomial_box_integral(double center, double halfwidth, int degree);

/// Compensated (Neumaier) accumulator.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double total() const { return sum + comp; }
};

/// Piecewise-constant function on a uniform dyadic grid (cell-average
/// semantics). Immutable after construction apart from the single-writer
/// moment-table initialization; all queries are pure reads.
///
/// Moment tables: for each monomial multi-index beta with |beta| <= order,
/// the n-dimensional prefix sums of the per-cell contributions
/// f_cell * prod_i \int_cell x_i^{beta_i} dx_i, so that \int_Q f x^beta over
/// any cell-aligned box is an inclusion-exclusion of 2^n corners.
class GridFunction {
public:
    GridFunction(DomainSpec domain, std::vector<double> values);

    static GridFunction constant(const DomainSpec& domain, double a);

    [[nodiscard]] const DomainSpec& domain() const { return domain_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double value(std::int64_t cell) const { return values_[std::size_t(cell)]; }
    [[nodiscard]] double max_abs() const;

    /// Build prefix-sum moment tables up to total degree `order`.
    /// Raising the order rebuilds; lowering is a no-op.
    void prepare_moments(int order);
    [[nodiscard]] int moment_order() const { return moment_order_; }

    /// \int over the cell-aligned box [cell_lo, cell_hi) of f(x) x^beta dx,
    /// from the prefix tables. Throws if |beta| exceeds the prepared order.
    [[nodiscard]] double box_moment(const std::array<std::int64_t, kMaxDim>& cell_lo,
                                    const std::array<std::int64_t, kMaxDim>& cell_hi,
                                    const MultiIndex& beta) const;

    /// Exact integral of x^t over grid cell `ci` along one axis.
    [[nodiscard]] double cell_monomial(int degree, std::int64_t ci) const;

private:
    DomainSpec domain_;
    std::vector<double> values_;
    int moment_order_ = -1;
    std::vector<MultiIndex> table_betas_;
    std::vector<std::vector<double>> tables_;  // each sized (N+1)^n
    std::vector<std::vector<double>> cell_mono_;  // [degree][cell] per-axis integrals

    [[nodiscard]] std::int64_t prefix_index(const std::array<std::int64_t, kMaxDim>& c) const;
};

/// \int_Q f(x) x^beta dx under the piecewise-constant model (exact up to
/// rounding; per-cell monomial integrals are analytic).
[[nodiscard]] double integrate_monomial(const GridFunction& f, const DyadicCube& cube,
                                        const MultiIndex& beta);

/// f_Q, the average of f over Q; equals integrate_monomial(f, Q, 0) / |Q|.
[[nodiscard]] double cell_average(const GridFunction& f, const DyadicCube& cube);

/// Pointwise combinations (fresh moment tables; callers re-prepare).
[[nodiscard]] GridFunction add(const GridFunction& f, const GridFunction& g);
[[nodiscard]] GridFunction scale(const GridFunction& f, double factor);

}  // namespace jns
