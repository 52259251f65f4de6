#pragma once

#include <vector>

#include "jns/grid_function.hpp"

namespace jns {

/// Element of P_s(Q) in the centered, scaled monomial basis
/// { ((x - center(Q)) / side(Q))^gamma : |gamma| <= s }.
/// Evaluation and box integrals are exact polynomial arithmetic.
class SpacePolynomial {
public:
    SpacePolynomial() = default;
    SpacePolynomial(const DomainSpec& d, const CellBox& anchor, int degree,
                    std::vector<double> coeffs);
    SpacePolynomial(const DomainSpec& d, const DyadicCube& anchor, int degree,
                    std::vector<double> coeffs);

    static SpacePolynomial zero(const DomainSpec& d, const CellBox& anchor, int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] int dim() const { return int(coeffs_.size()); }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
    [[nodiscard]] const std::vector<MultiIndex>& basis() const { return gammas_; }

    [[nodiscard]] double evaluate(const std::array<double, kMaxDim>& x) const;
    /// Value at the center of a grid cell.
    [[nodiscard]] double at_cell(const DomainSpec& d, std::int64_t cell) const;

    /// Exact \int over the cell-aligned box [lo, hi) of P(x) x^beta dx.
    [[nodiscard]] double box_moment(const DomainSpec& d,
                                    const std::array<std::int64_t, kMaxDim>& cell_lo,
                                    const std::array<std::int64_t, kMaxDim>& cell_hi,
                                    const MultiIndex& beta) const;
    [[nodiscard]] double cube_moment(const DomainSpec& d, const DyadicCube& cube,
                                     const MultiIndex& beta) const;

    SpacePolynomial& operator+=(const SpacePolynomial& other);
    SpacePolynomial& operator*=(double factor);

private:
    int n_ = 1;
    int degree_ = 0;
    std::array<double, kMaxDim> center_{};
    double side_ = 1.0;
    std::vector<MultiIndex> gammas_;
    std::vector<double> coeffs_;
};

/// The unique P in P_s(Q) with \int_Q (f - P) x^beta dx = 0 for all
/// |beta| <= s, where \int_Q P x^beta is exact polynomial arithmetic
/// (analytic Gram, data side from the grid). Mean-square projection onto
/// P_s(Q) in the normalized measure.
[[nodiscard]] SpacePolynomial project(const GridFunction& f, const CellBox& box, int degree);
[[nodiscard]] SpacePolynomial project(const GridFunction& f, const DyadicCube& cube, int degree);

/// Model-exact variant used by the norm and decomposition paths: returns the
/// P whose cell-center samples make the piecewise-constant residual
/// f - P(centers) satisfy \int_Q (f - P(centers)) x^beta dx = 0 exactly.
/// Coincides with project() at degree 0 and as the grid refines.
[[nodiscard]] SpacePolynomial project_cellwise(const GridFunction& f, const CellBox& box,
                                               int degree);
[[nodiscard]] SpacePolynomial project_cellwise(const GridFunction& f, const DyadicCube& cube,
                                               int degree);

/// Same projection for values given locally over the box (row-major cell
/// order within the box).
[[nodiscard]] SpacePolynomial project_cellwise_span(const DomainSpec& d, const CellBox& box,
                                                    std::span<const double> local_values,
                                                    int degree);

/// Residual grid values f_i - P(center_i) over the cells of the box,
/// row-major within the box, with P = project_cellwise(f, box, degree)
/// (or P = 0 when `truncate_to_zero`).
[[nodiscard]] std::vector<double> cellwise_residual(const GridFunction& f, const CellBox& box,
                                                    int degree, bool truncate_to_zero);
[[nodiscard]] std::vector<double> cellwise_residual(const GridFunction& f, const DyadicCube& cube,
                                                    int degree, bool truncate_to_zero);

/// Sharp constant C_(s) of the pointwise projection bound
/// sup_Q |P^(s)_Q f| <= C_(s) avg_Q |f| : the supremum of the reproducing
/// kernel of P_s in the mean-square sense with normalized measure.
/// Scale invariant; computed on the reference cube by sampling
/// `sampling_resolution` points per axis (>= 64). By Cauchy-Schwarz the
/// kernel sup over Q x Q equals the sup of the diagonal K(x, x).
[[nodiscard]] double projection_constant(int s, int n, int sampling_resolution);

/// Cached at resolution 129.
[[nodiscard]] double projection_constant_cached(int s, int n);

/// sup|P| / (avg |P|^q)^{1/q} over the polynomial's anchor cube. The sup is
/// sampled on the union of the midpoint and endpoint grids and the mean by
/// the midpoint rule, so the ratio is always >= 1. resolution 0 picks a
/// per-dimension default.
[[nodiscard]] double poly_sup_mean_ratio(const SpacePolynomial& p, double q, int resolution = 0);

/// Empirical lower estimate of the constant C_(s,n) in
/// (avg_Q |P|^q)^{1/q} <= sup_Q |P| <= C_(s,n) (avg_Q |P|^q)^{1/q},
/// maximized over `trials` random coefficient draws (>= 100).
[[nodiscard]] double poly_norm_ratio_constant(int s, int n, double q, int trials,
                                              std::uint64_t seed = 20260808);

}  // namespace jns
