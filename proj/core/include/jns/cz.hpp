#pragma once

#include "jns/norms.hpp"

namespace jns {

/// Stopping-time configuration: degree s, level ratio Ctilde (> 2^n), and
/// threshold gamma (>= avg_Q |f| at the root cube).
struct CZConfig {
    int s = 0;
    double Ctilde = 0.0;  ///< 0 picks the default 2^{n+1}
    double gamma = 0.0;   ///< 0 picks the default avg_Q |f|
};

/// One piece A_{k,j}: values supported on the stopping cube, stored locally
/// in the cube's row-major cell order.
struct CZPiece {
    DyadicCube cube;
    std::vector<double> values;
    double sup_norm = 0.0;
    double max_moment_residual = 0.0;  ///< max_beta |int A x^beta| / scale
};

struct CZLevel {
    std::vector<CZPiece> pieces;
};

/// f - P^(s)_Q(f) = sum_{k,j} A_{k,j} with nested stopping cubes,
/// vanishing moments to degree s, and sup bounds
/// ||A_{k,j}||_inf <= 2^{n+1} C_(s) Ctilde^{k+1} gamma.
struct CZDecomposition {
    DyadicCube root;
    CZConfig config;
    double c_s = 1.0;  ///< kernel-computed C_(s)
    SpacePolynomial root_polynomial;
    std::vector<CZLevel> levels;  ///< levels[0] holds the single piece on Q

    [[nodiscard]] std::size_t piece_count() const;
    /// max_j ||A_{k,j}||_inf / (2^{n+1} C_(s) Ctilde^{k+1} gamma) per level.
    [[nodiscard]] std::vector<double> sup_bound_margins(int n) const;
};

/// Dyadic maximal function on Q: per cell, the max of avg |f| over the
/// dyadic subcubes of Q containing it; one top-down pass carrying the
/// running ancestor max. Cells outside Q are zero.
[[nodiscard]] GridFunction dyadic_maximal(const GridFunction& f, const DyadicCube& q);

/// Maximal dyadic subcubes of Q with avg |f| > Ctilde^k gamma (k >= 1).
/// Their union equals the level set {M^(d)_Q f > Ctilde^k gamma} exactly.
[[nodiscard]] std::vector<DyadicCube> stopping_cubes(const GridFunction& f, const DyadicCube& q,
                                                     const CZConfig& config, int k);

/// The decomposition itself. All stated conclusions are verified before
/// returning; a violation is a hard error.
[[nodiscard]] CZDecomposition cz_decompose(const GridFunction& f, const DyadicCube& q,
                                           const CZConfig& config);

struct TailBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

/// sum_{k>=1} mu_k^w |{x in Q0 : |f| > mu_k}| <= ||f||_{L^w(Q0)}^w / (1 - Ctilde^{-w})
/// with mu_k = Ctilde^k gamma; finite sum on a grid.
[[nodiscard]] TailBound tail_bound_check(const GridFunction& f, const DyadicCube& q0,
                                         double Ctilde, double w, double gamma);

}  // namespace jns
