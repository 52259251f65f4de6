#pragma once

#include <cmath>
#include <limits>

#include "jns/cz.hpp"

namespace jns {

/// Atom indices (v, w, s, alpha, c0) with the conjugate pair (v', w');
/// w may be infinity. c0 snapped dyadic as in NormParams.
struct AtomParams {
    double v = 2.0;
    double w = std::numeric_limits<double>::infinity();
    int s = 0;
    double alpha = 0.0;
    double c0 = 1.0;
    double v_conj = 2.0;
    double w_conj = 1.0;

    static AtomParams make(double v, double w, int s, double alpha, double c0,
                           const DomainSpec& domain);

    /// Norm indices (p, q) = (v', w') of the jn space this atom family pairs
    /// against.
    [[nodiscard]] NormParams dual_norm_params(const DomainSpec& domain) const;
    [[nodiscard]] bool w_is_inf() const { return std::isinf(w); }
};

/// Function supported in one square cell-aligned box (a dyadic cube in
/// strict mode), stored locally in the box's row-major cell order.
struct LocalAtom {
    CellBox support;
    std::vector<double> values;

    [[nodiscard]] double lw_norm(const DomainSpec& d, double w) const;
    [[nodiscard]] double sup_norm() const;
};

struct AtomReport {
    bool valid = true;
    double size_ratio = 0.0;          ///< ||a||_{L^w} / |Q|^{1/w - 1/v - alpha}
    double max_moment_residual = 0.0; ///< relative to |Q| ||a||_inf scale
    std::string detail;
};

/// Checks the three atom conditions: support containment (by construction),
/// the L^w size bound, and vanishing moments to degree s when side(Q) < c0.
[[nodiscard]] AtomReport validate_atom(const DomainSpec& d, const LocalAtom& atom,
                                       const AtomParams& params);

/// lambda-weighted atoms on interior pairwise disjoint boxes.
struct Polymer {
    std::vector<double> lambdas;
    std::vector<LocalAtom> atoms;

    [[nodiscard]] double budget(double v) const;  ///< (sum |lambda|^v)^{1/v}
};

/// Disjointness plus per-atom validity.
[[nodiscard]] AtomReport validate_polymer(const DomainSpec& d, const Polymer& polymer,
                                          const AtomParams& params);

struct AtomicDecomposition {
    std::vector<Polymer> polymers;
};

/// sum_i lambda_i int a_i f, exact under the model. In strict mode every
/// atom support must be a dyadic cube (so the pairing bound is testable
/// against the dyadic jn norm); permissive mode accepts any cell box but
/// the inequality is then not asserted.
[[nodiscard]] double pair_polymer(const Polymer& polymer, const GridFunction& f,
                                  bool strict = true);
[[nodiscard]] double pair_decomposition(const AtomicDecomposition& d, const GridFunction& f,
                                        bool strict = true);

/// sum_i (sum_j |lambda_{i,j}|^v)^{1/v}: certified upper bound for the hk
/// norm of the represented functional.
[[nodiscard]] double hk_upper_bound(const AtomicDecomposition& d, double v);

/// max_f |pair(d, f)| / ||f||_{jn,dyadic}: certified lower bound.
/// Throws when every test function has zero dyadic jn norm.
[[nodiscard]] double hk_lower_bound(const AtomicDecomposition& d,
                                    const std::vector<const GridFunction*>& test_functions,
                                    const NormParams& jn_params);

struct H1Bounds {
    double fine = 0.0;    ///< sum |Q_{i,j}|^{1 - 1/v} |lambda_{i,j}|
    double coarse = 0.0;  ///< |Q0|^{1 - 1/v} * hk_upper_bound
};

/// Local Hardy-space bound h^{1,w}_at via the Holder step; fine <= coarse.
[[nodiscard]] H1Bounds h1_upper_bound(const AtomicDecomposition& d, const DomainSpec& domain,
                                      double v);

struct RefineResult {
    AtomicDecomposition decomposition;
    std::vector<double> level_budgets;  ///< budget of the emitted polymer per CZ level
    int skipped_zero_atoms = 0;
    bool passthrough = false;
};

/// Decompose each finite-w atom through its Calderon-Zygmund pieces into
/// scalar multiples of (v, inf, s)_alpha atoms: the level-0 polymer carries
/// [A_{0,1} + P_Q(a)] / (2^{n+2} C_(s) C0) per atom and each level k >= 1
/// polymer the pieces scaled by [2^{n+1} C_(s) C0^{k+1} gamma_l]^{-1}
/// |Q|^{-1/v-alpha}, with gamma_l = (avg |a_l|^w)^{1/w}. Every emitted atom
/// must validate (hard error); zero atoms are skipped with notice.
/// Infinite-w input passes through unchanged.
[[nodiscard]] RefineResult refine_atoms(const DomainSpec& d, const Polymer& g,
                                        const AtomParams& params, double C0);

struct DualResult {
    AtomicDecomposition g;
    double pairing = 0.0;
    double budget = 0.0;
    double ratio = 0.0;  ///< pairing / budget
};

/// The duality lower construction: per packing cube the w-Holder extremal of
/// f - P^(s)_{Q,c0} f (exactly normalized, so grid Holder is tight), with
/// coefficients from the ell^v duality extremal. ratio is a certified lower
/// bound of the hk norm of the induced functional and satisfies
/// ratio >= ||f||_{jn,dyadic} / (4 (1 + C_(s))).
[[nodiscard]] DualResult dual_optimizer(const GridFunction& f, const Packing& packing,
                                        const AtomParams& params);

/// Canonical one-atom-per-tile decomposition of f at dyadic scale
/// tile_side_cells (tiles play the R_i of the Lebesgue identification).
[[nodiscard]] AtomicDecomposition tile_decomposition(const GridFunction& f,
                                                     const AtomParams& params,
                                                     std::int64_t tile_side_cells);

/// Lebesgue identification of hk on Q0 (w <= v): single-atom budget equals
/// |Q0|^{1/v - 1/w} ||f||_{L^w} exactly and the tiling budget dominates
/// |Q0|^{1/v - 1/w} ||f||_{L^w} from below per the size-bound chain.
[[nodiscard]] ExperimentResult experiment_hk_lebesgue(const GridFunction& f,
                                                      const AtomParams& params,
                                                      std::int64_t tile_side_cells);

}  // namespace jns
