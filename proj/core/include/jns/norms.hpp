#pragma once

#include <string>
#include <vector>

#include "jns/projection.hpp"

namespace jns {

/// Which projection enters the oscillation: the localized P^(s)_{Q,c0}
/// (zero once side(Q) >= c0) or the plain P^(s)_Q.
enum class Variant { localized, plain };

/// Norm indices (p, q, s, alpha, c0). c0 is snapped to the dyadic scale
/// 2^j <= c0 so the side(Q) < c0 test is exact on dyadic cubes.
struct NormParams {
    double p = 2.0;
    double q = 1.0;
    int s = 0;
    double alpha = 0.0;
    double c0 = 1.0;      ///< snapped dyadic value actually used
    double c0_raw = 1.0;  ///< value requested before snapping
    Variant variant = Variant::localized;

    static NormParams make(double p, double q, int s, double alpha, double c0,
                           Variant variant, const DomainSpec& domain);

    [[nodiscard]] NormParams with(Variant v) const;
    [[nodiscard]] NormParams with_p(double new_p) const;
    [[nodiscard]] NormParams with_q(double new_q) const;
    [[nodiscard]] NormParams with_c0(double new_c0, const DomainSpec& domain) const;
};

/// Snap to the largest dyadic value 2^j <= c0.
[[nodiscard]] double snap_dyadic(double c0);

/// Collection of cubes with pairwise disjoint interiors: an antichain of the
/// dyadic tree, with the weight |Q| (|Q|^{-alpha} osc_q(f,Q))^p per cube.
struct Packing {
    std::vector<DyadicCube> cubes;
    std::vector<double> weights;  ///< parallel to cubes when produced by the DP
    [[nodiscard]] bool empty() const { return cubes.empty(); }
};

struct NormResult {
    double value = 0.0;
    Packing packing;
};

/// P^(s)_{Q,c0}: project(f, Q, s) when side(Q) < c0, the zero polynomial
/// once side(Q) >= c0.
[[nodiscard]] SpacePolynomial localized_project(const GridFunction& f, const DyadicCube& cube,
                                                const NormParams& params);

/// |Q|^{-alpha} (avg_Q |f - P|^q)^{1/q} with P per the variant flag,
/// exact under the piecewise-constant model (P sampled at cell centers).
[[nodiscard]] double oscillation(const GridFunction& f, const DyadicCube& cube,
                                 const NormParams& params);
[[nodiscard]] double oscillation(const GridFunction& f, const CellBox& box,
                                 const NormParams& params);

/// log of the packing weight |Q| (|Q|^{-alpha} osc)^p; -inf when osc == 0.
/// Weights live in log space so p = 512 sweeps cannot overflow.
[[nodiscard]] double log_weight(const GridFunction& f, const CellBox& box,
                                const NormParams& params);

/// Exact supremum over packings of dyadic cubes of
/// (sum_j |Q_j| (|Q_j|^{-alpha} osc_q(f,Q_j))^p)^{1/p}, via the tree
/// recursion best(Q) = max(w(Q), sum_children best(child)), plus one
/// maximizing packing (ties broken toward the parent cube). A lower bound
/// of the all-cubes norm. Localized variant.
[[nodiscard]] NormResult jn_norm_dyadic(const GridFunction& f, const NormParams& params);

/// Same recursion with the plain (untruncated) projection.
[[nodiscard]] NormResult JN_norm_dyadic(const GridFunction& f, const NormParams& params);

/// Ensemble max over 3^n cell-aligned translated dyadic lattices; tighter
/// lower bound of the all-cubes supremum. Off the default paths.
[[nodiscard]] double jn_norm_shifted(const GridFunction& f, const NormParams& params);

/// Recompute the aggregated value of an explicit packing (certificate check).
[[nodiscard]] double packing_value(const GridFunction& f, const Packing& packing,
                                   const NormParams& params);

/// Max of the localized oscillation over all dyadic cubes: the p -> inf
/// limit functional.
[[nodiscard]] double campanato_norm_dyadic(const GridFunction& f, const NormParams& params);

[[nodiscard]] double lebesgue_norm(const GridFunction& f, double p);

/// sup_lambda lambda |{x in Q0 : |f - P^s_{Q0}(f)| > lambda}|^{1/p}, exact on
/// the finite grid by scanning the sorted residual levels.
[[nodiscard]] double weak_quasi_norm(const GridFunction& f, const DyadicCube& q0, int s, double p);

/// Exhaustive maximum of the packing value over every antichain of the
/// dyadic tree; brute-force oracle for the DP. Throws "oracle limit
/// exceeded" beyond depth 4 (1-D) / 2 (2-D) / 1 (3-D).
[[nodiscard]] double packing_oracle(const GridFunction& f, const NormParams& params,
                                    int max_depth);

/// Number of antichains of the full dyadic tree (677 for a depth-3 binary
/// tree); sets the oracle's enumeration size.
[[nodiscard]] double antichain_count(const DomainSpec& d);

struct SweepRow {
    double p = 0.0;
    double jn = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double campanato = 0.0;
    double terminal_gap = 0.0;    ///< |jn(p_max) - campanato| / campanato
    bool monotone = true;         ///< nondecreasing in p (measure-1 domains)
    double single_cube_lower = 0.0;  ///< max_Q |Q|^{1/p_max} osc(Q)
    double measure_upper = 0.0;      ///< measure^{1/p_max} * campanato
};

/// jn norm across p_list, with the campanato limit and the two-sided
/// bracketing bounds at the terminal p.
[[nodiscard]] SweepResult norm_limit_sweep(const GridFunction& f, const NormParams& params,
                                           const std::vector<double>& p_list);

// ---------------------------------------------------------------------------
// Equivalence experiments: empirical ratios plus the inequality directions
// whose constants the proofs make explicit (assembled from C_(s), c0, n, p, q).

struct ExperimentCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
    [[nodiscard]] double slack() const { return rhs - lhs; }
};

struct ExperimentResult {
    std::string name;
    std::vector<std::pair<std::string, double>> values;
    std::vector<ExperimentCheck> checks;
    [[nodiscard]] bool all_passed() const;
};

/// c0-robustness: ||f||_{c2} <= (1 + C_(s)) ||f||_{c1} for c1 < c2;
/// the reverse ratio is reported.
[[nodiscard]] ExperimentResult experiment_c0_independence(const GridFunction& f,
                                                          const NormParams& params, double c1,
                                                          double c2);

/// q-invariance: ||f||_{(p,1)} <= ||f||_{(p,q)} exactly; reverse reported.
[[nodiscard]] ExperimentResult experiment_q_invariance(const GridFunction& f,
                                                       const NormParams& params);

/// jn = JN intersect L^p mechanism (alpha > 0): jn <= JN + c0^{-n alpha} L^p
/// and JN <= (1 + C_(s)) jn.
[[nodiscard]] ExperimentResult experiment_intersection(const GridFunction& f,
                                                       const NormParams& params);

/// Lebesgue identification on Q0 for p <= q, alpha = 0.
[[nodiscard]] ExperimentResult experiment_lebesgue_q(const GridFunction& f,
                                                     const NormParams& params);

/// Lebesgue identification with q = p, alpha = 0 (the R^n model).
[[nodiscard]] ExperimentResult experiment_lebesgue_p(const GridFunction& f,
                                                     const NormParams& params);

/// Constant-function growth certificate across domain exponents m_list
/// (p < q, alpha < 1/p - 1/q): per-step growth factor 2^{n(1/p - alpha)}.
[[nodiscard]] ExperimentResult experiment_vanishing(double a, const NormParams& params, int n,
                                                    const std::vector<int>& m_list, int depth);

/// Quotient-norm upper bound for JN(Q0) = jn(Q0)/P_s(Q0): reports
/// min(||f||, ||f - P_{Q0} f||) as an upper bound and asserts
/// JN <= (1 + C_(s)) * that bound.
[[nodiscard]] ExperimentResult experiment_quotient(const GridFunction& f,
                                                   const NormParams& params);

enum class Experiment {
    c0_independence,
    q_invariance,
    intersection,
    lebesgue_q,
    lebesgue_p,
    quotient,
};

/// Dispatch a batch of experiments on one function. Unsupported
/// configurations throw.
[[nodiscard]] std::vector<ExperimentResult> equivalence_experiments(
    const GridFunction& f, const NormParams& params, const std::vector<Experiment>& configs);

}  // namespace jns
