#pragma once

#include "jns/atoms.hpp"
#include "jns/generators.hpp"
#include "jns/report.hpp"

namespace jns::verify {

struct CriterionResult {
    std::string name;
    bool passed = false;
    Report details;
};

/// 1. jn/JN DP equals exhaustive antichain enumeration (1e-12 relative).
[[nodiscard]] CriterionResult criterion_oracle_equivalence(std::uint64_t seed, int trials_1d,
                                                           int trials_2d);
/// 2. f == 3: JN vanishes, jn = 3 * 2^{m/2} with tiling certificate, m = 0..6.
[[nodiscard]] CriterionResult criterion_constant_separation();
/// 3. p -> inf limit: terminal gap <= 2% at p = 512 and the single-cube
/// lower bound at every cube and every swept p.
[[nodiscard]] CriterionResult criterion_p_limit(std::uint64_t seed, int trials);
/// 4. CZ conclusions on random configurations.
[[nodiscard]] CriterionResult criterion_cz_conclusions(std::uint64_t seed, int trials);
/// 5. Geometric tail bound, random configurations.
[[nodiscard]] CriterionResult criterion_tail_bound(std::uint64_t seed, int trials);
/// 6. |pair| <= budget * ||f||_{jn,dyadic} for random polymers.
[[nodiscard]] CriterionResult criterion_duality_inequality(std::uint64_t seed, int trials);
/// 7. dual_optimizer ratio in [||f|| / (4(1+C_(s))), ||f|| (1+1e-12)].
[[nodiscard]] CriterionResult criterion_dual_construction(std::uint64_t seed, int trials);
/// 8. Lebesgue identifications (q = p two-sided; p <= q exact direction).
[[nodiscard]] CriterionResult criterion_lebesgue_identifications(std::uint64_t seed, int trials);
/// 9. Atom refinement to infinite-w atoms with pairing preservation.
[[nodiscard]] CriterionResult criterion_atom_refinement(std::uint64_t seed, int trials);
/// 10. Weak-type bound via Chebyshev; the weak/jn ratio is reported only.
[[nodiscard]] CriterionResult criterion_weak_type(std::uint64_t seed, int trials);

/// Projection-module invariants (kernel constants, moment orthogonality,
/// the pointwise bound, linearity); part of the projections suite.
[[nodiscard]] CriterionResult projection_invariants(std::uint64_t seed, int trials);

/// All ten criteria at their full trial counts.
[[nodiscard]] std::vector<CriterionResult> run_all(std::uint64_t seed);

/// Suites: oracle {1,2}, projections {invariants, 10}, cz {4,5},
/// duality {6,7,9}, limits {3}, lebesgue {8 + experiments}.
[[nodiscard]] std::vector<CriterionResult> run_suite(const std::string& suite,
                                                     std::uint64_t seed, int trials);

[[nodiscard]] std::vector<std::string> suite_names();

}  // namespace jns::verify
