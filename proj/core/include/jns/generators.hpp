#pragma once

#include "jns/grid_function.hpp"

namespace jns {

/// Deterministic test-function generators; a fixed seed reproduces the grid
/// bit for bit.

[[nodiscard]] GridFunction gen_constant(const DomainSpec& d, double value);

/// value on `width_cells` cells at the origin corner, 0 elsewhere.
[[nodiscard]] GridFunction gen_spike(const DomainSpec& d, double value, std::int64_t width_cells);

/// hi on the lower half of the first axis, lo on the upper half.
[[nodiscard]] GridFunction gen_step(const DomainSpec& d, double hi, double lo);

/// iid uniform on [lo, hi].
[[nodiscard]] GridFunction gen_random(const DomainSpec& d, std::uint64_t seed, double lo = -1.0,
                                      double hi = 1.0);

/// Sum of `terms` random Haar-type bumps: per term a random dyadic cube,
/// +c on its lower half along a random axis and -c on the upper half.
[[nodiscard]] GridFunction gen_haar_sum(const DomainSpec& d, std::uint64_t seed, int terms = 8);

/// Heavy-tailed positive samples -log(u), u uniform on (0, 1]; an unbounded
/// sample family (plumbing stand-in for spike-growth studies).
[[nodiscard]] GridFunction gen_log_sample(const DomainSpec& d, std::uint64_t seed);

enum class GenKind { constant, spike, step, random, haar_sum, log_sample };

[[nodiscard]] GenKind gen_kind_from_string(const std::string& name);

/// Unified entry used by the CLI: `value` feeds constant/spike/step
/// amplitudes, `width` the spike width, `terms` the haar sum.
[[nodiscard]] GridFunction generate(GenKind kind, const DomainSpec& d, std::uint64_t seed,
                                    double value, std::int64_t width, int terms);

}  // namespace jns
