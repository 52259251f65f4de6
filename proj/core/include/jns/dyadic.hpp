#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jns {

/// Library-wide error type; thrown on contract violations and bad input.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kMaxDim = 4;

/// Uniform dyadic grid over the half-open base cube [0, 2^m)^n.
/// Cells are the depth-K dyadic cubes, side 2^(m-K).
struct DomainSpec {
    int n = 1;  ///< dimension
    int m = 0;  ///< base cube side exponent: side = 2^m
    int K = 0;  ///< depth; cells per axis = 2^K

    DomainSpec() = default;
    DomainSpec(int n_, int m_, int K_);

    [[nodiscard]] double side() const;          ///< 2^m
    [[nodiscard]] double cell_side() const;     ///< 2^(m-K)
    [[nodiscard]] double measure() const;       ///< side^n
    [[nodiscard]] double cell_measure() const;  ///< cell_side^n
    [[nodiscard]] std::int64_t cells_per_axis() const { return std::int64_t{1} << K; }
    [[nodiscard]] std::int64_t cell_count() const;

    /// Row-major linear index of a cell, last axis fastest.
    [[nodiscard]] std::int64_t cell_index(const std::array<std::int64_t, kMaxDim>& c) const;
    [[nodiscard]] std::array<std::int64_t, kMaxDim> cell_coords(std::int64_t linear) const;
    /// Center coordinate of cell c along axis i.
    [[nodiscard]] double cell_center(std::int64_t ci) const;
    /// Low edge coordinate of cell ci along an axis.
    [[nodiscard]] double cell_low(std::int64_t ci) const;

    bool operator==(const DomainSpec&) const = default;
};

/// Monomial multi-index beta with |beta| = sum of entries.
struct MultiIndex {
    std::array<int, kMaxDim> beta{};
    int n = 1;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> parts);
    static MultiIndex zero(int n);

    [[nodiscard]] int order() const;
    bool operator==(const MultiIndex&) const = default;
};

/// All multi-indices with |beta| <= order in n variables, graded lexicographic.
[[nodiscard]] std::vector<MultiIndex> multi_indices_upto(int n, int order);

/// Dimension of the space of polynomials of total degree <= s in n variables.
[[nodiscard]] int poly_space_dim(int n, int s);

/// Node of the 2^n-ary dyadic tree: level k in 0..K, lattice index at that level.
/// Half-open geometry [a, a + side) per axis; side = 2^(m-k), measure = side^n.
struct DyadicCube {
    int level = 0;
    std::array<std::int64_t, kMaxDim> index{};

    DyadicCube() = default;
    DyadicCube(int level_, std::initializer_list<std::int64_t> idx);
    static DyadicCube root();

    [[nodiscard]] double side(const DomainSpec& d) const;
    [[nodiscard]] double measure(const DomainSpec& d) const;
    /// Low corner coordinate along axis i.
    [[nodiscard]] double low(const DomainSpec& d, int i) const;
    [[nodiscard]] double center(const DomainSpec& d, int i) const;
    /// Cells per axis covered by this cube: 2^(K - level).
    [[nodiscard]] std::int64_t cells_per_axis(const DomainSpec& d) const;
    /// First cell coordinate along axis i.
    [[nodiscard]] std::int64_t cell_begin(const DomainSpec& d, int i) const;
    [[nodiscard]] std::int64_t cell_end(const DomainSpec& d, int i) const;
    [[nodiscard]] std::int64_t cell_count(const DomainSpec& d) const;

    [[nodiscard]] bool contains(const DomainSpec& d, const DyadicCube& other) const;
    [[nodiscard]] bool valid_in(const DomainSpec& d) const;

    bool operator==(const DyadicCube&) const = default;
};

/// Square, cell-aligned box: `side_cells` grid cells per axis starting at
/// cell `lo`. Every dyadic cube is one of these; shifted-lattice cubes and
/// permissive atom supports are the non-dyadic cases.
struct CellBox {
    std::array<std::int64_t, kMaxDim> lo{};
    std::int64_t side_cells = 1;

    static CellBox from_cube(const DomainSpec& d, const DyadicCube& cube);

    [[nodiscard]] double side(const DomainSpec& d) const;
    [[nodiscard]] double measure(const DomainSpec& d) const;
    [[nodiscard]] double center(const DomainSpec& d, int i) const;
    [[nodiscard]] std::int64_t cell_begin(int i) const { return lo[i]; }
    [[nodiscard]] std::int64_t cell_end(int i) const { return lo[i] + side_cells; }
    [[nodiscard]] std::int64_t cell_count(const DomainSpec& d) const;
    [[nodiscard]] bool valid_in(const DomainSpec& d) const;
    /// True when this box is a dyadic cube of the standard lattice.
    [[nodiscard]] bool is_dyadic(const DomainSpec& d) const;
    /// The dyadic cube equal to this box; throws if not dyadic.
    [[nodiscard]] DyadicCube as_cube(const DomainSpec& d) const;

    bool operator==(const CellBox&) const = default;
};

/// The 2^n children of a non-leaf cube; they partition the parent and their
/// interiors are pairwise disjoint. Throws on a leaf (level == K).
[[nodiscard]] std::vector<DyadicCube> cube_children(const DyadicCube& cube, const DomainSpec& d);

[[nodiscard]] DyadicCube cube_parent(const DyadicCube& cube);

/// All 2^(n*k) cubes at a fixed level, covering the domain.
[[nodiscard]] std::vector<DyadicCube> cubes_at_level(const DomainSpec& d, int level);

/// Loop over the cells of a box in row-major order, invoking fn(linear_index).
template <typename Fn>
void for_each_cell(const DomainSpec& d, const CellBox& box, Fn&& fn) {
    std::array<std::int64_t, kMaxDim> c{};
    for (int i = 0; i < d.n; ++i) c[i] = box.cell_begin(i);
    const std::int64_t total = box.cell_count(d);
    for (std::int64_t t = 0; t < total; ++t) {
        fn(d.cell_index(c));
        for (int i = d.n - 1; i >= 0; --i) {
            if (++c[i] < box.cell_end(i)) break;
            c[i] = box.cell_begin(i);
        }
    }
}

template <typename Fn>
void for_each_cell(const DomainSpec& d, const DyadicCube& cube, Fn&& fn) {
    for_each_cell(d, CellBox::from_cube(d, cube), std::forward<Fn>(fn));
}

[[nodiscard]] std::string to_string(const DyadicCube& cube, int n);

}  // namespace jns
