#include "jns/dyadic.hpp"

#include <cmath>
#include <sstream>

namespace jns {

DomainSpec::DomainSpec(int n_, int m_, int K_) : n(n_), m(m_), K(K_) {
    if (n < 1 || n > kMaxDim) throw error("domain dimension out of range");
    if (K < 0) throw error("domain depth must be non-negative");
    if (std::int64_t(n) * K > 26) throw error("domain too large: 2^(n*K) cells");
}

double DomainSpec::side() const { return std::ldexp(1.0, m); }
double DomainSpec::cell_side() const { return std::ldexp(1.0, m - K); }

double DomainSpec::measure() const {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= side();
    return r;
}

double DomainSpec::cell_measure() const {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= cell_side();
    return r;
}

std::int64_t DomainSpec::cell_count() const { return std::int64_t{1} << (n * K); }

std::int64_t DomainSpec::cell_index(const std::array<std::int64_t, kMaxDim>& c) const {
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) idx = (idx << K) | c[i];
    return idx;
}

std::array<std::int64_t, kMaxDim> DomainSpec::cell_coords(std::int64_t linear) const {
    std::array<std::int64_t, kMaxDim> c{};
    const std::int64_t mask = cells_per_axis() - 1;
    for (int i = n - 1; i >= 0; --i) {
        c[i] = linear & mask;
        linear >>= K;
    }
    return c;
}

double DomainSpec::cell_center(std::int64_t ci) const { return (double(ci) + 0.5) * cell_side(); }
double DomainSpec::cell_low(std::int64_t ci) const { return double(ci) * cell_side(); }

MultiIndex::MultiIndex(std::initializer_list<int> parts) {
    n = int(parts.size());
    if (n < 1 || n > kMaxDim) throw error("multi-index dimension out of range");
    int i = 0;
    for (int p : parts) {
        if (p < 0) throw error("multi-index entries must be non-negative");
        beta[i++] = p;
    }
}

MultiIndex MultiIndex::zero(int n) {
    MultiIndex b;
    b.n = n;
    return b;
}

int MultiIndex::order() const {
    int s = 0;
    for (int i = 0; i < n; ++i) s += beta[i];
    return s;
}

std::vector<MultiIndex> multi_indices_upto(int n, int order) {
    std::vector<MultiIndex> out;
    for (int total = 0; total <= order; ++total) {
        MultiIndex b = MultiIndex::zero(n);
        // enumerate compositions of `total` into n parts, lexicographic
        std::vector<int> parts(n, 0);
        int axis = 0;
        parts[0] = total;
        while (true) {
            for (int i = 0; i < n; ++i) b.beta[i] = parts[i];
            out.push_back(b);
            // next composition: move one unit from the rightmost positive
            // non-final slot toward the end
            int i = n - 2;
            while (i >= 0 && parts[i] == 0) --i;
            if (i < 0) break;
            --parts[i];
            int rest = 1;
            for (int j = i + 1; j < n; ++j) {
                rest += parts[j];
                parts[j] = 0;
            }
            parts[i + 1] = rest;
        }
        (void)axis;
    }
    return out;
}

int poly_space_dim(int n, int s) { return int(multi_indices_upto(n, s).size()); }

DyadicCube::DyadicCube(int level_, std::initializer_list<std::int64_t> idx) : level(level_) {
    int i = 0;
    for (std::int64_t v : idx) index[i++] = v;
}

DyadicCube DyadicCube::root() { return DyadicCube{}; }

double DyadicCube::side(const DomainSpec& d) const { return std::ldexp(1.0, d.m - level); }

double DyadicCube::measure(const DomainSpec& d) const {
    double r = 1.0;
    for (int i = 0; i < d.n; ++i) r *= side(d);
    return r;
}

double DyadicCube::low(const DomainSpec& d, int i) const { return double(index[i]) * side(d); }
double DyadicCube::center(const DomainSpec& d, int i) const {
    return (double(index[i]) + 0.5) * side(d);
}

std::int64_t DyadicCube::cells_per_axis(const DomainSpec& d) const {
    return std::int64_t{1} << (d.K - level);
}

std::int64_t DyadicCube::cell_begin(const DomainSpec& d, int i) const {
    return index[i] << (d.K - level);
}

std::int64_t DyadicCube::cell_end(const DomainSpec& d, int i) const {
    return cell_begin(d, i) + cells_per_axis(d);
}

std::int64_t DyadicCube::cell_count(const DomainSpec& d) const {
    return std::int64_t{1} << (d.n * (d.K - level));
}

bool DyadicCube::contains(const DomainSpec& d, const DyadicCube& other) const {
    if (other.level < level) return false;
    const int shift = other.level - level;
    for (int i = 0; i < d.n; ++i)
        if ((other.index[i] >> shift) != index[i]) return false;
    return true;
}

bool DyadicCube::valid_in(const DomainSpec& d) const {
    if (level < 0 || level > d.K) return false;
    const std::int64_t per_axis = std::int64_t{1} << level;
    for (int i = 0; i < d.n; ++i)
        if (index[i] < 0 || index[i] >= per_axis) return false;
    return true;
}

CellBox CellBox::from_cube(const DomainSpec& d, const DyadicCube& cube) {
    CellBox b;
    b.side_cells = cube.cells_per_axis(d);
    for (int i = 0; i < d.n; ++i) b.lo[i] = cube.cell_begin(d, i);
    return b;
}

double CellBox::side(const DomainSpec& d) const { return double(side_cells) * d.cell_side(); }

double CellBox::measure(const DomainSpec& d) const {
    double r = 1.0;
    for (int i = 0; i < d.n; ++i) r *= side(d);
    return r;
}

double CellBox::center(const DomainSpec& d, int i) const {
    return (double(lo[i]) + double(side_cells) / 2.0) * d.cell_side();
}

std::int64_t CellBox::cell_count(const DomainSpec& d) const {
    std::int64_t r = 1;
    for (int i = 0; i < d.n; ++i) r *= side_cells;
    return r;
}

bool CellBox::valid_in(const DomainSpec& d) const {
    if (side_cells < 1) return false;
    for (int i = 0; i < d.n; ++i)
        if (lo[i] < 0 || lo[i] + side_cells > d.cells_per_axis()) return false;
    return true;
}

bool CellBox::is_dyadic(const DomainSpec& d) const {
    if ((side_cells & (side_cells - 1)) != 0) return false;
    for (int i = 0; i < d.n; ++i)
        if (lo[i] % side_cells != 0) return false;
    return valid_in(d);
}

DyadicCube CellBox::as_cube(const DomainSpec& d) const {
    if (!is_dyadic(d)) throw error("box is not a dyadic cube");
    DyadicCube c;
    std::int64_t s = side_cells;
    int shift = 0;
    while (s > 1) {
        s >>= 1;
        ++shift;
    }
    c.level = d.K - shift;
    for (int i = 0; i < d.n; ++i) c.index[i] = lo[i] >> shift;
    return c;
}

std::vector<DyadicCube> cube_children(const DyadicCube& cube, const DomainSpec& d) {
    if (cube.level >= d.K) throw error("no children at maximum depth");
    std::vector<DyadicCube> out;
    out.reserve(std::size_t{1} << d.n);
    const int combos = 1 << d.n;
    for (int mask = 0; mask < combos; ++mask) {
        DyadicCube c;
        c.level = cube.level + 1;
        for (int i = 0; i < d.n; ++i)
            c.index[i] = 2 * cube.index[i] + ((mask >> (d.n - 1 - i)) & 1);
        out.push_back(c);
    }
    return out;
}

DyadicCube cube_parent(const DyadicCube& cube) {
    if (cube.level == 0) throw error("root cube has no parent");
    DyadicCube p;
    p.level = cube.level - 1;
    for (int i = 0; i < kMaxDim; ++i) p.index[i] = cube.index[i] >> 1;
    return p;
}

std::vector<DyadicCube> cubes_at_level(const DomainSpec& d, int level) {
    if (level < 0 || level > d.K) throw error("level out of range");
    std::vector<DyadicCube> out;
    out.reserve(std::size_t{1} << (d.n * level));
    const std::int64_t per_axis = std::int64_t{1} << level;
    std::array<std::int64_t, kMaxDim> idx{};
    while (true) {
        DyadicCube c;
        c.level = level;
        c.index = idx;
        out.push_back(c);
        int i = d.n - 1;
        while (i >= 0 && ++idx[i] == per_axis) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::string to_string(const DyadicCube& cube, int n) {
    std::ostringstream os;
    os << "L" << cube.level << "[";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << cube.index[i];
    os << "]";
    return os.str();
}

}  // namespace jns
