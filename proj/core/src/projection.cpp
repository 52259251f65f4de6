#include "jns/projection.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "jns/rng.hpp"

namespace jns {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

/// int_{-1/2}^{1/2} u^e du
double reference_moment(int e) {
    if (e % 2 != 0) return 0.0;
    return std::ldexp(1.0, -e) / double(e + 1);
}

/// Solve the square system A x = b by Gaussian elimination with partial
/// pivoting. A is row-major, destroyed. Throws on a (near-)zero pivot.
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b, int D,
                                const char* context) {
    for (int col = 0; col < D; ++col) {
        int piv = col;
        for (int r = col + 1; r < D; ++r)
            if (std::abs(A[std::size_t(r) * D + col]) > std::abs(A[std::size_t(piv) * D + col]))
                piv = r;
        if (std::abs(A[std::size_t(piv) * D + col]) < 1e-300) throw error(context);
        if (piv != col) {
            for (int c = 0; c < D; ++c)
                std::swap(A[std::size_t(piv) * D + c], A[std::size_t(col) * D + c]);
            std::swap(b[std::size_t(piv)], b[std::size_t(col)]);
        }
        const double d = A[std::size_t(col) * D + col];
        for (int r = col + 1; r < D; ++r) {
            const double factor = A[std::size_t(r) * D + col] / d;
            if (factor == 0.0) continue;
            for (int c = col; c < D; ++c)
                A[std::size_t(r) * D + c] -= factor * A[std::size_t(col) * D + c];
            b[std::size_t(r)] -= factor * b[std::size_t(col)];
        }
    }
    std::vector<double> x(std::size_t(D), 0.0);
    for (int r = D - 1; r >= 0; --r) {
        double s = b[std::size_t(r)];
        for (int c = r + 1; c < D; ++c) s -= A[std::size_t(r) * D + c] * x[std::size_t(c)];
        x[std::size_t(r)] = s / A[std::size_t(r) * D + r];
    }
    return x;
}

/// Rank-tolerant solve of A x = b (square, possibly singular but consistent)
/// by full-pivot elimination; free variables are set to zero. Throws if the
/// dropped equations are inconsistent with the pivoted solution.
std::vector<double> solve_rank_tolerant(std::vector<double> A, std::vector<double> b, int D) {
    const std::vector<double> A0 = A;
    const std::vector<double> b0 = b;
    double maxabs = 0.0;
    for (double v : A) maxabs = std::max(maxabs, std::abs(v));
    const double tol = maxabs * 1e-12 + 1e-300;

    std::vector<int> col_of(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) col_of[std::size_t(i)] = i;

    int rank = 0;
    for (int step = 0; step < D; ++step) {
        int pr = -1, pc = -1;
        double best = tol;
        for (int r = step; r < D; ++r)
            for (int c = step; c < D; ++c)
                if (std::abs(A[std::size_t(r) * D + c]) > best) {
                    best = std::abs(A[std::size_t(r) * D + c]);
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        if (pr != step)
            for (int c = 0; c < D; ++c)
                std::swap(A[std::size_t(pr) * D + c], A[std::size_t(step) * D + c]);
        if (pr != step) std::swap(b[std::size_t(pr)], b[std::size_t(step)]);
        if (pc != step) {
            for (int r = 0; r < D; ++r)
                std::swap(A[std::size_t(r) * D + pc], A[std::size_t(r) * D + step]);
            std::swap(col_of[std::size_t(pc)], col_of[std::size_t(step)]);
        }
        const double d = A[std::size_t(step) * D + step];
        for (int r = step + 1; r < D; ++r) {
            const double factor = A[std::size_t(r) * D + step] / d;
            if (factor == 0.0) continue;
            for (int c = step; c < D; ++c)
                A[std::size_t(r) * D + c] -= factor * A[std::size_t(step) * D + c];
            b[std::size_t(r)] -= factor * b[std::size_t(step)];
        }
        ++rank;
    }

    std::vector<double> y(std::size_t(D), 0.0);  // permuted solution
    for (int r = rank - 1; r >= 0; --r) {
        double s = b[std::size_t(r)];
        for (int c = r + 1; c < D; ++c) s -= A[std::size_t(r) * D + c] * y[std::size_t(c)];
        y[std::size_t(r)] = s / A[std::size_t(r) * D + r];
    }
    std::vector<double> x(std::size_t(D), 0.0);
    for (int i = 0; i < D; ++i) x[std::size_t(col_of[std::size_t(i)])] = y[std::size_t(i)];

    double bmax = 0.0, xmax = 0.0;
    for (int i = 0; i < D; ++i) {
        bmax = std::max(bmax, std::abs(b0[std::size_t(i)]));
        xmax = std::max(xmax, std::abs(x[std::size_t(i)]));
    }
    for (int r = 0; r < D; ++r) {
        double resid = -b0[std::size_t(r)];
        for (int c = 0; c < D; ++c) resid += A0[std::size_t(r) * D + c] * x[std::size_t(c)];
        if (std::abs(resid) > 1e-8 * (bmax + maxabs * xmax + 1e-300))
            throw error("inconsistent moment system");
    }
    return x;
}

}  // namespace

SpacePolynomial::SpacePolynomial(const DomainSpec& d, const CellBox& anchor, int degree,
                                 std::vector<double> coeffs)
    : n_(d.n), degree_(degree), side_(anchor.side(d)), coeffs_(std::move(coeffs)) {
    for (int i = 0; i < n_; ++i) center_[i] = anchor.center(d, i);
    gammas_ = multi_indices_upto(n_, degree_);
    if (coeffs_.size() != gammas_.size()) throw error("coefficient count mismatch");
}

SpacePolynomial::SpacePolynomial(const DomainSpec& d, const DyadicCube& anchor, int degree,
                                 std::vector<double> coeffs)
    : SpacePolynomial(d, CellBox::from_cube(d, anchor), degree, std::move(coeffs)) {}

SpacePolynomial SpacePolynomial::zero(const DomainSpec& d, const CellBox& anchor, int degree) {
    return SpacePolynomial(d, anchor, degree,
                           std::vector<double>(std::size_t(poly_space_dim(d.n, degree)), 0.0));
}

bool SpacePolynomial::is_zero() const {
    for (double c : coeffs_)
        if (c != 0.0) return false;
    return true;
}

double SpacePolynomial::evaluate(const std::array<double, kMaxDim>& x) const {
    std::array<double, kMaxDim> u{};
    for (int i = 0; i < n_; ++i) u[i] = (x[i] - center_[i]) / side_;
    double total = 0.0;
    for (std::size_t g = 0; g < gammas_.size(); ++g) {
        double term = coeffs_[g];
        for (int i = 0; i < n_; ++i)
            for (int e = 0; e < gammas_[g].beta[i]; ++e) term *= u[i];
        total += term;
    }
    return total;
}

double SpacePolynomial::at_cell(const DomainSpec& d, std::int64_t cell) const {
    auto c = d.cell_coords(cell);
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < d.n; ++i) x[i] = d.cell_center(c[i]);
    return evaluate(x);
}

double SpacePolynomial::box_moment(const DomainSpec& d,
                                   const std::array<std::int64_t, kMaxDim>& cell_lo,
                                   const std::array<std::int64_t, kMaxDim>& cell_hi,
                                   const MultiIndex& beta) const {
    // \int_box P(x) x^beta dx with x = center + side * u per axis:
    // x^beta expands binomially; each factor is an exact u-monomial integral.
    const double h = d.cell_side();
    double total = 0.0;
    for (std::size_t g = 0; g < gammas_.size(); ++g) {
        if (coeffs_[g] == 0.0) continue;
        double term = coeffs_[g];
        for (int i = 0; i < n_; ++i) {
            const double xlo = double(cell_lo[i]) * h;
            const double xhi = double(cell_hi[i]) * h;
            const double ulo = (xlo - center_[i]) / side_;
            const double uhi = (xhi - center_[i]) / side_;
            const double umid = 0.5 * (ulo + uhi);
            const double uhalf = 0.5 * (uhi - ulo);
            const int bi = beta.beta[i];
            const int gi = gammas_[g].beta[i];
            double axis = 0.0;
            for (int t = 0; t <= bi; ++t) {
                axis += binomial(bi, t) * std::pow(center_[i], double(bi - t)) *
                        std::pow(side_, double(t)) * monomial_box_integral(umid, uhalf, gi + t);
            }
            term *= axis * side_;  // dx = side * du
        }
        total += term;
    }
    return total;
}

double SpacePolynomial::cube_moment(const DomainSpec& d, const DyadicCube& cube,
                                    const MultiIndex& beta) const {
    std::array<std::int64_t, kMaxDim> lo{}, hi{};
    for (int i = 0; i < d.n; ++i) {
        lo[i] = cube.cell_begin(d, i);
        hi[i] = cube.cell_end(d, i);
    }
    return box_moment(d, lo, hi, beta);
}

SpacePolynomial& SpacePolynomial::operator+=(const SpacePolynomial& other) {
    if (other.coeffs_.size() != coeffs_.size() || other.side_ != side_)
        throw error("polynomial basis mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpacePolynomial& SpacePolynomial::operator*=(double factor) {
    for (double& c : coeffs_) c *= factor;
    return *this;
}

SpacePolynomial project(const GridFunction& f, const CellBox& box, int degree) {
    const DomainSpec& d = f.domain();
    if (!box.valid_in(d)) throw error("cube outside domain");
    const auto gammas = multi_indices_upto(d.n, degree);
    const int D = int(gammas.size());

    // Analytic Gram in the centered-scaled basis, normalized measure.
    std::vector<double> G(std::size_t(D) * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            double v = 1.0;
            for (int i = 0; i < d.n; ++i)
                v *= reference_moment(gammas[std::size_t(a)].beta[i] +
                                      gammas[std::size_t(b)].beta[i]);
            G[std::size_t(a) * D + b] = v;
        }

    // Data side: avg_Q f psi_gamma, accumulated per cell with exact per-axis
    // u-monomial integrals (the per-axis side factor and 1/|Q| cancel).
    const std::int64_t cpa = box.side_cells;
    std::vector<std::vector<double>> uint_axis(std::size_t(degree) + 1,
                                               std::vector<double>(std::size_t(cpa)));
    for (int g = 0; g <= degree; ++g)
        for (std::int64_t j = 0; j < cpa; ++j) {
            const double umid = -0.5 + (double(j) + 0.5) / double(cpa);
            uint_axis[std::size_t(g)][std::size_t(j)] =
                monomial_box_integral(umid, 0.5 / double(cpa), g);
        }

    std::vector<Accumulator> rhs(static_cast<std::size_t>(D));
    for_each_cell(d, box, [&](std::int64_t cell) {
        auto c = d.cell_coords(cell);
        const double fv = f.value(cell);
        if (fv == 0.0) return;
        for (int a = 0; a < D; ++a) {
            double w = fv;
            for (int i = 0; i < d.n; ++i) {
                const std::int64_t j = c[i] - box.cell_begin(i);
                w *= uint_axis[std::size_t(gammas[std::size_t(a)].beta[i])][std::size_t(j)];
            }
            rhs[std::size_t(a)].add(w);
        }
    });
    std::vector<double> b(static_cast<std::size_t>(D));
    for (int a = 0; a < D; ++a) b[std::size_t(a)] = rhs[std::size_t(a)].total();

    auto coeffs = solve_dense(std::move(G), std::move(b), D,
                              "singular Gram system: internal basis bug");
    return SpacePolynomial(d, box, degree, std::move(coeffs));
}

SpacePolynomial project(const GridFunction& f, const DyadicCube& cube, int degree) {
    return project(f, CellBox::from_cube(f.domain(), cube), degree);
}

SpacePolynomial project_cellwise_span(const DomainSpec& d, const CellBox& box,
                                      std::span<const double> local_values, int degree) {
    if (!box.valid_in(d)) throw error("cube outside domain");
    if (std::int64_t(local_values.size()) != box.cell_count(d))
        throw error("local value count does not match box");
    const auto gammas = multi_indices_upto(d.n, degree);
    const int D = int(gammas.size());

    // Constraint rows in the same centered-scaled basis (identical span as
    // the raw monomials, but well conditioned for cubes far from the origin):
    //   sum_cells (f - P(center)) * \int_cell psi_delta = 0 for |delta| <= s.
    const std::int64_t cpa = box.side_cells;
    std::vector<std::vector<double>> uint_axis(std::size_t(degree) + 1,
                                               std::vector<double>(std::size_t(cpa)));
    std::vector<std::vector<double>> ucen_axis(std::size_t(degree) + 1,
                                               std::vector<double>(std::size_t(cpa)));
    for (int g = 0; g <= degree; ++g)
        for (std::int64_t j = 0; j < cpa; ++j) {
            const double umid = -0.5 + (double(j) + 0.5) / double(cpa);
            uint_axis[std::size_t(g)][std::size_t(j)] =
                monomial_box_integral(umid, 0.5 / double(cpa), g);
            ucen_axis[std::size_t(g)][std::size_t(j)] = std::pow(umid, double(g));
        }

    std::vector<Accumulator> A_acc(std::size_t(D) * D);
    std::vector<Accumulator> r_acc(static_cast<std::size_t>(D));
    std::int64_t at = 0;
    for_each_cell(d, box, [&](std::int64_t cell) {
        auto c = d.cell_coords(cell);
        std::array<std::int64_t, kMaxDim> j{};
        for (int i = 0; i < d.n; ++i) j[i] = c[i] - box.cell_begin(i);
        const double fv = local_values[std::size_t(at++)];
        for (int row = 0; row < D; ++row) {
            double wb = 1.0;
            for (int i = 0; i < d.n; ++i)
                wb *= uint_axis[std::size_t(gammas[std::size_t(row)].beta[i])][std::size_t(j[i])];
            if (fv != 0.0) r_acc[std::size_t(row)].add(fv * wb);
            for (int g = 0; g < D; ++g) {
                double psi = 1.0;
                for (int i = 0; i < d.n; ++i)
                    psi *= ucen_axis[std::size_t(gammas[std::size_t(g)].beta[i])][std::size_t(j[i])];
                A_acc[std::size_t(row) * D + g].add(psi * wb);
            }
        }
    });

    std::vector<double> A(std::size_t(D) * D), r(static_cast<std::size_t>(D));
    for (int row = 0; row < D; ++row) {
        r[std::size_t(row)] = r_acc[std::size_t(row)].total();
        for (int g = 0; g < D; ++g)
            A[std::size_t(row) * D + g] = A_acc[std::size_t(row) * D + g].total();
    }

    auto coeffs = solve_rank_tolerant(std::move(A), std::move(r), D);
    return SpacePolynomial(d, box, degree, std::move(coeffs));
}

SpacePolynomial project_cellwise(const GridFunction& f, const CellBox& box, int degree) {
    std::vector<double> local;
    local.reserve(std::size_t(box.cell_count(f.domain())));
    for_each_cell(f.domain(), box, [&](std::int64_t cell) { local.push_back(f.value(cell)); });
    return project_cellwise_span(f.domain(), box, local, degree);
}

SpacePolynomial project_cellwise(const GridFunction& f, const DyadicCube& cube, int degree) {
    return project_cellwise(f, CellBox::from_cube(f.domain(), cube), degree);
}

std::vector<double> cellwise_residual(const GridFunction& f, const CellBox& box, int degree,
                                      bool truncate_to_zero) {
    const DomainSpec& d = f.domain();
    std::vector<double> out;
    out.reserve(std::size_t(box.cell_count(d)));
    if (truncate_to_zero) {
        for_each_cell(d, box, [&](std::int64_t cell) { out.push_back(f.value(cell)); });
        return out;
    }
    const SpacePolynomial p = project_cellwise(f, box, degree);
    for_each_cell(d, box,
                  [&](std::int64_t cell) { out.push_back(f.value(cell) - p.at_cell(d, cell)); });
    return out;
}

std::vector<double> cellwise_residual(const GridFunction& f, const DyadicCube& cube, int degree,
                                      bool truncate_to_zero) {
    return cellwise_residual(f, CellBox::from_cube(f.domain(), cube), degree, truncate_to_zero);
}

double projection_constant(int s, int n, int sampling_resolution) {
    if (sampling_resolution < 64) throw error("sampling resolution must be >= 64");
    const auto gammas = multi_indices_upto(n, s);
    const int D = int(gammas.size());

    std::vector<double> G(std::size_t(D) * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            double v = 1.0;
            for (int i = 0; i < n; ++i)
                v *= reference_moment(gammas[std::size_t(a)].beta[i] +
                                      gammas[std::size_t(b)].beta[i]);
            G[std::size_t(a) * D + b] = v;
        }

    // sup_{x,y} |K(x,y)| = sup_x K(x,x) by Cauchy-Schwarz for the
    // positive-definite reproducing kernel, so only the diagonal is scanned.
    const int R = sampling_resolution;
    std::vector<int> coord(std::size_t(n), 0);
    double best = 0.0;
    while (true) {
        std::array<double, kMaxDim> u{};
        for (int i = 0; i < n; ++i) u[i] = -0.5 + double(coord[std::size_t(i)]) / double(R - 1);
        std::vector<double> psi(static_cast<std::size_t>(D));
        for (int g = 0; g < D; ++g) {
            double v = 1.0;
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < gammas[std::size_t(g)].beta[i]; ++e) v *= u[i];
            psi[std::size_t(g)] = v;
        }
        auto z = solve_dense(G, psi, D, "singular Gram system: internal basis bug");
        double k = 0.0;
        for (int g = 0; g < D; ++g) k += psi[std::size_t(g)] * z[std::size_t(g)];
        best = std::max(best, k);
        int i = n - 1;
        while (i >= 0 && ++coord[std::size_t(i)] == R) coord[std::size_t(i--)] = 0;
        if (i < 0) break;
    }
    return best;
}

double projection_constant_cached(int s, int n) {
    static std::map<std::pair<int, int>, double> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({s, n});
    if (it != cache.end()) return it->second;
    const double v = projection_constant(s, n, 129);
    cache[{s, n}] = v;
    return v;
}

double poly_sup_mean_ratio(const SpacePolynomial& p, double q, int resolution) {
    const int n = [&] {
        // infer dimension from the basis
        int best = 1;
        for (const auto& g : p.basis()) best = std::max(best, g.n);
        return best;
    }();
    int R = resolution;
    if (R <= 0) R = (n == 1) ? 256 : 64;

    // Anchor-cube geometry is embedded in the polynomial; sample in u-space
    // and convert. evaluate() wants x, so reconstruct x from u via a cell of
    // the polynomial itself: use its box_moment on the anchor instead.
    // Simpler: sample directly through evaluate() by reading the anchor from
    // two probe evaluations is fragile, so sampling uses the coefficients in
    // u-space directly.
    const auto& gammas = p.basis();
    const auto& coeffs = p.coeffs();
    auto eval_u = [&](const std::array<double, kMaxDim>& u) {
        double total = 0.0;
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            double term = coeffs[g];
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < gammas[g].beta[i]; ++e) term *= u[i];
            total += term;
        }
        return total;
    };

    double sup = 0.0;
    {
        std::vector<int> coord(std::size_t(n), 0);
        while (true) {
            std::array<double, kMaxDim> u{};
            for (int i = 0; i < n; ++i)
                u[i] = -0.5 + double(coord[std::size_t(i)]) / double(R);
            sup = std::max(sup, std::abs(eval_u(u)));
            int i = n - 1;
            while (i >= 0 && ++coord[std::size_t(i)] == R + 1) coord[std::size_t(i--)] = 0;
            if (i < 0) break;
        }
    }
    Accumulator mean;
    {
        std::vector<int> coord(std::size_t(n), 0);
        while (true) {
            std::array<double, kMaxDim> u{};
            for (int i = 0; i < n; ++i)
                u[i] = -0.5 + (double(coord[std::size_t(i)]) + 0.5) / double(R);
            const double v = std::abs(eval_u(u));
            sup = std::max(sup, v);
            mean.add(std::pow(v, q));
            int i = n - 1;
            while (i >= 0 && ++coord[std::size_t(i)] == R) coord[std::size_t(i--)] = 0;
            if (i < 0) break;
        }
    }
    double cells = 1.0;
    for (int i = 0; i < n; ++i) cells *= double(R);
    const double qmean = std::pow(mean.total() / cells, 1.0 / q);
    if (qmean == 0.0) throw error("zero polynomial has no norm ratio");
    return sup / qmean;
}

double poly_norm_ratio_constant(int s, int n, double q, int trials, std::uint64_t seed) {
    if (trials < 100) throw error("poly_norm_ratio_constant needs at least 100 trials");
    const DomainSpec ref(n, 0, 0);
    const int D = poly_space_dim(n, s);
    Rng rng(seed);
    double best = 1.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> coeffs(static_cast<std::size_t>(D));
        double norm = 0.0;
        for (double& c : coeffs) {
            c = rng.uniform(-1.0, 1.0);
            norm += std::abs(c);
        }
        if (norm < 1e-12) continue;  // zero polynomial sampled: skipped
        SpacePolynomial p(ref, DyadicCube::root(), s, std::move(coeffs));
        best = std::max(best, poly_sup_mean_ratio(p, q));
    }
    return best;
}

}  // namespace jns
