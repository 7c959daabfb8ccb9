#include "cbcop/checkerboard.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"

namespace cbcop {

namespace {

constexpr double kGaussNode = 0.57735026918962576451; // 1/sqrt(3)

// Compensated (Neumaier) accumulator for the cell sweeps.
struct Accumulator {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace

CheckerboardCopula CheckerboardCopula::build(JointPmf pmf) {
    if (pmf.dim() > kMaxDim)
        throw validation_error("checkerboard: dimension too large");
    return CheckerboardCopula(std::move(pmf));
}

CheckerboardCopula::CheckerboardCopula(JointPmf pmf) : pmf_(std::move(pmf)) {
    const NdShape& shape = pmf_.shape();
    const std::size_t d = pmf_.dim();

    // Cumulative pmf: running prefix sums along one axis at a time.
    cum_ = pmf_.cells();
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::size_t stride = 1;
        for (std::size_t a = d; a-- > axis + 1;)
            stride *= shape.extent(a);
        const std::size_t extent = shape.extent(axis);
        for (std::size_t i = 0; i < cum_.size(); ++i)
            if ((i / stride) % extent != 0)
                cum_[i] += cum_[i - stride];
    }
    cum_.back() = 1.0;

    // Per-cell density: cell mass over cell volume, zero for slices of a
    // zero-mass atom.
    dens_.resize(pmf_.cells().size());
    std::vector<int> idx(d, 0);
    std::size_t flat = 0;
    do {
        double volume = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& m = pmf_.margin(j);
            volume *= m.cdf(idx[j]) - m.cdf(idx[j] - 1);
        }
        dens_[flat] = volume > 0.0 ? pmf_.cells()[flat] / volume : 0.0;
        ++flat;
    } while (shape.next(idx));
}

double CheckerboardCopula::cumulative(std::span<const int> idx) const {
    if (idx.size() != dim())
        throw std::domain_error("checkerboard: index dimension mismatch");
    std::array<int, kMaxDim> at{};
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] < -1 || idx[j] >= static_cast<int>(pmf_.shape().extent(j)))
            throw std::domain_error("checkerboard: cumulative index out of range");
        if (idx[j] == -1)
            return 0.0;
        at[j] = idx[j];
    }
    return cum_[pmf_.shape().offset(std::span<const int>(at.data(), idx.size()))];
}

double CheckerboardCopula::cell_density(std::span<const int> idx) const {
    if (idx.size() != dim())
        throw std::domain_error("checkerboard: index dimension mismatch");
    for (std::size_t j = 0; j < idx.size(); ++j)
        if (idx[j] < 0 || idx[j] >= static_cast<int>(pmf_.shape().extent(j)))
            throw std::domain_error("checkerboard: cell index out of range");
    return dens_[pmf_.shape().offset(idx)];
}

double CheckerboardCopula::blend(std::span<const DiscreteMargin::Bracket> brackets) const {
    // Multilinear combination of cumulative values over the 2^d bracket
    // vertices; zero-weight vertices are skipped, so breakpoints reproduce
    // grid values exactly.
    const std::size_t d = brackets.size();
    std::array<int, kMaxDim> idx{};
    double acc = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        double w = 1.0;
        bool skip = false;
        for (std::size_t j = 0; j < d && !skip; ++j) {
            const bool upper = (mask >> j) & 1u;
            const double wj = upper ? brackets[j].weight : 1.0 - brackets[j].weight;
            if (wj == 0.0) {
                skip = true;
                break;
            }
            w *= wj;
            idx[j] = upper ? brackets[j].hi_index : brackets[j].lo_index;
        }
        if (skip)
            continue;
        bool zero = false;
        std::array<int, kMaxDim> at{};
        for (std::size_t j = 0; j < d; ++j) {
            if (idx[j] == -1) {
                zero = true;
                break;
            }
            at[j] = idx[j];
        }
        if (!zero)
            acc += w * cum_[pmf_.shape().offset(std::span<const int>(at.data(), d))];
    }
    return acc;
}

double CheckerboardCopula::cdf(std::span<const double> u) const {
    const std::size_t d = dim();
    if (u.size() != d)
        throw std::domain_error("checkerboard: point dimension mismatch");
    std::array<DiscreteMargin::Bracket, kMaxDim> br;
    for (std::size_t j = 0; j < d; ++j)
        br[j] = pmf_.margin(j).bracket(u[j]);
    return blend(std::span<const DiscreteMargin::Bracket>(br.data(), d));
}

double CheckerboardCopula::density(std::span<const double> u) const {
    const std::size_t d = dim();
    if (u.size() != d)
        throw std::domain_error("checkerboard: point dimension mismatch");
    std::array<int, kMaxDim> idx{};
    for (std::size_t j = 0; j < d; ++j) {
        if (!(u[j] > 0.0 && u[j] < 1.0))
            throw std::domain_error("checkerboard: density needs u in the open unit cube");
        idx[j] = pmf_.margin(j).quantile(u[j]);
    }
    return dens_[pmf_.shape().offset(std::span<const int>(idx.data(), d))];
}

double CheckerboardCopula::partial_derivative(std::size_t axis, std::span<const double> u) const {
    const std::size_t d = dim();
    if (u.size() != d)
        throw std::domain_error("checkerboard: point dimension mismatch");
    if (axis >= d)
        throw std::domain_error("checkerboard: axis out of range");

    const auto& m = pmf_.margin(axis);
    if (!(u[axis] > 0.0 && u[axis] < 1.0))
        throw std::domain_error("checkerboard: derivative needs an interior coordinate");
    const auto lam = m.lambda_weight(u[axis]);
    if (lam.lo == lam.hi)
        throw std::domain_error("checkerboard: derivative undefined at a breakpoint");

    const int k = m.quantile(u[axis]);
    const double width = m.cdf(k) - m.cdf(k - 1);

    std::array<DiscreteMargin::Bracket, kMaxDim> br;
    for (std::size_t j = 0; j < d; ++j)
        br[j] = pmf_.margin(j).bracket(u[j]);

    // Difference quotient across the axis cell, multilinear in the others.
    br[axis] = {1.0, k, k};
    const double upper = blend(std::span<const DiscreteMargin::Bracket>(br.data(), d));
    br[axis] = {1.0, k - 1, k - 1};
    const double lower = blend(std::span<const DiscreteMargin::Bracket>(br.data(), d));
    return (upper - lower) / width;
}

NdShape CheckerboardCopula::vertex_shape() const {
    std::vector<std::size_t> extents(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        extents[j] = pmf_.shape().extent(j) + 1;
    return NdShape(std::move(extents));
}

std::vector<double> CheckerboardCopula::subcopula_grid() const {
    const NdShape grid = vertex_shape();
    std::vector<double> values(grid.size());
    std::vector<int> gidx(dim(), 0);
    std::array<int, kMaxDim> at{};
    std::size_t flat = 0;
    do {
        bool zero = false;
        for (std::size_t j = 0; j < dim(); ++j) {
            at[j] = gidx[j] - 1;
            zero = zero || at[j] == -1;
        }
        values[flat++] =
            zero ? 0.0 : cum_[pmf_.shape().offset(std::span<const int>(at.data(), dim()))];
    } while (grid.next(gidx));
    return values;
}

double CheckerboardCopula::interpolate(std::span<const double> grid_values,
                                       std::span<const double> u) const {
    const std::size_t d = dim();
    if (u.size() != d)
        throw std::domain_error("checkerboard: point dimension mismatch");
    const NdShape grid = vertex_shape();
    if (grid_values.size() != grid.size())
        throw validation_error("checkerboard: vertex grid has wrong size");

    std::array<DiscreteMargin::Bracket, kMaxDim> br;
    for (std::size_t j = 0; j < d; ++j)
        br[j] = pmf_.margin(j).bracket(u[j]);

    std::array<int, kMaxDim> idx{};
    double acc = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        double w = 1.0;
        bool skip = false;
        for (std::size_t j = 0; j < d; ++j) {
            const bool upper = (mask >> j) & 1u;
            const double wj = upper ? br[j].weight : 1.0 - br[j].weight;
            if (wj == 0.0) {
                skip = true;
                break;
            }
            w *= wj;
            idx[j] = (upper ? br[j].hi_index : br[j].lo_index) + 1;
        }
        if (!skip)
            acc += w * grid_values[grid.offset(std::span<const int>(idx.data(), d))];
    }
    return acc;
}

namespace {

// Sweep all positive-volume cells, adding the tensor order-2 Gauss value of
// f over each.  Exact for integrands of degree <= 3 in each coordinate,
// which covers everything below (the cdf and Pi are degree 1 per axis on a
// cell, their difference squared degree 2).
template <typename F>
double integrate_cells(const CheckerboardCopula& c, const F& f) {
    const std::size_t d = c.dim();
    const NdShape& shape = c.pmf().shape();
    std::vector<int> idx(d, 0);
    std::array<double, CheckerboardCopula::kMaxDim> mid{}, half{};
    std::array<double, CheckerboardCopula::kMaxDim> u{};
    Accumulator acc;
    do {
        double scale = 1.0;
        bool flat_cell = false;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& m = c.pmf().margin(j);
            const double a = m.cdf(idx[j] - 1);
            const double b = m.cdf(idx[j]);
            if (a == b) {
                flat_cell = true;
                break;
            }
            mid[j] = 0.5 * (a + b);
            half[j] = 0.5 * (b - a);
            scale *= half[j];
        }
        if (flat_cell)
            continue;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            for (std::size_t j = 0; j < d; ++j)
                u[j] = mid[j] + ((mask >> j) & 1u ? kGaussNode : -kGaussNode) * half[j];
            acc.add(scale * f(idx, std::span<const double>(u.data(), d)));
        }
    } while (shape.next(idx));
    return acc.value();
}

} // namespace

double CheckerboardCopula::population_tau() const {
    if (dim() != 2)
        throw std::domain_error("checkerboard: population_tau needs dimension 2");
    const double integral = integrate_cells(*this, [this](const std::vector<int>& idx,
                                                          std::span<const double> u) {
        const double den = dens_[pmf_.shape().offset(idx)];
        return den > 0.0 ? den * cdf(u) : 0.0;
    });
    return 4.0 * integral - 1.0;
}

double CheckerboardCopula::population_rho() const {
    const std::size_t d = dim();
    const double pow2 = std::ldexp(1.0, static_cast<int>(d));
    const double scale = pow2 * (d + 1.0) / (pow2 - (d + 1.0));
    const double integral =
        integrate_cells(*this, [this](const std::vector<int>&, std::span<const double> u) {
            double pi = 1.0;
            for (const double t : u) pi *= t;
            return cdf(u) - pi;
        });
    return scale * integral;
}

double CheckerboardCopula::independence_gap() const {
    return integrate_cells(*this, [this](const std::vector<int>&, std::span<const double> u) {
        double pi = 1.0;
        for (const double t : u) pi *= t;
        const double diff = cdf(u) - pi;
        return diff * diff;
    });
}

} // namespace cbcop
