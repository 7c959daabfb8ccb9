#pragma once

// The multilinear (checkerboard) copula of a joint pmf on a finite grid.
//
// The cdf takes the value of the cumulative pmf at every grid point
// (F_1(k_1), ..., F_d(k_d)) and is multilinear in between; equivalently it
// spreads each cell's mass uniformly over the corresponding box of the unit
// cube.  It is the unique copula of the pmf's continued-from-below extension
// and the one this library estimates, tests and integrates against.

#include <cstddef>
#include <span>
#include <vector>

#include "cbcop/joint_pmf.hpp"

namespace cbcop {

class CheckerboardCopula {
public:
    static constexpr std::size_t kMaxDim = 16;

    static CheckerboardCopula build(JointPmf pmf);

    std::size_t dim() const { return pmf_.dim(); }
    const JointPmf& pmf() const { return pmf_; }

    // Copula cdf at u in [0,1]^d.
    double cdf(std::span<const double> u) const;

    // Piecewise-constant density at u in (0,1)^d: cell mass over cell
    // volume, 0 on zero-width cells.
    double density(std::span<const double> u) const;

    // d/du_axis of the cdf.  Defined for u in [0,1]^d whose axis coordinate
    // is strictly between two distinct breakpoints; throws std::domain_error
    // at breakpoints, where the derivative may jump.
    double partial_derivative(std::size_t axis, std::span<const double> u) const;

    // Cumulative pmf H at atom indices in {-1, 0, ..., K_j}; index -1 on any
    // axis gives 0.
    double cumulative(std::span<const int> idx) const;

    // Per-cell density by atom index.
    double cell_density(std::span<const int> idx) const;

    // All cumulative values on the vertex grid including the zero face:
    // axis j has extent K_j + 2, entry g standing for atom index g - 1.
    std::vector<double> subcopula_grid() const;
    NdShape vertex_shape() const;

    // Multilinear extension of per-vertex values laid out like
    // subcopula_grid().  Applying this to the cdf's own grid reproduces the
    // cdf: the copula is the fixed point of its interpolation operator.
    double interpolate(std::span<const double> grid_values, std::span<const double> u) const;

    // Population functionals, integrated cell by cell with a tensor
    // Gauss rule that is exact for the piecewise-multilinear integrands.
    double population_tau() const;   // 4 int C dC - 1, dim 2 only
    double population_rho() const;   // scaled int (C - Pi) over the cube
    double independence_gap() const; // int (C - Pi)^2 over the cube

private:
    explicit CheckerboardCopula(JointPmf pmf);

    double blend(std::span<const DiscreteMargin::Bracket> brackets) const;

    JointPmf pmf_;
    std::vector<double> cum_;  // cumulative pmf, same layout as cells
    std::vector<double> dens_; // per-cell density, same layout
};

} // namespace cbcop
