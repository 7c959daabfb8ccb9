#pragma once

// Dense d-dimensional joint pmf over the product of d discrete margins,
// stored row-major (last axis fastest), plus the small shape/odometer
// helper shared by the grid code.

#include <cstddef>
#include <span>
#include <vector>

#include "cbcop/margin.hpp"

namespace cbcop {

// Row-major extents/strides for a dense d-dimensional array.
class NdShape {
public:
    NdShape() = default;
    explicit NdShape(std::vector<std::size_t> extents);

    std::size_t dim() const { return extents_.size(); }
    std::size_t size() const { return size_; }
    std::size_t extent(std::size_t axis) const { return extents_[axis]; }
    const std::vector<std::size_t>& extents() const { return extents_; }

    std::size_t offset(std::span<const int> idx) const;

    // Row-major odometer step; returns false after the last index.
    bool next(std::vector<int>& idx) const;

private:
    std::vector<std::size_t> extents_, strides_;
    std::size_t size_ = 0;
};

class JointPmf {
public:
    // cells: row-major, length = product of margin sizes.  Cell mass must be
    // non-negative and each axis sum must reproduce the corresponding
    // margin's pmf within 1e-12.
    JointPmf(std::vector<DiscreteMargin> margins, std::vector<double> cells);

    // Derive the margins as axis sums of the cells (default integer
    // supports).  cells must be non-negative and sum to 1 within 1e-12.
    static JointPmf from_cells(std::vector<std::size_t> extents, std::vector<double> cells);

    std::size_t dim() const { return margins_.size(); }
    const NdShape& shape() const { return shape_; }
    const DiscreteMargin& margin(std::size_t axis) const { return margins_[axis]; }
    const std::vector<double>& cells() const { return cells_; }
    double cell(std::span<const int> idx) const { return cells_[shape_.offset(idx)]; }

private:
    JointPmf() = default;

    std::vector<DiscreteMargin> margins_;
    std::vector<double> cells_;
    NdShape shape_;
};

} // namespace cbcop
