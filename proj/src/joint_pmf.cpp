#include "cbcop/joint_pmf.hpp"

#include <cmath>
#include <stdexcept>

#include "cbcop/errors.hpp"

namespace cbcop {

NdShape::NdShape(std::vector<std::size_t> extents) : extents_(std::move(extents)) {
    if (extents_.empty())
        throw validation_error("shape: need at least one axis");
    strides_.resize(extents_.size());
    size_ = 1;
    for (std::size_t axis = extents_.size(); axis-- > 0;) {
        if (extents_[axis] == 0)
            throw validation_error("shape: zero extent");
        strides_[axis] = size_;
        size_ *= extents_[axis];
    }
}

std::size_t NdShape::offset(std::span<const int> idx) const {
    std::size_t off = 0;
    for (std::size_t axis = 0; axis < extents_.size(); ++axis)
        off += static_cast<std::size_t>(idx[axis]) * strides_[axis];
    return off;
}

bool NdShape::next(std::vector<int>& idx) const {
    for (std::size_t axis = extents_.size(); axis-- > 0;) {
        if (++idx[axis] < static_cast<int>(extents_[axis]))
            return true;
        idx[axis] = 0;
    }
    return false;
}

namespace {

void check_cells(const std::vector<double>& cells, std::size_t expected) {
    if (cells.size() != expected)
        throw validation_error("joint pmf: cell count does not match margin sizes");
    for (const double c : cells)
        if (!(c >= 0.0))
            throw validation_error("joint pmf: cells must be non-negative");
}

// Sum of cells over all axes but `axis`, accumulated in row-major order so
// the result is reproducible.
std::vector<double> axis_sums(const NdShape& shape, const std::vector<double>& cells,
                              std::size_t axis) {
    std::vector<double> sums(shape.extent(axis), 0.0);
    std::vector<int> idx(shape.dim(), 0);
    std::size_t flat = 0;
    do {
        sums[static_cast<std::size_t>(idx[axis])] += cells[flat++];
    } while (shape.next(idx));
    return sums;
}

} // namespace

JointPmf::JointPmf(std::vector<DiscreteMargin> margins, std::vector<double> cells) {
    if (margins.size() < 2)
        throw validation_error("joint pmf: need at least two margins");
    std::vector<std::size_t> extents(margins.size());
    for (std::size_t j = 0; j < margins.size(); ++j)
        extents[j] = margins[j].size();
    shape_ = NdShape(std::move(extents));
    check_cells(cells, shape_.size());
    for (std::size_t j = 0; j < margins.size(); ++j) {
        const auto sums = axis_sums(shape_, cells, j);
        for (std::size_t k = 0; k < sums.size(); ++k)
            if (std::fabs(sums[k] - margins[j].prob(static_cast<int>(k))) > 1e-12)
                throw validation_error("joint pmf: axis sums do not reproduce the margins");
    }
    margins_ = std::move(margins);
    cells_ = std::move(cells);
}

JointPmf JointPmf::from_cells(std::vector<std::size_t> extents, std::vector<double> cells) {
    NdShape shape(std::move(extents));
    if (shape.dim() < 2)
        throw validation_error("joint pmf: need at least two axes");
    check_cells(cells, shape.size());
    double total = 0.0;
    for (const double c : cells) total += c;
    if (std::fabs(total - 1.0) > 1e-12)
        throw validation_error("joint pmf: cells must sum to 1");

    JointPmf pmf;
    pmf.shape_ = shape;
    pmf.margins_.reserve(shape.dim());
    for (std::size_t j = 0; j < shape.dim(); ++j)
        pmf.margins_.push_back(DiscreteMargin::from_pmf(axis_sums(shape, cells, j)));
    pmf.cells_ = std::move(cells);
    return pmf;
}

} // namespace cbcop
