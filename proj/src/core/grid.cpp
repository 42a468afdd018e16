#include "core/grid.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace lrb {

BeliefGrid::BeliefGrid(double delta) : delta_(delta) {
    if (!(delta > 0.0) || delta > 0.1)
        fail(ErrorCode::invalid_argument, "grid delta must satisfy 0 < delta <= 0.1");
    double cells_f = 1.0 / delta;
    auto cells = static_cast<std::size_t>(std::llround(cells_f));
    if (cells < 10 || std::abs(cells_f - static_cast<double>(cells)) > 1e-9)
        fail(ErrorCode::invalid_argument, "grid delta must divide 1 exactly");
    points_.resize(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) points_[i] = static_cast<double>(i) * delta;
    points_[cells] = 1.0;
}

std::size_t BeliefGrid::nearest(double x) const {
    if (!(x > 0.0)) return 0;
    std::size_t last = points_.size() - 1;
    if (x >= 1.0) return last;
    double r = x / delta_;
    auto lo = static_cast<std::size_t>(r);
    if (lo >= last) return last;
    // strictly-greater keeps midpoints on the lower grid point
    return (r - static_cast<double>(lo) > 0.5) ? lo + 1 : lo;
}

} // namespace lrb
