#pragma once

#include <cstddef>
#include <vector>

namespace lrb {

// Uniform belief grid {0, delta, 2*delta, ..., 1} with nearest-neighbour
// rounding. Ties round to the lower point.
class BeliefGrid {
public:
    // delta must divide 1 and satisfy 0 < delta <= 0.1.
    explicit BeliefGrid(double delta);

    double delta() const { return delta_; }
    std::size_t size() const { return points_.size(); }
    double point(std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }

    // Index of the grid point nearest to x (x clamped to [0,1]).
    std::size_t nearest(double x) const;
    double snap(double x) const { return points_[nearest(x)]; }

    bool operator==(const BeliefGrid& other) const {
        return delta_ == other.delta_ && points_.size() == other.points_.size();
    }

private:
    double delta_;
    std::vector<double> points_;
};

} // namespace lrb
