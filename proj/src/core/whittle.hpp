#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/arm.hpp"
#include "core/grid.hpp"
#include "core/value_engine.hpp"

namespace lrb {

// Belief intervals of a positively correlated arm, split by the post-ACK
// anchor (p10), the stationary split (q) and the post-NACK anchor (p00).
// A boundary point belongs to the interval on its right.
enum class Region {
    below_ack_anchor,         // [0, p10)
    ack_anchor_to_stationary, // [p10, q)
    stationary_to_nack_anchor,// [q, p00)
    above_nack_anchor,        // [p00, 1]
};

Region classify_region(double pi, const ArmParams& arm);

// Closed-form index for arms with perfectly revealing feedback
// (rho0 = 0, rho1 = 1, p00 > p10); exact for any session length.
double index_exact_feedback(double pi, const ArmParams& arm, double beta);

// Closed-form index under the stationary idle approximation
// (r0 = rho0 = 0, 0 < r1 = rho1 < 1, p00 > p10, idle update pinned at q).
// Returns nullopt on the intervals with no closed form; callers fall back to
// the numeric method there.
std::optional<double> index_stationary_approx(double pi, const ArmParams& arm, double beta);

struct WhittleNumericOptions {
    double eta0 = std::numeric_limits<double>::quiet_NaN();  // NaN: myopic reward at pi
    double alpha = std::numeric_limits<double>::quiet_NaN(); // NaN: 0.05 * reward span
    double tol = 1e-3;       // stop when |v_s - v_ns| at pi drops below this
    long max_iters = 10000;
    GsvaOptions gsva;
};

// Two-timescale subsidy search: the fast timescale solves the subsidised
// dynamic program to convergence, the slow one moves the subsidy by
// alpha * (v_s - v_ns) at pi until the two action values tie. `warm_values`
// optionally carries the converged value table between calls.
double index_numeric(double pi, const ArmParams& arm, double beta, const BeliefGrid& grid,
                     const WhittleNumericOptions& opt, std::vector<double>* warm_values = nullptr);

enum class IndexMethod { closed_case1, closed_case2, numeric };
const char* to_string(IndexMethod m);

struct IndexTable {
    BeliefGrid grid;
    std::vector<double> w;
    std::vector<IndexMethod> method;
};

// Index at every grid point, dispatching per point: exact-feedback closed
// forms when that precondition holds, stationary-approximation closed forms
// where they apply (requires the idle update to be at or near its stationary
// limit), the numeric search otherwise.
IndexTable build_index_table(const ArmParams& arm, double beta, const BeliefGrid& grid,
                             const WhittleNumericOptions& opt);

struct MwiTable {
    BeliefGrid grid;
    long horizon = 0;
    std::vector<double> m;
};

// Finite-horizon index proxy: difference of the horizon-T action values
// under zero subsidy.
MwiTable modified_whittle(const ArmParams& arm, double beta, const BeliefGrid& grid, long horizon);

} // namespace lrb
