#pragma once

#include <cstddef>
#include <vector>

#include "core/arm.hpp"
#include "core/grid.hpp"

namespace lrb {

// Stage rewards of the subsidised/penalised single-arm problem:
//   play reward  r1(pi) = expected_reward(pi) + play_shift
//   idle reward  r0(pi) = idle
// The subsidy form uses {0, eta}; the Lagrangian penalty form uses {-lambda, 0}.
struct StageRewards {
    double play_shift = 0.0;
    double idle = 0.0;
};

struct GsvaOptions {
    double tol = 1e-4;        // sweep-to-sweep L1 stopping threshold
    long max_sweeps = 100000; // non-convergence guard
    bool gauss_seidel = true; // false forces plain Jacobi sweeps (debugging)
};

// Default L1 tolerance used when a caller does not pin one.
inline double default_gsva_tol(double beta) { return 1e-6 / (1.0 - beta); }

// Grid-point successors and weights of the session dynamics, shared by every
// grid recursion. Successor index is npos when the observation has zero
// probability at that point and the branch must be skipped.
struct GridDynamics {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<double> play_reward; // expected_reward at each grid point
    std::vector<double> ack_prob;    // success_prob at each grid point
    std::vector<std::size_t> ack_to;
    std::vector<std::size_t> nack_to;
    std::vector<std::size_t> idle_to;
};

GridDynamics compile_dynamics(const ArmParams& arm, const BeliefGrid& grid);

// Converged action values of the subsidised single-arm dynamic program,
// tabulated on the grid. v[i] == max(v_s[i], v_ns[i]) at every point.
struct ValueGrid {
    BeliefGrid grid;
    StageRewards stage;
    double beta = 0.0;
    std::vector<double> v_s;
    std::vector<double> v_ns;
    std::vector<double> v;
    long sweeps = 0;

    double eta() const { return stage.idle; }
};

// Gauss-Seidel value approximation: in-place increasing-belief sweeps, so
// successors that land on already-visited points use values updated this
// sweep. Stops when the L1 sweep-to-sweep change drops to opt.tol; errors
// with the last residual if opt.max_sweeps is exhausted. `warm` seeds the
// iteration with a previous solution of matching size.
ValueGrid gsva(const ArmParams& arm, StageRewards stage, double beta, const BeliefGrid& grid,
               const GsvaOptions& opt, const std::vector<double>* warm = nullptr);

// Subsidy-form convenience wrapper.
inline ValueGrid gsva(const ArmParams& arm, double eta, double beta, const BeliefGrid& grid,
                      const GsvaOptions& opt, const std::vector<double>* warm = nullptr) {
    return gsva(arm, StageRewards{0.0, eta}, beta, grid, opt, warm);
}

// Finite-horizon values V_{S,t}, V_{NS,t}, V_t for t = 1..horizon, built by
// synchronous (Jacobi) sweeps from V_{S,1} = expected reward, V_{NS,1} = eta.
std::vector<ValueGrid> finite_horizon_values(const ArmParams& arm, double eta, double beta,
                                             const BeliefGrid& grid, long horizon);

enum class ThresholdKind { interior, always_play, never_play };

// Belief threshold of a play/not-play switch: play is optimal at grid points
// below pi_t, idling at and above it.
struct Threshold {
    ThresholdKind kind = ThresholdKind::interior;
    double pi_t = 0.0; // meaningful for interior and never_play
};

// Smallest grid point where idling is optimal up to tie_tol. Verifies the
// single-crossing structure and errors (naming the offending points) when the
// sign of v_s - v_ns flips more than once beyond tie_tol.
Threshold extract_threshold(const ValueGrid& vg, double tie_tol);

struct IndexabilitySweep {
    std::vector<double> etas;
    std::vector<Threshold> thresholds;
    bool monotone = true;                 // thresholds nonincreasing in eta
    std::vector<std::size_t> violations;  // positions j with t[j] above t[j-1]
};

// Thresholds across an increasing subsidy ladder that spans the reward range,
// with the monotonicity verdict. always_play counts as above 1, never_play as
// below 0.
IndexabilitySweep indexability_sweep(const ArmParams& arm, double beta, const BeliefGrid& grid,
                                     const GsvaOptions& opt, const std::vector<double>& etas,
                                     double tie_tol);

} // namespace lrb
