#pragma once

#include <string>
#include <vector>

namespace lrb {

// Belief update after an acknowledged session propagates the one-step
// transition row by default; k_step substitutes the session-length power of
// the transition matrix instead.
enum class FeedbackPropagation { one_step, k_step };

// exact evaluates the k-step idle update; stationary pins it to the chain's
// stationary split (the large-k approximation).
enum class IdleUpdate { exact, stationary };

// One two-state arm: session-level transition/observation/reward parameters.
// State 0 is the state whose belief is tracked; `k` is the number of hidden
// one-step transitions elapsing per decision session.
struct ArmParams {
    double p00 = 0.5; // P(state 0 -> state 0) in one step
    double p10 = 0.5; // P(state 1 -> state 0) in one step
    double rho0 = 0.0; // P(ACK | played, session started in state 0)
    double rho1 = 1.0; // P(ACK | played, session started in state 1)
    double r0 = 0.0;   // mean session reward when starting in state 0
    double r1 = 1.0;   // mean session reward when starting in state 1
    int k = 1;         // state transitions per session

    FeedbackPropagation feedback_propagation = FeedbackPropagation::one_step;
    IdleUpdate idle_update = IdleUpdate::exact;

    bool positively_correlated() const { return p00 > p10; }
    bool negatively_correlated() const { return p00 < p10; }

    double reward(int state) const { return state == 0 ? r0 : r1; }
    double ack_prob(int state) const { return state == 0 ? rho0 : rho1; }

    // Appends a message per violated invariant; returns true when clean.
    bool validate(std::vector<std::string>& problems, const std::string& label) const;
    void require_valid(const std::string& label = "arm") const;
};

// (0,0) and (1,0) entries of the k-step transition matrix.
void k_step_entries(const ArmParams& arm, double& p00_k, double& p10_k);

// Posterior P(state 0 at next session start) given the arm was played and the
// session was acknowledged. Errors when an ACK has probability zero under pi.
double belief_after_ack(double pi, const ArmParams& arm);

// Same for a NACK.
double belief_after_nack(double pi, const ArmParams& arm);

// Belief after an idle session: k transitions with no observation.
double belief_after_idle(double pi, const ArmParams& arm);

// Stationary probability of state 0. Errors for the frozen chain
// (p00 = 1, p10 = 0), which has no unique stationary split.
double stationary_belief(const ArmParams& arm);

// Mean session reward at belief pi: pi*r0 + (1-pi)*r1.
double expected_reward(double pi, const ArmParams& arm);

// ACK probability at belief pi: pi*rho0 + (1-pi)*rho1.
double success_prob(double pi, const ArmParams& arm);

} // namespace lrb
