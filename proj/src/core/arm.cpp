#include "core/arm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace lrb {

namespace {

bool is_prob(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

int sign_of(double d) { return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0); }

double signed_pow(double base, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

// Effective one-step row entries used by the post-feedback updates.
void feedback_entries(const ArmParams& arm, double& a00, double& a10) {
    if (arm.feedback_propagation == FeedbackPropagation::k_step) {
        k_step_entries(arm, a00, a10);
    } else {
        a00 = arm.p00;
        a10 = arm.p10;
    }
}

} // namespace

bool ArmParams::validate(std::vector<std::string>& problems, const std::string& label) const {
    std::size_t before = problems.size();
    auto bad = [&](const std::string& field, const std::string& why) {
        problems.push_back(label + "." + field + ": " + why);
    };
    if (!is_prob(p00)) bad("p00", "must be a probability in [0,1]");
    if (!is_prob(p10)) bad("p10", "must be a probability in [0,1]");
    if (!is_prob(rho0)) bad("rho0", "must be a probability in [0,1]");
    if (!is_prob(rho1)) bad("rho1", "must be a probability in [0,1]");
    if (!std::isfinite(r0) || r0 < 0.0) bad("r0", "must be a finite reward >= 0");
    if (!std::isfinite(r1) || r1 < 0.0) bad("r1", "must be a finite reward >= 0");
    if (k < 1) bad("k", "must be a positive integer");
    if (is_prob(rho0) && is_prob(rho1) && std::isfinite(r0) && std::isfinite(r1) &&
        sign_of(r0 - r1) != sign_of(rho0 - rho1)) {
        bad("r0/r1", "reward ordering must match success-probability ordering");
    }
    return problems.size() == before;
}

void ArmParams::require_valid(const std::string& label) const {
    std::vector<std::string> problems;
    if (!validate(problems, label)) {
        std::ostringstream os;
        for (std::size_t i = 0; i < problems.size(); ++i) os << (i ? "; " : "") << problems[i];
        fail(ErrorCode::invalid_argument, os.str());
    }
}

void k_step_entries(const ArmParams& arm, double& p00_k, double& p10_k) {
    double r = arm.p00 - arm.p10;
    if (r == 1.0) { // frozen chain
        p00_k = 1.0;
        p10_k = 0.0;
        return;
    }
    double q = arm.p10 / (1.0 - r);
    double t = signed_pow(r, arm.k);
    p00_k = clamp01(t + (1.0 - t) * q);
    p10_k = clamp01((1.0 - t) * q);
}

double belief_after_ack(double pi, const ArmParams& arm) {
    double den = arm.rho1 * (1.0 - pi) + arm.rho0 * pi;
    if (den <= 0.0)
        fail(ErrorCode::impossible_observation, "ACK has probability zero under the current belief");
    double a00 = 0.0, a10 = 0.0;
    feedback_entries(arm, a00, a10);
    double num = (1.0 - pi) * arm.rho1 * a10 + pi * arm.rho0 * a00;
    return clamp01(num / den);
}

double belief_after_nack(double pi, const ArmParams& arm) {
    double den = (1.0 - arm.rho1) * (1.0 - pi) + (1.0 - arm.rho0) * pi;
    if (den <= 0.0)
        fail(ErrorCode::impossible_observation, "NACK has probability zero under the current belief");
    double a00 = 0.0, a10 = 0.0;
    feedback_entries(arm, a00, a10);
    double num = (1.0 - pi) * (1.0 - arm.rho1) * a10 + pi * (1.0 - arm.rho0) * a00;
    return clamp01(num / den);
}

double belief_after_idle(double pi, const ArmParams& arm) {
    if (arm.idle_update == IdleUpdate::stationary) return stationary_belief(arm);
    double r = arm.p00 - arm.p10;
    if (r == 1.0) return clamp01(pi); // frozen chain: belief is unchanged
    double q = arm.p10 / (1.0 - r);
    double t = signed_pow(r, arm.k);
    return clamp01(t * pi + (1.0 - t) * q);
}

double stationary_belief(const ArmParams& arm) {
    double r = arm.p00 - arm.p10;
    if (r == 1.0)
        fail(ErrorCode::no_stationary_belief,
             "chain with p00=1, p10=0 is reducible: no unique stationary belief");
    return clamp01(arm.p10 / (1.0 - r));
}

double expected_reward(double pi, const ArmParams& arm) {
    return pi * arm.r0 + (1.0 - pi) * arm.r1;
}

double success_prob(double pi, const ArmParams& arm) {
    return pi * arm.rho0 + (1.0 - pi) * arm.rho1;
}

} // namespace lrb
