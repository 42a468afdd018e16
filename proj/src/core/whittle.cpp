#include "core/whittle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace lrb {

namespace {

constexpr long kIdleIterationCap = 10000;

// Feedback-anchor entries: the one-step row by default, the k-step row when
// the arm propagates feedback over the whole session.
void anchors(const ArmParams& arm, double& a00, double& a10) {
    if (arm.feedback_propagation == FeedbackPropagation::k_step) {
        k_step_entries(arm, a00, a10);
    } else {
        a00 = arm.p00;
        a10 = arm.p10;
    }
}

bool exact_feedback_arm(const ArmParams& arm) {
    return arm.rho0 == 0.0 && arm.rho1 == 1.0 && arm.p00 > arm.p10;
}

bool stationary_approx_arm(const ArmParams& arm) {
    return arm.r0 == 0.0 && arm.rho0 == 0.0 && arm.r1 == arm.rho1 && arm.rho1 > 0.0 &&
           arm.rho1 < 1.0 && arm.p00 > arm.p10;
}

// Index on [p10, q): geometric-resumption form with
// a = R(p10)/(1-beta(1-p10)), b = beta*p10/(1-beta(1-p10)).
double exact_feedback_mid(double pi, const ArmParams& arm, double beta, double a10) {
    double den0 = 1.0 - beta * (1.0 - a10);
    double a = expected_reward(a10, arm) / den0;
    double b = beta * a10 / den0;
    return (1.0 - beta) * (expected_reward(pi, arm) + beta * (1.0 - pi) * a) /
           (1.0 - beta * (pi + (1.0 - pi) * b));
}

} // namespace

Region classify_region(double pi, const ArmParams& arm) {
    double a00 = 0.0, a10 = 0.0;
    anchors(arm, a00, a10);
    if (!(a00 > a10))
        fail(ErrorCode::invalid_argument,
             "belief regions are defined for positively correlated arms only; "
             "use the numeric index method");
    double q = stationary_belief(arm);
    if (pi < a10) return Region::below_ack_anchor;
    if (pi < q) return Region::ack_anchor_to_stationary;
    if (pi < a00) return Region::stationary_to_nack_anchor;
    return Region::above_nack_anchor;
}

double index_exact_feedback(double pi, const ArmParams& arm, double beta) {
    if (!exact_feedback_arm(arm))
        fail(ErrorCode::invalid_argument,
             "closed-form index requires rho0=0, rho1=1 and p00 > p10");
    arm.require_valid();
    double a00 = 0.0, a10 = 0.0;
    anchors(arm, a00, a10);
    double q = stationary_belief(arm);

    switch (classify_region(pi, arm)) {
        case Region::below_ack_anchor:
            return expected_reward(pi, arm);
        case Region::ack_anchor_to_stationary:
            return exact_feedback_mid(pi, arm, beta, a10);
        case Region::stationary_to_nack_anchor: {
            // At pi = q the idle orbit from p00 never crosses pi; the index is
            // the continuity limit, which is the mid-interval form at q.
            if (pi <= q + 1e-12) return exact_feedback_mid(pi, arm, beta, a10);
            long t = 0;
            double g2 = a00;
            while (t < kIdleIterationCap) {
                g2 = belief_after_idle(g2, arm);
                ++t;
                if (g2 <= pi) break;
            }
            if (g2 > pi)
                fail(ErrorCode::non_convergence,
                     "idle orbit failed to cross the target belief within the iteration cap");
            double den0 = 1.0 - beta * (1.0 - a10);
            double a = expected_reward(a10, arm) / den0;
            double b = beta * a10 / den0;
            double bt = std::pow(beta, static_cast<double>(t));
            double den1 = 1.0 - bt * beta * g2;
            double a1 = bt * expected_reward(g2, arm) / den1;
            double b1 = bt * beta * (1.0 - g2) / den1;
            double f = (1.0 - bt) / ((1.0 - beta) * den1);
            double c = f / (1.0 - b * b1);
            double d = (a1 + b1 * a) / (1.0 - b * b1);
            auto B = [&](double x) { return beta * c * (x * (1.0 - b) + b); };
            auto D = [&](double x) {
                return expected_reward(x, arm) + beta * ((1.0 - x) * (a + b * d) + x * d);
            };
            double g2pi = belief_after_idle(pi, arm);
            return (D(pi) - beta * D(g2pi)) / (1.0 + beta * B(g2pi) - B(pi));
        }
        case Region::above_nack_anchor: {
            double m = (arm.r0 - arm.r1) / (1.0 - beta * (a00 - a10));
            double c1 = (arm.r1 + m * beta * a10) / (1.0 - beta);
            return m * pi + c1 - beta * (m * belief_after_idle(pi, arm) + c1);
        }
    }
    fail(ErrorCode::invalid_argument, "unreachable region");
}

std::optional<double> index_stationary_approx(double pi, const ArmParams& arm, double beta) {
    if (!stationary_approx_arm(arm))
        fail(ErrorCode::invalid_argument,
             "stationary-approximation index requires r0=rho0=0, 0<r1=rho1<1 and p00 > p10");
    arm.require_valid();
    double a00 = 0.0, a10 = 0.0;
    anchors(arm, a00, a10);

    switch (classify_region(pi, arm)) {
        case Region::below_ack_anchor:
            return success_prob(pi, arm);
        case Region::ack_anchor_to_stationary: {
            double rho_pi = success_prob(pi, arm);
            double rho_low = success_prob(a10, arm);
            double g = belief_after_nack(a10, arm);
            if (g >= pi) return rho_pi / (1.0 - beta * (rho_low - rho_pi));
            if (belief_after_nack(g, arm) >= pi) {
                double c1 = 1.0 - beta * (rho_low - rho_pi) -
                            beta * beta * (success_prob(g, arm) - rho_pi) +
                            beta * beta * success_prob(g, arm) * rho_low;
                return rho_pi / c1;
            }
            return std::nullopt; // no printed form past two NACK steps
        }
        case Region::stationary_to_nack_anchor:
            return std::nullopt; // numeric-only interval
        case Region::above_nack_anchor: {
            double shrink = 1.0 - beta * (a00 - a10);
            double m = -arm.rho1 / shrink;
            double c = (arm.rho1 + m * beta * a10) / (1.0 - beta);
            return m * pi * shrink + (1.0 - beta) * c - beta * a10 * m;
        }
    }
    return std::nullopt;
}

double index_numeric(double pi, const ArmParams& arm, double beta, const BeliefGrid& grid,
                     const WhittleNumericOptions& opt, std::vector<double>* warm_values) {
    arm.require_valid();
    std::size_t at = grid.nearest(pi);
    double span = std::abs(arm.r1 - arm.r0);
    double alpha = std::isnan(opt.alpha)
                       ? 0.05 * (span > 0.0 ? span : std::max(1.0, std::max(arm.r0, arm.r1)))
                       : opt.alpha;
    if (!(alpha > 0.0)) fail(ErrorCode::invalid_argument, "step size must be positive");
    double eta = std::isnan(opt.eta0) ? expected_reward(grid.point(at), arm) : opt.eta0;

    double scale = std::max(1.0, std::max(arm.r0, arm.r1));
    double lo = std::min(0.0, std::min(arm.r0, arm.r1)) - 5.0 * scale;
    double hi = std::max(arm.r0, arm.r1) + 5.0 * scale;

    std::vector<double> local;
    std::vector<double>* warm = warm_values ? warm_values : &local;
    double gap = 0.0;
    for (long t = 0; t < opt.max_iters; ++t) {
        ValueGrid vg = gsva(arm, eta, beta, grid, opt.gsva, warm->empty() ? nullptr : warm);
        *warm = vg.v;
        gap = vg.v_s[at] - vg.v_ns[at];
        if (std::abs(gap) <= opt.tol) return eta;
        eta += alpha * gap;
        if (eta < lo || eta > hi) {
            std::ostringstream os;
            os << "subsidy search diverged at pi=" << grid.point(at) << " (eta=" << eta << ")";
            fail(ErrorCode::non_convergence, os.str());
        }
    }
    std::ostringstream os;
    os << "subsidy search hit the iteration cap at pi=" << grid.point(at) << " (eta=" << eta
       << ", residual gap " << gap << ")";
    fail(ErrorCode::non_convergence, os.str());
}

const char* to_string(IndexMethod m) {
    switch (m) {
        case IndexMethod::closed_case1: return "closed_case1";
        case IndexMethod::closed_case2: return "closed_case2";
        default: return "numeric";
    }
}

IndexTable build_index_table(const ArmParams& arm, double beta, const BeliefGrid& grid,
                             const WhittleNumericOptions& opt) {
    arm.require_valid();
    std::size_t n = grid.size();
    IndexTable table;
    table.grid = grid;
    table.w.assign(n, 0.0);
    table.method.assign(n, IndexMethod::numeric);

    bool exact_fb = exact_feedback_arm(arm);
    double r = arm.p00 - arm.p10;
    bool idle_near_stationary = arm.idle_update == IdleUpdate::stationary ||
                                std::pow(std::abs(r), arm.k) <= 0.02;
    bool stat_form = stationary_approx_arm(arm) && idle_near_stationary;

    std::vector<std::size_t> numeric_points;
    for (std::size_t i = 0; i < n; ++i) {
        double pi = grid.point(i);
        if (exact_fb) {
            table.w[i] = index_exact_feedback(pi, arm, beta);
            table.method[i] = IndexMethod::closed_case1;
        } else if (stat_form) {
            if (auto w = index_stationary_approx(pi, arm, beta)) {
                table.w[i] = *w;
                table.method[i] = IndexMethod::closed_case2;
            } else {
                numeric_points.push_back(i);
            }
        } else {
            numeric_points.push_back(i);
        }
    }

    if (!numeric_points.empty()) {
        // Fixed block count keeps results independent of the thread cap; a
        // block chains warm starts point to point.
        std::size_t blocks = std::min<std::size_t>(8, numeric_points.size());
        std::size_t per = (numeric_points.size() + blocks - 1) / blocks;
        parallel_for(blocks, [&](std::size_t blk) {
            std::size_t begin = blk * per;
            std::size_t end = std::min(numeric_points.size(), begin + per);
            std::vector<double> warm;
            WhittleNumericOptions local = opt;
            for (std::size_t j = begin; j < end; ++j) {
                std::size_t i = numeric_points[j];
                table.w[i] = index_numeric(grid.point(i), arm, beta, grid, local, &warm);
                local.eta0 = table.w[i];
            }
        });
    }
    return table;
}

MwiTable modified_whittle(const ArmParams& arm, double beta, const BeliefGrid& grid, long horizon) {
    if (horizon < 1) fail(ErrorCode::invalid_argument, "horizon must be >= 1");
    std::vector<ValueGrid> seq = finite_horizon_values(arm, 0.0, beta, grid, horizon);
    const ValueGrid& last = seq.back();
    MwiTable table;
    table.grid = grid;
    table.horizon = horizon;
    table.m.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) table.m[i] = last.v_s[i] - last.v_ns[i];
    return table;
}

} // namespace lrb
