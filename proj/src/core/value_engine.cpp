#include "core/value_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace lrb {

GridDynamics compile_dynamics(const ArmParams& arm, const BeliefGrid& grid) {
    std::size_t n = grid.size();
    GridDynamics dyn;
    dyn.play_reward.resize(n);
    dyn.ack_prob.resize(n);
    dyn.ack_to.resize(n, GridDynamics::npos);
    dyn.nack_to.resize(n, GridDynamics::npos);
    dyn.idle_to.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pi = grid.point(i);
        dyn.play_reward[i] = expected_reward(pi, arm);
        double rho = success_prob(pi, arm);
        dyn.ack_prob[i] = rho;
        if (rho > 0.0) dyn.ack_to[i] = grid.nearest(belief_after_ack(pi, arm));
        if (rho < 1.0) dyn.nack_to[i] = grid.nearest(belief_after_nack(pi, arm));
        dyn.idle_to[i] = grid.nearest(belief_after_idle(pi, arm));
    }
    return dyn;
}

namespace {

double play_value(const GridDynamics& dyn, const std::vector<double>& v, std::size_t i,
                  double play_shift, double beta) {
    double rho = dyn.ack_prob[i];
    double cont = 0.0;
    if (rho > 0.0) cont += rho * v[dyn.ack_to[i]];
    if (rho < 1.0) cont += (1.0 - rho) * v[dyn.nack_to[i]];
    return dyn.play_reward[i] + play_shift + beta * cont;
}

} // namespace

ValueGrid gsva(const ArmParams& arm, StageRewards stage, double beta, const BeliefGrid& grid,
               const GsvaOptions& opt, const std::vector<double>* warm) {
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorCode::invalid_argument, "beta must lie in (0,1)");
    if (!(opt.tol > 0.0)) fail(ErrorCode::invalid_argument, "gsva tolerance must be positive");
    arm.require_valid();

    GridDynamics dyn = compile_dynamics(arm, grid);
    std::size_t n = grid.size();

    ValueGrid out;
    out.grid = grid;
    out.stage = stage;
    out.beta = beta;
    if (warm && warm->size() == n) {
        out.v = *warm;
    } else {
        double floor = std::min(stage.idle, std::min(arm.r0, arm.r1) + stage.play_shift) / (1.0 - beta);
        out.v.assign(n, floor);
    }

    std::vector<double>& v = out.v;
    std::vector<double> prev;
    double l1 = 0.0;
    long sweep = 0;
    for (; sweep < opt.max_sweeps; ++sweep) {
        l1 = 0.0;
        if (opt.gauss_seidel) {
            for (std::size_t i = 0; i < n; ++i) {
                double nv = std::max(play_value(dyn, v, i, stage.play_shift, beta),
                                     stage.idle + beta * v[dyn.idle_to[i]]);
                l1 += std::abs(nv - v[i]);
                v[i] = nv;
            }
        } else {
            prev = v;
            for (std::size_t i = 0; i < n; ++i) {
                double nv = std::max(play_value(dyn, prev, i, stage.play_shift, beta),
                                     stage.idle + beta * prev[dyn.idle_to[i]]);
                l1 += std::abs(nv - prev[i]);
                v[i] = nv;
            }
        }
        if (l1 <= opt.tol) break;
    }
    if (l1 > opt.tol) {
        std::ostringstream os;
        os << "value iteration did not converge in " << opt.max_sweeps
           << " sweeps (last L1 residual " << l1 << ")";
        fail(ErrorCode::non_convergence, os.str());
    }
    out.sweeps = sweep + 1;

    out.v_s.resize(n);
    out.v_ns.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.v_s[i] = play_value(dyn, v, i, stage.play_shift, beta);
        out.v_ns[i] = stage.idle + beta * v[dyn.idle_to[i]];
        v[i] = std::max(out.v_s[i], out.v_ns[i]);
    }
    return out;
}

std::vector<ValueGrid> finite_horizon_values(const ArmParams& arm, double eta, double beta,
                                             const BeliefGrid& grid, long horizon) {
    if (horizon < 1) fail(ErrorCode::invalid_argument, "horizon must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorCode::invalid_argument, "beta must lie in (0,1)");
    arm.require_valid();

    GridDynamics dyn = compile_dynamics(arm, grid);
    std::size_t n = grid.size();

    std::vector<ValueGrid> out(static_cast<std::size_t>(horizon));
    for (auto& vg : out) {
        vg.grid = grid;
        vg.stage = StageRewards{0.0, eta};
        vg.beta = beta;
        vg.v_s.resize(n);
        vg.v_ns.resize(n);
        vg.v.resize(n);
    }

    for (std::size_t i = 0; i < n; ++i) {
        out[0].v_s[i] = dyn.play_reward[i];
        out[0].v_ns[i] = eta;
        out[0].v[i] = std::max(out[0].v_s[i], out[0].v_ns[i]);
    }
    for (long t = 1; t < horizon; ++t) {
        const std::vector<double>& prev = out[static_cast<std::size_t>(t - 1)].v;
        ValueGrid& cur = out[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < n; ++i) {
            cur.v_s[i] = play_value(dyn, prev, i, 0.0, beta);
            cur.v_ns[i] = eta + beta * prev[dyn.idle_to[i]];
            cur.v[i] = std::max(cur.v_s[i], cur.v_ns[i]);
        }
    }
    return out;
}

Threshold extract_threshold(const ValueGrid& vg, double tie_tol) {
    std::size_t n = vg.grid.size();
    std::size_t first_idle = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (vg.v_ns[i] >= vg.v_s[i] - tie_tol) {
            first_idle = i;
            break;
        }
    }
    if (first_idle == n) return Threshold{ThresholdKind::always_play, 1.0};

    std::vector<std::size_t> offenders;
    for (std::size_t j = first_idle + 1; j < n; ++j)
        if (vg.v_s[j] > vg.v_ns[j] + tie_tol) offenders.push_back(j);
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "play/idle advantage crosses zero more than once: idle first optimal at pi="
           << vg.grid.point(first_idle) << " but play strictly optimal again at";
        std::size_t shown = std::min<std::size_t>(offenders.size(), 8);
        for (std::size_t j = 0; j < shown; ++j) os << " pi=" << vg.grid.point(offenders[j]);
        if (offenders.size() > shown) os << " (+" << offenders.size() - shown << " more)";
        fail(ErrorCode::structure_violation, os.str());
    }

    if (first_idle == 0) return Threshold{ThresholdKind::never_play, 0.0};
    return Threshold{ThresholdKind::interior, vg.grid.point(first_idle)};
}

IndexabilitySweep indexability_sweep(const ArmParams& arm, double beta, const BeliefGrid& grid,
                                     const GsvaOptions& opt, const std::vector<double>& etas,
                                     double tie_tol) {
    if (etas.size() < 2) fail(ErrorCode::invalid_argument, "subsidy ladder needs >= 2 values");
    for (std::size_t j = 1; j < etas.size(); ++j)
        if (!(etas[j] > etas[j - 1]))
            fail(ErrorCode::invalid_argument, "subsidy ladder must be strictly increasing");
    double lo = std::min(arm.r0, arm.r1);
    double hi = std::max(arm.r0, arm.r1);
    if (etas.front() > lo + 1e-12 || etas.back() < hi - 1e-12)
        fail(ErrorCode::invalid_argument, "subsidy ladder must span the arm's reward range");

    IndexabilitySweep sweep;
    sweep.etas = etas;
    sweep.thresholds.reserve(etas.size());
    std::vector<double> warm;
    for (double eta : etas) {
        ValueGrid vg = gsva(arm, eta, beta, grid, opt, warm.empty() ? nullptr : &warm);
        warm = vg.v;
        sweep.thresholds.push_back(extract_threshold(vg, tie_tol));
    }

    auto ordinal = [&](const Threshold& t) {
        switch (t.kind) {
            case ThresholdKind::always_play: return 1.0 + grid.delta();
            case ThresholdKind::never_play: return -grid.delta();
            default: return t.pi_t;
        }
    };
    for (std::size_t j = 1; j < sweep.thresholds.size(); ++j) {
        if (ordinal(sweep.thresholds[j]) > ordinal(sweep.thresholds[j - 1]) + 1e-12) {
            sweep.monotone = false;
            sweep.violations.push_back(j);
        }
    }
    return sweep;
}

} // namespace lrb
