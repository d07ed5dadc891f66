// Copyright (c) 2026 The wvc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WVC_DYNAMICS_HPP
#define WVC_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wvc/error.hpp"

namespace wvc {

// --- generic fixed-step RK4 -------------------------------------------------

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states; // one state per time sample
};

/// Classical 4th-order Runge-Kutta with fixed step; the trajectory is
/// sampled at every step, including t = 0. Aborts on non-finite state.
inline Trajectory rk4_integrate(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
    std::vector<double> x0, double t_end, double dt) {
    if (dt <= 0.0) throw InvalidArgument("dt must be > 0");
    if (t_end <= 0.0) throw InvalidArgument("t_end must be > 0");

    const std::size_t dim = x0.size();
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    double t = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double h = std::min(dt, t_end - t);
        rhs(t, x0, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x0[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x0[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x0[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i) {
            x0[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(x0[i]))
                throw Error("non-finite state at t = " + std::to_string(t + h));
        }
        t += h;
        traj.times.push_back(t);
        traj.states.push_back(x0);
    }
    return traj;
}

/// Upward crossings of `threshold` by component `comp` of a trajectory.
inline int count_upward_crossings(const Trajectory& traj, std::size_t comp, double threshold) {
    int count = 0;
    for (std::size_t i = 1; i < traj.states.size(); ++i)
        if (traj.states[i - 1][comp] < threshold && traj.states[i][comp] >= threshold) ++count;
    return count;
}

// --- modified FitzHugh-Nagumo oscillator -------------------------------------

struct OscillatorParams {
    double alpha = 1.0;
    double beta = 1.0;
    double c = 1.0;
    std::function<double(double)> current = [](double) { return 0.0; }; // I(t)

    void validate() const {
        if (alpha <= 0.0 || beta <= 0.0 || c <= 0.0)
            throw InvalidArgument("oscillator constants alpha, beta, c must be > 0");
        if (!current) throw InvalidArgument("oscillator current function is empty");
    }
};

/// dv = 3v - v^3 - v^7 + 2 - w + I(t);  dw = c [ alpha (1 + tanh(beta v)) - w ].
inline std::pair<double, double> fn_rhs(double v, double w, const OscillatorParams& p, double t) {
    const double dv = 3.0 * v - v * v * v - std::pow(v, 7) + 2.0 - w + p.current(t);
    const double dw = p.c * (p.alpha * (1.0 + std::tanh(p.beta * v)) - w);
    return {dv, dw};
}

inline Trajectory integrate_oscillator(const OscillatorParams& p, double v0, double w0,
                                       double t_end, double dt) {
    p.validate();
    auto rhs = [&p](double t, const std::vector<double>& x, std::vector<double>& d) {
        const auto [dv, dw] = fn_rhs(x[0], x[1], p, t);
        d[0] = dv;
        d[1] = dw;
    };
    return rk4_integrate(rhs, {v0, w0}, t_end, dt);
}

/// Worst grid value of the largest eigenvalue of
/// sym(Theta J Theta^-1 - diag(3 + alpha*beta/4, 0)) with
/// Theta = diag(sqrt(c*alpha*beta), 1). A non-positive return certifies
/// the metric bound on the grid.
inline double metric_bound_margin(const OscillatorParams& p, const std::vector<double>& v_grid) {
    p.validate();
    if (v_grid.empty()) throw InvalidArgument("metric bound needs a nonempty grid");
    const double cab = p.c * p.alpha * p.beta;
    const double theta = std::sqrt(cab);
    const double bound11 = 3.0 + p.alpha * p.beta / 4.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (double v : v_grid) {
        const double j11 = 3.0 - 3.0 * v * v - 7.0 * std::pow(v, 6);
        const double sech = 1.0 / std::cosh(p.beta * v);
        // Theta J Theta^-1 = [[j11, -theta], [theta * sech^2, -c]]
        const double a11 = j11 - bound11;
        const double a22 = -p.c;
        const double a12 = 0.5 * (-theta + theta * sech * sech);
        const double mid = 0.5 * (a11 + a22);
        const double rad = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
        worst = std::max(worst, mid + rad);
    }
    return worst;
}

// --- layer relaxation with spike-gated sequencing ----------------------------

struct Pulse {
    double start = 0.0;
    double duration = 0.0;
    int cluster = 0;
};

/// Drives the scalar gate x3: amplitude-1 pulses with smoothstep ramps of
/// width 0.05 * duration at both edges, one active cluster per pulse.
struct PulseSchedule {
    std::vector<Pulse> pulses;

    void validate() const {
        double prev_end = -std::numeric_limits<double>::infinity();
        for (const Pulse& p : pulses) {
            if (p.duration <= 0.0) throw InvalidArgument("pulse duration must be > 0");
            if (p.start < prev_end) throw InvalidArgument("pulses must be sorted, non-overlapping");
            prev_end = p.start + p.duration;
        }
    }

    static double smoothstep(double s) {
        s = std::clamp(s, 0.0, 1.0);
        return s * s * (3.0 - 2.0 * s);
    }

    double gate(double t) const {
        for (const Pulse& p : pulses) {
            if (t < p.start || t > p.start + p.duration) continue;
            const double ramp = 0.05 * p.duration;
            if (t < p.start + ramp) return smoothstep((t - p.start) / ramp);
            if (t > p.start + p.duration - ramp)
                return smoothstep((p.start + p.duration - t) / ramp);
            return 1.0;
        }
        return 0.0;
    }

    int active_cluster(double t) const {
        for (const Pulse& p : pulses)
            if (t >= p.start && t <= p.start + p.duration) return p.cluster;
        return -1;
    }
};

/// Relaxation layers: x1 tracks C1, x2 tracks the gated cluster slice of C2.
struct LayerParams {
    double k1 = 1.0;
    double k2 = 1.0;
    std::vector<double> c1_target;
    std::vector<double> c2;
    std::vector<int> cluster_of; // cluster id per C2 coordinate
    PulseSchedule schedule;

    void validate() const {
        if (k1 <= 0.0 || k2 <= 0.0) throw InvalidArgument("gains k1, k2 must be > 0");
        if (cluster_of.size() != c2.size())
            throw InvalidArgument("cluster assignment must cover every C2 coordinate");
        schedule.validate();
        for (const Pulse& p : schedule.pulses)
            if (k2 * p.duration < 10.0)
                throw InvalidArgument("k2 * T must be >= 10 (got " +
                                      std::to_string(k2 * p.duration) + ")");
    }

    std::size_t dim() const { return c1_target.size() + c2.size(); }
};

/// dx1 = -k1 (x1 - C1);  dx2 = -k2 (x2 - x3 * g), where g equals C2 on the
/// active cluster's coordinates and 0 elsewhere. State is [x1 | x2].
inline void layer_rhs(const LayerParams& p, double t, const std::vector<double>& state,
                      std::vector<double>& deriv) {
    const std::size_t n1 = p.c1_target.size();
    const std::size_t n2 = p.c2.size();
    if (state.size() != n1 + n2) throw InvalidArgument("layer state dimension mismatch");
    deriv.resize(n1 + n2);
    const double x3 = p.schedule.gate(t);
    const int active = p.schedule.active_cluster(t);
    for (std::size_t i = 0; i < n1; ++i) deriv[i] = -p.k1 * (state[i] - p.c1_target[i]);
    for (std::size_t i = 0; i < n2; ++i) {
        const double g = p.cluster_of[i] == active ? p.c2[i] : 0.0;
        deriv[n1 + i] = -p.k2 * (state[n1 + i] - x3 * g);
    }
}

inline Trajectory integrate_layers(const LayerParams& p, std::vector<double> x0, double t_end,
                                   double dt) {
    p.validate();
    if (x0.empty()) x0.assign(p.dim(), 0.0);
    if (x0.size() != p.dim()) throw InvalidArgument("layer initial state dimension mismatch");
    auto rhs = [&p](double t, const std::vector<double>& x, std::vector<double>& d) {
        layer_rhs(p, t, x, d);
    };
    return rk4_integrate(rhs, std::move(x0), t_end, dt);
}

} // namespace wvc

#endif // WVC_DYNAMICS_HPP
