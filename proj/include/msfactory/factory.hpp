// Copyright 2026 The msfactory Authors
//
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

#ifndef MSFACTORY_FACTORY_HPP
#define MSFACTORY_FACTORY_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "msfactory/circuits.hpp"
#include "msfactory/surface_noise.hpp"

namespace msf {

enum class FactoryFamily { L1_15to1, L1_15to1_small, L2_15x15, L2_15x20, L2_15xCCZ, L2_15x15_small };

/// How much of dX2*p_L(dX2) hits a level-2 output while it is consumed.
enum class ConsumptionPrefactor { half, full };

inline const char *family_name(FactoryFamily f) {
    switch (f) {
        case FactoryFamily::L1_15to1:
            return "l1_15to1";
        case FactoryFamily::L1_15to1_small:
            return "l1_15to1_small";
        case FactoryFamily::L2_15x15:
            return "l2_15x15";
        case FactoryFamily::L2_15x20:
            return "l2_15x20";
        case FactoryFamily::L2_15xCCZ:
            return "l2_15xccz";
        case FactoryFamily::L2_15x15_small:
            return "l2_15x15_small";
    }
    return "?";
}

inline FactoryFamily parse_family(const std::string &s) {
    for (auto f : {FactoryFamily::L1_15to1, FactoryFamily::L1_15to1_small, FactoryFamily::L2_15x15,
                   FactoryFamily::L2_15x20, FactoryFamily::L2_15xCCZ, FactoryFamily::L2_15x15_small}) {
        if (s == family_name(f)) return f;
    }
    throw std::invalid_argument("unknown family: " + s);
}

inline bool is_two_level(FactoryFamily f) {
    return f != FactoryFamily::L1_15to1 && f != FactoryFamily::L1_15to1_small;
}

inline int outputs_of(FactoryFamily f) {
    return f == FactoryFamily::L2_15x20 ? 4 : 1;
}

struct FactoryConfig {
    FactoryFamily family = FactoryFamily::L1_15to1;
    DistanceSet distances;
    PhysicalNoise noise;
    ConsumptionPrefactor consumption = ConsumptionPrefactor::half;
    std::string label;  // optional display name

    void validate() const {
        distances.validate();
        noise.validate();
        if (is_two_level(family)) {
            if (!distances.has_level2()) {
                throw std::invalid_argument(std::string(family_name(family)) + " needs d2 (dX2,dZ2,dm2)");
            }
            if (family != FactoryFamily::L2_15x15_small && !distances.nL1) {
                throw std::invalid_argument(std::string(family_name(family)) + " needs n_l1");
            }
        }
    }
};

struct FactoryReport {
    std::string protocol;
    FactoryFamily family = FactoryFamily::L1_15to1;
    DistanceSet distances;
    double p_phys = 0;
    double c_T = 1;
    int outputs = 1;
    double p_out = 0;
    double p_L1 = 0;  // level-1 output error feeding level 2 (equals p_out for level-1 families)
    double p_fail_L1 = 0;
    double p_fail_L2 = 0;  // 0 for level-1 families
    long long qubits = 0;
    double cycles = 0;
    double qubitcycles_per_state = 0;
    std::optional<int> d_full_100, d_full_10k;
    std::optional<double> cost_d3_100, cost_d3_10k;
};

inline std::string protocol_label(const FactoryConfig &c) {
    const auto &d = c.distances;
    std::ostringstream s;
    if (c.family == FactoryFamily::L1_15to1_small || c.family == FactoryFamily::L2_15x15_small) s << "small:";
    s << "(15-to-1)";
    if (is_two_level(c.family) && d.nL1 && c.family != FactoryFamily::L2_15x15_small) s << "^" << *d.nL1;
    s << "_{" << d.dX << "," << d.dZ << "," << d.dm << "}";
    if (is_two_level(c.family)) {
        const char *l2 = c.family == FactoryFamily::L2_15x20 ? "(20-to-4)" : c.family == FactoryFamily::L2_15xCCZ ? "(8-to-CCZ)" : "(15-to-1)";
        s << "x" << l2 << "_{" << *d.dX2 << "," << *d.dZ2 << "," << *d.dm2 << "}";
    }
    return s.str();
}

// ---- costs -------------------------------------------------------------------------------

inline long long qubit_cost(const FactoryConfig &c) {
    c.validate();
    const auto &d = c.distances;
    double dX = d.dX, dZ = d.dZ, dm = d.dm;
    double l1_block = 2 * (dX + 4 * dZ) * 3 * dX + 4 * dm;
    if (c.family == FactoryFamily::L1_15to1) return std::llround(l1_block);
    if (c.family == FactoryFamily::L1_15to1_small) return std::llround(4 * (dX + 4 * dZ) * dX + 2 * dm);
    double dX2 = *d.dX2, dZ2 = *d.dZ2, dm2 = *d.dm2;
    if (c.family == FactoryFamily::L2_15x15_small) {
        return std::llround(2 * (dX2 + 4 * dZ2) * 2 * dX2 + l1_block + 2 * (4 * dm2 * dm2 + dm2 * dX2));
    }
    double width = c.family == FactoryFamily::L2_15x15   ? dX2 + 4 * dZ2
                   : c.family == FactoryFamily::L2_15x20 ? 4 * dX2 + 3 * dZ2
                                                         : 3 * dX2 + dZ2;
    double n = *d.nL1;
    double total = 2 * width * 3 * dX2 + 2 * n * ((dX + 4 * dZ) * (3 * dX + dm2 / 2) + 2 * dm) +
                   2 * (20 * dm2 * dm2 + 2 * dX2 * dm2);
    return std::llround(total);
}

/// Cadence at which a level-2 block can consume level-1 states.
inline double level1_period(const FactoryConfig &c, double p_fail_L1) {
    const auto &d = c.distances;
    double l1_time = 6.0 * d.dm / (1 - p_fail_L1);
    if (c.family == FactoryFamily::L2_15x15_small) return std::max(2.0 * *d.dm2, l1_time);
    return std::max(double(*d.dm2), l1_time / (*d.nL1 / 2.0));
}

inline double cycle_cost(const FactoryConfig &c, double p_fail_L1) {
    if (!(p_fail_L1 >= 0 && p_fail_L1 < 1)) throw std::domain_error("cycle_cost: p_fail must be in [0,1)");
    double dm = c.distances.dm;
    switch (c.family) {
        case FactoryFamily::L1_15to1:
            return 6 * dm / (1 - p_fail_L1);
        case FactoryFamily::L1_15to1_small:
            return 12 * dm / (1 - p_fail_L1);
        case FactoryFamily::L2_15x15:
            return 7.5 * level1_period(c, p_fail_L1);
        case FactoryFamily::L2_15x20:
            return 10 * level1_period(c, p_fail_L1);
        case FactoryFamily::L2_15xCCZ:
            return 4 * level1_period(c, p_fail_L1);
        case FactoryFamily::L2_15x15_small:
            return 15 * level1_period(c, p_fail_L1);
    }
    throw std::logic_error("unreachable");
}

enum class FullDistanceScale { qubits100, qubits10k };

inline int patches_for(FullDistanceScale s) {
    return s == FullDistanceScale::qubits100 ? 231 : 20284;
}

/// A CCZ output drives one Toffoli, counted as this many T gates when budgeting storage error.
constexpr double kToffoliTEquivalents = 4;

inline double t_equivalents_per_output(FactoryFamily f) {
    return f == FactoryFamily::L2_15xCCZ ? kToffoliTEquivalents : 1;
}

/// Smallest odd d (<= 99) with n*d*p_L(p,d) < 0.01*p_out/t_equiv.
inline std::optional<int> full_distance(double p_out, FullDistanceScale scale, double p_phys, double t_equiv = 1) {
    if (!(p_out > 0)) return std::nullopt;
    for (int d = 1; d <= 99; d += 2) {
        if (patches_for(scale) * d * logical_error_rate(p_phys, d) < 0.01 * p_out / t_equiv) return d;
    }
    return std::nullopt;
}

/// Cost in units of d^3 (data qubits only, hence the factor 2).
inline double d3_cost(double qubits, double cycles, int outputs, int d) {
    return qubits * cycles / (2.0 * outputs * double(d) * d * d);
}

// ---- schedules ---------------------------------------------------------------------------

struct ScheduleStep {
    std::vector<int> rotations;  // 1-based circuit indices
    std::vector<int> init_qubits;
    std::vector<int> measured_qubits;
    double storage_cycles = 0;
};

struct Schedule {
    std::vector<ScheduleStep> steps;
    std::vector<int> consumed_qubits;
    double consumption_flip = 0;  // X and Z probability each on consumed qubits
};

/// Qubits are initialized by the first step that touches them; checks are measured in a
/// closing step without storage.
inline Schedule make_schedule(const Circuit &c, const std::vector<std::vector<int>> &groups, double storage_cycles) {
    Schedule s;
    std::vector<bool> seen(static_cast<size_t>(c.n), false);
    std::vector<int> used(c.rotations.size(), 0);
    for (const auto &g : groups) {
        ScheduleStep st;
        st.rotations = g;
        st.storage_cycles = storage_cycles;
        for (int r : g) {
            if (r < 1 || r > static_cast<int>(c.rotations.size())) throw std::logic_error("schedule: bad rotation index");
            used[r - 1]++;
            for (int q : c.rotations[r - 1].axis.support()) {
                if (!seen[q]) {
                    seen[q] = true;
                    st.init_qubits.push_back(q);
                }
            }
        }
        std::sort(st.init_qubits.begin(), st.init_qubits.end());
        s.steps.push_back(std::move(st));
    }
    for (int u : used) {
        if (u != 1) throw std::logic_error("schedule/circuit mismatch: every rotation must appear exactly once");
    }
    ScheduleStep fin;
    fin.measured_qubits = c.check_qubits;
    s.steps.push_back(fin);
    s.consumed_qubits = c.output_qubits;
    return s;
}

inline std::vector<std::vector<int>> schedule_groups(FactoryFamily f) {
    switch (f) {
        case FactoryFamily::L1_15to1:
        case FactoryFamily::L1_15to1_small:
            return {{1, 2, 3, 5}, {6, 7}, {4, 8, 9}, {10, 11}, {12, 13}, {14, 15}};
        case FactoryFamily::L2_15x15:
            return {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}, {13, 14}, {15}};
        case FactoryFamily::L2_15x20:
            return {{1, 2}, {4, 5}, {3, 6}, {7, 8}, {9, 10}, {11, 12}, {13, 14}, {15, 16}, {17, 18}, {19, 20}};
        case FactoryFamily::L2_15xCCZ:
            return {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
        case FactoryFamily::L2_15x15_small: {
            std::vector<std::vector<int>> g;
            for (int i = 1; i <= 15; i++) g.push_back({i});
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

inline Circuit circuit_of(FactoryFamily f) {
    if (f == FactoryFamily::L2_15x20) return catalog(CircuitKind::twenty_to_four);
    if (f == FactoryFamily::L2_15xCCZ) return catalog(CircuitKind::eight_to_ccz);
    return catalog(CircuitKind::fifteen_to_one);
}

template <typename Real>
struct ScheduleResult {
    Real p_out;
    Real p_fail;
};

/// Runs a schedule through the density engine.
template <typename Real = Quad>
ScheduleResult<Real> run_schedule(const Circuit &c, const Schedule &s,
                                  const std::function<RotationErrorProfile(const Rotation &)> &profile,
                                  const std::function<StorageRates(int)> &storage) {
    auto rho = DensityMatrix<Real>::init_plus(c.n);
    std::vector<bool> live(static_cast<size_t>(c.n), false);
    for (const auto &st : s.steps) {
        for (int q : st.init_qubits) live[q] = true;
        for (int q : st.measured_qubits) live[q] = false;
        for (int r : st.rotations) {
            const auto &rot = c.rotations[r - 1];
            apply_faulty_rotation(rho, rot.axis, profile(rot), c.output_qubits, rot.angle.k < 0 ? -1 : 1);
        }
        if (st.storage_cycles > 0) {
            for (int q = 0; q < c.n; q++) {
                if (live[q]) apply_storage(rho, q, storage(q), st.storage_cycles);
            }
        }
    }
    for (int q : s.consumed_qubits) {
        apply_storage(rho, q, StorageRates{s.consumption_flip, s.consumption_flip}, 1.0);
    }
    auto proj = project_plus(std::move(rho), c.check_qubits);
    Real f = fidelity_with_pure(proj.state, ideal_output_state<Real>(c));
    return {(Real(1) - f) / Real(c.outputs), proj.p_fail};
}

// ---- level-1 memo ------------------------------------------------------------------------

struct Level1Result {
    double p_out = 0;
    double p_fail = 0;
};

/// Read-mostly cache of level-1 simulations shared by sweep workers.
class Level1Memo {
   public:
    using Key = std::tuple<int, int, int, double, double, bool>;

    std::optional<Level1Result> find(const Key &k) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    Level1Result insert(const Key &k, Level1Result v) {
        std::unique_lock lock(mu_);
        return map_.emplace(k, v).first->second;
    }
    size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

   private:
    mutable std::shared_mutex mu_;
    std::map<Key, Level1Result> map_;
};

namespace detail {

/// Quad rounding leaves |x| ~ 1e-34 where the exact answer is 0; report those as 0.
inline double settle(const Quad &x) {
    return x < Quad(64) * std::numeric_limits<Quad>::epsilon() ? 0.0 : to_double(x);
}

inline bool touches(const Rotation &r, const std::vector<int> &qs) {
    for (int q : r.axis.support())
        for (int o : qs)
            if (o == q) return true;
    return false;
}

inline Level1Result simulate_level1(const DistanceSet &d, const PhysicalNoise &noise, bool small) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    double p = noise.p_phys;
    auto sched = make_schedule(c, schedule_groups(FactoryFamily::L1_15to1), small ? 2.0 * d.dm : double(d.dm));
    sched.consumption_flip = 0.5 * logical_error_rate(p, d.dX) * d.dX;
    double l = d.dX + 4.0 * d.dZ;
    auto single = single_qubit_rotation_profile(noise, d.dZ, d.dm);
    auto multi_out = multiqubit_rotation_profile(noise, l, d.dX, d.dm, true);
    auto multi = multiqubit_rotation_profile(noise, l, d.dX, d.dm, false);
    auto out_rates = patch_storage_rates(noise, d.dX, d.dX);
    auto chk_rates = patch_storage_rates(noise, d.dX, d.dZ);
    auto r = run_schedule<Quad>(
        c, sched,
        [&](const Rotation &rot) {
            if (rot.axis.support().size() == 1) return single;
            return touches(rot, c.output_qubits) ? multi_out : multi;
        },
        [&](int q) { return q == 0 ? out_rates : chk_rates; });
    return {settle(r.p_out), settle(r.p_fail)};
}

}  // namespace detail

inline Level1Result level1_result(const DistanceSet &d, const PhysicalNoise &noise, bool small = false,
                                  Level1Memo *memo = nullptr) {
    Level1Memo::Key key{d.dX, d.dZ, d.dm, noise.p_phys, noise.c_T, small};
    if (memo) {
        if (auto hit = memo->find(key)) return *hit;
    }
    auto r = detail::simulate_level1(d, noise, small);
    if (memo) return memo->insert(key, r);
    return r;
}

/// Output infidelity and failure rate of the embedded level-1 15-to-1 block.
inline Level1Result level1_output_error(const FactoryConfig &c, Level1Memo *memo = nullptr) {
    c.distances.validate();
    c.noise.validate();
    return level1_result(c.distances, c.noise, c.family == FactoryFamily::L1_15to1_small, memo);
}

struct SimulationOverrides {
    std::optional<double> p_L1;  // replace the simulated level-1 infidelity
};

inline FactoryReport simulate_factory(const FactoryConfig &c, Level1Memo *memo = nullptr,
                                      const SimulationOverrides &ov = {}) {
    c.validate();
    const auto &d = c.distances;
    const auto &noise = c.noise;
    double p = noise.p_phys;
    FactoryReport rep;
    rep.protocol = c.label.empty() ? protocol_label(c) : c.label;
    rep.family = c.family;
    rep.distances = d;
    rep.p_phys = p;
    rep.c_T = noise.c_T;
    rep.outputs = outputs_of(c.family);

    auto l1 = level1_output_error(c, memo);
    rep.p_L1 = ov.p_L1.value_or(l1.p_out);
    rep.p_fail_L1 = l1.p_fail;
    if (!is_two_level(c.family)) {
        rep.p_out = rep.p_L1;
    } else {
        auto circ = circuit_of(c.family);
        double t_l1 = level1_period(c, l1.p_fail);
        auto sched = make_schedule(circ, schedule_groups(c.family), t_l1);
        int dX2 = *d.dX2, dZ2 = *d.dZ2, dm2 = *d.dm2;
        double pre = c.consumption == ConsumptionPrefactor::half ? 0.5 : 1.0;
        sched.consumption_flip = pre * dX2 * logical_error_rate(p, dX2);
        double l = c.family == FactoryFamily::L2_15xCCZ ? 3.0 * dX2 + dZ2 + dm2 : dX2 + 4.0 * dZ2 + dm2;
        double l_move = c.family == FactoryFamily::L2_15x15_small ? 10.0 * dm2
                                                                  : *d.nL1 / 4.0 * (d.dX + 4.0 * d.dZ) + 10.0 * dm2;
        auto with_out = level2_rotation_profile(noise, rep.p_L1, l, dX2, dm2, l_move, true);
        auto without = level2_rotation_profile(noise, rep.p_L1, l, dX2, dm2, l_move, false);
        auto out_rates = patch_storage_rates(noise, dX2, dX2);
        auto chk_rates = patch_storage_rates(noise, dX2, dZ2);
        const auto &outs = circ.output_qubits;
        auto r = run_schedule<Quad>(
            circ, sched, [&](const Rotation &rot) { return detail::touches(rot, outs) ? with_out : without; },
            [&](int q) {
                return std::find(outs.begin(), outs.end(), q) != outs.end() ? out_rates : chk_rates;
            });
        rep.p_out = detail::settle(r.p_out);
        rep.p_fail_L2 = detail::settle(r.p_fail);
    }
    rep.qubits = qubit_cost(c);
    rep.cycles = cycle_cost(c, l1.p_fail);
    rep.qubitcycles_per_state = double(rep.qubits) * rep.cycles / rep.outputs;
    double te = t_equivalents_per_output(c.family);
    rep.d_full_100 = full_distance(rep.p_out, FullDistanceScale::qubits100, p, te);
    rep.d_full_10k = full_distance(rep.p_out, FullDistanceScale::qubits10k, p, te);
    if (rep.d_full_100) rep.cost_d3_100 = d3_cost(double(rep.qubits), rep.cycles, rep.outputs, *rep.d_full_100);
    if (rep.d_full_10k) rep.cost_d3_10k = d3_cost(double(rep.qubits), rep.cycles, rep.outputs, *rep.d_full_10k);
    return rep;
}

// ---- sweeps ------------------------------------------------------------------------------

struct SweepRanges {
    std::vector<int> dX, dZ, dm;
    std::vector<int> dX2, dZ2, dm2;  // level-2 families only
    std::vector<int> nL1;            // standard two-level families only
};

inline std::vector<FactoryConfig> enumerate_configs(FactoryFamily f, const SweepRanges &r, const PhysicalNoise &noise,
                                                    ConsumptionPrefactor cp) {
    std::vector<FactoryConfig> out;
    bool two = is_two_level(f);
    bool needs_n = two && f != FactoryFamily::L2_15x15_small;
    std::vector<int> one{0};
    const auto &x2 = two ? r.dX2 : one;
    const auto &z2 = two ? r.dZ2 : one;
    const auto &m2 = two ? r.dm2 : one;
    const auto &ns = needs_n ? r.nL1 : one;
    for (int dX : r.dX)
        for (int dZ : r.dZ)
            for (int dm : r.dm)
                for (int a : x2)
                    for (int b : z2)
                        for (int m : m2)
                            for (int n : ns) {
                                FactoryConfig c;
                                c.family = f;
                                c.noise = noise;
                                c.consumption = cp;
                                c.distances.dX = dX;
                                c.distances.dZ = dZ;
                                c.distances.dm = dm;
                                if (two) {
                                    c.distances.dX2 = a;
                                    c.distances.dZ2 = b;
                                    c.distances.dm2 = m;
                                }
                                if (needs_n) c.distances.nL1 = n;
                                try {
                                    c.validate();
                                } catch (const std::exception &) {
                                    continue;  // outside the allowed distance region
                                }
                                out.push_back(c);
                            }
    return out;
}

inline std::tuple<int, int, int, int, int, int, int> distance_key(const DistanceSet &d) {
    return {d.dX, d.dZ, d.dm, d.dX2.value_or(0), d.dZ2.value_or(0), d.dm2.value_or(0), d.nL1.value_or(0)};
}

/// Pareto-minimal (qubits, qubitcycles per state) among configs meeting the target.
inline std::vector<FactoryReport> pareto_front(std::vector<FactoryReport> ok) {
    std::vector<FactoryReport> front;
    for (const auto &r : ok) {
        bool dominated = false;
        for (const auto &s : ok) {
            if (s.qubits <= r.qubits && s.qubitcycles_per_state <= r.qubitcycles_per_state &&
                (s.qubits < r.qubits || s.qubitcycles_per_state < r.qubitcycles_per_state)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(r);
    }
    std::sort(front.begin(), front.end(), [](const FactoryReport &a, const FactoryReport &b) {
        if (a.qubitcycles_per_state != b.qubitcycles_per_state) return a.qubitcycles_per_state < b.qubitcycles_per_state;
        if (a.qubits != b.qubits) return a.qubits < b.qubits;
        return distance_key(a.distances) < distance_key(b.distances);
    });
    return front;
}

inline std::vector<FactoryReport> sweep(FactoryFamily f, const SweepRanges &ranges, const PhysicalNoise &noise,
                                        double target_p_out,
                                        ConsumptionPrefactor cp = ConsumptionPrefactor::half,
                                        Level1Memo *memo = nullptr, unsigned threads = 0) {
    noise.validate();
    auto configs = enumerate_configs(f, ranges, noise, cp);
    Level1Memo local;
    if (!memo) memo = &local;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::optional<FactoryReport>> results(configs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < configs.size();) {
            try {
                results[i] = simulate_factory(configs[i], memo);
            } catch (const std::domain_error &) {
                // probabilities overflow at this corner; cannot meet any target
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; t++) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    std::vector<FactoryReport> ok;
    for (auto &r : results) {
        if (r && r->p_out <= target_p_out) ok.push_back(*r);
    }
    return pareto_front(std::move(ok));
}

}  // namespace msf

#endif
