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

#include <random>

#include "gtest/gtest.h"
#include "msfactory/circuits.hpp"
#include "msfactory/density.hpp"
#include "oracles.hpp"

using namespace msf;
using C = std::complex<double>;
using DM = DensityMatrix<double>;

namespace {

DM random_state(int n, std::mt19937_64 &rng) {
    // Mixture of a few random pure states.
    std::normal_distribution<double> g;
    DM acc(n);
    for (int t = 0; t < 3; t++) {
        std::vector<Complex<double>> v(size_t{1} << n);
        double s = 0;
        for (auto &x : v) {
            x = {g(rng), g(rng)};
            s += x.norm2();
        }
        for (auto &x : v) x = x / std::sqrt(s);
        auto p = DM::from_pure(v);
        p *= 1.0 / 3;
        acc = acc + p;
    }
    return acc;
}

PauliProduct z(const char *s) {
    return PauliProduct::parse(s);
}

}  // namespace

TEST(init_plus, one_qubit) {
    auto r = init_plus<double>(1);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) ASSERT_EQ(r(i, j).to_std(), C(0.5));
}

TEST(init_plus, two_qubits_uniform_quarter) {
    auto r = init_plus<double>(2);
    ASSERT_EQ(r.dim(), 4u);
    for (const auto &e : r.data()) ASSERT_EQ(e.to_std(), C(0.25));
}

TEST(init_plus, five_qubits) {
    auto r = init_plus<double>(5);
    ASSERT_EQ(r.dim(), 32u);
    for (const auto &e : r.data()) ASSERT_EQ(e.to_std(), C(1.0 / 32));
    ASSERT_NEAR(r.trace(), 1, 1e-15);
}

TEST(init_plus, size_limits) {
    ASSERT_THROW(init_plus<double>(0), std::length_error);
    ASSERT_THROW(init_plus<double>(11), std::length_error);
}

TEST(apply_faulty_rotation, noiseless_makes_magic_states) {
    auto r = init_plus<double>(1);
    apply_faulty_rotation(r, z("Z"), RotationErrorProfile::ideal(), {0});
    ASSERT_NEAR(fidelity_with_pure(r, magic_state<double>()), 1, 1e-15);
    // The mirrored gate gives |m~>, as does the net Z_{-pi/8} of the 15-rotation circuit.
    r = init_plus<double>(1);
    apply_faulty_rotation(r, z("Z"), RotationErrorProfile::ideal(), {0}, -1);
    ASSERT_NEAR(fidelity_with_pure(r, magic_tilde_state<double>()), 1, 1e-15);
}

TEST(apply_faulty_rotation, z_only_is_the_two_branch_map) {
    std::mt19937_64 rng(3);
    double p = 0.07;
    auto axis = z("ZIZ");
    auto rho = random_state(3, rng);
    auto expect = oracle::mix(oracle::conj(rotation_unitary(axis, M_PI / 8), oracle::to_dense(rho)), 1 - p,
                              oracle::conj(rotation_unitary(axis, 5 * M_PI / 8), oracle::to_dense(rho)), p);
    apply_faulty_rotation(rho, axis, RotationErrorProfile::z_only(p), {});
    ASSERT_LT(oracle::to_dense(rho).max_abs_diff(expect), 1e-14);
}

TEST(apply_faulty_rotation, random_pauli_is_the_four_branch_map) {
    std::mt19937_64 rng(4);
    double p = 0.09;
    auto axis = z("XYZ");  // non-Z axes go through the same monomial path
    auto rho = random_state(3, rng);
    auto d = oracle::to_dense(rho);
    auto c1 = oracle::conj(rotation_unitary(axis, M_PI / 8), d);
    auto c5 = oracle::conj(rotation_unitary(axis, 5 * M_PI / 8), d);
    auto c3 = oracle::conj(rotation_unitary(axis, 3 * M_PI / 8), d);
    auto cm = oracle::conj(rotation_unitary(axis, -M_PI / 8), d);
    auto expect = oracle::mix(oracle::mix(c1, 1 - p, c5, p / 3), 1, oracle::mix(c3, p / 3, cm, p / 3), 1);
    apply_faulty_rotation(rho, axis, RotationErrorProfile::random_pauli(p), {});
    ASSERT_LT(oracle::to_dense(rho).max_abs_diff(expect), 1e-14);
}

TEST(apply_faulty_rotation, output_z_only_on_support) {
    auto a = init_plus<double>(2);
    RotationErrorProfile prof{0, 0, 0, 0.5};
    apply_faulty_rotation(a, z("ZI"), prof, {0, 1});
    // Qubit 0 fully dephased, qubit 1 untouched: <+|_1 stays pure in the reduced state.
    ASSERT_NEAR(a(0, 3).re, 0, 1e-15);
    ASSERT_NEAR(a(0, 1).re, 0.25, 1e-15);
}

TEST(apply_faulty_rotation, negative_sign_mirrors) {
    std::mt19937_64 rng(9);
    auto rho = random_state(2, rng);
    auto d = oracle::to_dense(rho);
    double p = 0.1;
    auto axis = z("ZZ");
    auto expect = oracle::mix(oracle::conj(rotation_unitary(axis, -M_PI / 8), d), 1 - p,
                              oracle::conj(rotation_unitary(axis, -5 * M_PI / 8), d), p);
    apply_faulty_rotation(rho, axis, RotationErrorProfile::z_only(p), {}, -1);
    ASSERT_LT(oracle::to_dense(rho).max_abs_diff(expect), 1e-14);
}

TEST(apply_faulty_rotation, errors) {
    auto r = init_plus<double>(2);
    ASSERT_THROW(apply_faulty_rotation(r, z("Z"), {}, {}), std::invalid_argument);
    ASSERT_THROW(apply_faulty_rotation(r, z("ZZ"), RotationErrorProfile{1.2, 0, 0, 0}, {}), std::domain_error);
    ASSERT_THROW(apply_faulty_rotation(r, z("ZZ"), RotationErrorProfile{-0.1, 0, 0, 0}, {}), std::domain_error);
    ASSERT_THROW(apply_faulty_rotation(r, z("ZZ"), RotationErrorProfile{0.5, 0.4, 0.3, 0}, {}), std::domain_error);
}

TEST(apply_coherent_rotation, zero_excess_is_noiseless) {
    auto a = init_plus<double>(2), b = init_plus<double>(2);
    apply_coherent_rotation(a, z("ZZ"), 0.0);
    apply_faulty_rotation(b, z("ZZ"), {}, {});
    ASSERT_LT(oracle::to_dense(a).max_abs_diff(oracle::to_dense(b)), 1e-15);
}

TEST(apply_coherent_rotation, quarter_turn_excess_is_deterministic_half_error) {
    auto a = init_plus<double>(1), b = init_plus<double>(1);
    apply_coherent_rotation(a, z("Z"), M_PI / 2);
    apply_faulty_rotation(b, z("Z"), RotationErrorProfile{0.999999, 0, 0, 0}, {});
    // b is 1e-6 away from a deterministic k=5 error.
    ASSERT_LT(oracle::to_dense(a).max_abs_diff(oracle::to_dense(b)), 2e-6);
    auto c = init_plus<double>(1);
    c.apply_rotation(z("Z"), 5 * M_PI / 8);
    ASSERT_LT(oracle::to_dense(a).max_abs_diff(oracle::to_dense(c)), 1e-15);
}

TEST(apply_storage, zero_rates_noop) {
    std::mt19937_64 rng(1);
    auto r = random_state(2, rng);
    auto before = oracle::to_dense(r);
    apply_storage(r, 1, {0, 0}, 100);
    ASSERT_EQ(oracle::to_dense(r).max_abs_diff(before), 0);
}

TEST(apply_storage, half_z_fully_dephases_plus) {
    auto r = init_plus<double>(1);
    apply_storage(r, 0, {0, 0.5}, 1);
    auto mm = DM::maximally_mixed(1);
    ASSERT_LT(oracle::to_dense(r).max_abs_diff(oracle::to_dense(mm)), 1e-15);
}

TEST(apply_storage, independent_x_then_z) {
    std::mt19937_64 rng(2);
    auto r = random_state(2, rng);
    auto d = oracle::to_dense(r);
    double px = 0.03, pz = 0.05;
    auto xm = matrix_of(z("IX")), zm = matrix_of(z("IZ"));
    d = oracle::mix(d, 1 - 3 * px, oracle::conj(xm, d), 3 * px);
    d = oracle::mix(d, 1 - 3 * pz, oracle::conj(zm, d), 3 * pz);
    apply_storage(r, 1, {px, pz}, 3);
    ASSERT_LT(oracle::to_dense(r).max_abs_diff(d), 1e-15);
}

TEST(apply_storage, errors) {
    auto r = init_plus<double>(2);
    ASSERT_THROW(apply_storage(r, 2, {0.1, 0.1}, 1), std::out_of_range);
    ASSERT_THROW(apply_storage(r, 0, {0.1, 0.1}, 10), std::domain_error);
    ASSERT_THROW(apply_storage(r, 0, {0.0, 0.5}, 2), std::domain_error);
}

TEST(project_plus, noiseless_fifteen_to_one_passes) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    auto r = init_plus<double>(5);
    for (const auto &rot : c.rotations) apply_faulty_rotation(r, rot.axis, {}, {});
    auto res = project_plus(r, c.check_qubits);
    ASSERT_LT(std::abs(res.p_fail), 1e-10);
    ASSERT_NEAR(res.state.trace(), 1, 1e-12);
}

TEST(project_plus, z_on_check_always_fails) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    auto r = init_plus<double>(5);
    r.apply_pauli_channel(z("IZIII"), 1.0);
    ASSERT_NEAR(1 - pass_probability(r, c.check_qubits), 1, 1e-12);
    ASSERT_THROW(project_plus(r, c.check_qubits), std::domain_error);
}

TEST(project_plus, z_only_failure_matches_bruteforce) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    double p = 1e-4;
    auto res = simulate_circuit<Quad>(c, CircuitNoise::z_only(p));
    auto ref = oracle::z_only_bruteforce(c, p);
    ASSERT_NEAR(to_double(res.p_fail) / ref.p_fail, 1, 1e-9);
    // 15p to leading order.
    ASSERT_NEAR(ref.p_fail / (15 * p), 1, 2e-3);
}

TEST(project_plus, errors) {
    auto r = init_plus<double>(2);
    ASSERT_THROW(project_plus(r, {}), std::invalid_argument);
    ASSERT_THROW(project_plus(r, {5}), std::out_of_range);
}

TEST(fidelity_with_pure, pure_and_mixed) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    std::vector<Complex<double>> v(8);
    double s = 0;
    for (auto &x : v) {
        x = {g(rng), g(rng)};
        s += x.norm2();
    }
    for (auto &x : v) x = x / std::sqrt(s);
    ASSERT_NEAR(fidelity_with_pure(DM::from_pure(v), v), 1, 1e-14);
    ASSERT_NEAR(fidelity_with_pure(DM::maximally_mixed(3), v), 1.0 / 8, 1e-15);
    ASSERT_THROW(fidelity_with_pure(DM::maximally_mixed(2), v), std::invalid_argument);
}

TEST(fidelity_with_pure, fifteen_to_one_z_only) {
    auto r = simulate_circuit<Quad>(catalog(CircuitKind::fifteen_to_one), CircuitNoise::z_only(1e-4));
    ASSERT_NEAR(to_double(r.p_out) / 3.501e-11, 1, 1e-3);
}

// ---- invariants ----

TEST(density_properties, commuting_rotations_commute) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; t++) {
        auto a = random_state(3, rng), b = a;
        auto p = z("ZZI"), q = z("IZZ");
        apply_faulty_rotation(a, p, {}, {});
        apply_faulty_rotation(a, q, {}, {});
        apply_faulty_rotation(b, q, {}, {});
        apply_faulty_rotation(b, p, {}, {});
        ASSERT_LT(oracle::to_dense(a).max_abs_diff(oracle::to_dense(b)), 1e-14);
    }
}

TEST(density_properties, channel_is_linear) {
    std::mt19937_64 rng(13);
    auto a = random_state(3, rng), b = random_state(3, rng);
    RotationErrorProfile prof{0.1, 0.05, 0.02, 0.03};
    auto axis = z("ZXZ");
    DM mixed = a;
    mixed *= 0.3;
    DM bb = b;
    bb *= 0.7;
    mixed = mixed + bb;
    apply_faulty_rotation(mixed, axis, prof, {0});
    apply_faulty_rotation(a, axis, prof, {0});
    apply_faulty_rotation(b, axis, prof, {0});
    a *= 0.3;
    b *= 0.7;
    ASSERT_LT(oracle::to_dense(mixed).max_abs_diff(oracle::to_dense(a + b)), 1e-15);
}

TEST(density_properties, trace_and_hermiticity_preserved) {
    std::mt19937_64 rng(14);
    auto r = random_state(4, rng);
    std::uniform_real_distribution<double> u(0, 0.2);
    for (int t = 0; t < 50; t++) {
        apply_faulty_rotation(r, z(t % 2 ? "ZIZZ" : "XYIZ"), {u(rng), u(rng), u(rng), u(rng)}, {0, 1});
        apply_storage(r, t % 4, {u(rng), u(rng)}, 1);
        ASSERT_NEAR(r.trace(), 1, 1e-12);
        ASSERT_LT(r.hermiticity_error(), 1e-12);
    }
}
