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

#include <set>

#include "gtest/gtest.h"
#include "msfactory/circuits.hpp"
#include "msfactory/gadgets.hpp"
#include "oracles.hpp"

using namespace msf;

namespace {

const CircuitKind kProtocols[] = {CircuitKind::fifteen_to_one, CircuitKind::twenty_to_four, CircuitKind::eight_to_ccz};

std::set<int> support_set(const Rotation &r) {
    auto s = r.axis.support();
    return {s.begin(), s.end()};
}

}  // namespace

TEST(catalog, fifteen_to_one_shape) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    ASSERT_EQ(c.n, 5);
    ASSERT_EQ(c.rotations.size(), 15u);
    ASSERT_EQ(c.check_qubits, (std::vector<int>{1, 2, 3, 4}));
    ASSERT_EQ(c.output_qubits, (std::vector<int>{0}));
    ASSERT_EQ(c.outputs, 1);
}

TEST(catalog, twenty_to_four_shape) {
    auto c = catalog(CircuitKind::twenty_to_four);
    ASSERT_EQ(c.n, 7);
    ASSERT_EQ(c.rotations.size(), 20u);
    ASSERT_EQ(c.check_qubits, (std::vector<int>{4, 5, 6}));
    ASSERT_EQ(c.output_qubits, (std::vector<int>{0, 1, 2, 3}));
    ASSERT_EQ(c.outputs, 4);
}

TEST(catalog, eight_to_ccz_shape) {
    auto c = catalog(CircuitKind::eight_to_ccz);
    ASSERT_EQ(c.n, 4);
    ASSERT_EQ(c.rotations.size(), 8u);
    ASSERT_EQ(c.check_qubits, (std::vector<int>{3}));
    ASSERT_EQ(c.output_qubits, (std::vector<int>{0, 1, 2}));
}

TEST(catalog, fifteen_to_one_anchor_rotation_nine) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    ASSERT_EQ(c.rotations[8].axis.str(), "ZIIZZ");
    ASSERT_EQ(c.rotations[8].angle.k, 1);
}

TEST(catalog, fifteen_to_one_anchor_single_qubit_rotations) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    for (int i = 0; i < 4; i++) ASSERT_EQ(support_set(c.rotations[i]), (std::set<int>{i + 1}));
    for (size_t i = 4; i < c.rotations.size(); i++) ASSERT_GE(c.rotations[i].axis.support().size(), 3u);
}

TEST(catalog, fifteen_to_one_anchor_x_on_qubit_three) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    auto x3 = PauliProduct::parse("IIXII");
    std::vector<int> hit;
    for (int i = 0; i < 7; i++)
        if (!commutes(x3, c.rotations[i].axis)) hit.push_back(i + 1);
    ASSERT_EQ(hit, (std::vector<int>{2, 5, 6}));
}

TEST(catalog, fifteen_to_one_anchor_undetected_triple) {
    auto c = catalog(CircuitKind::fifteen_to_one);
    std::set<int> acc;
    for (int r : {5, 11, 14})
        for (int q : support_set(c.rotations[r - 1])) {
            if (!acc.erase(q)) acc.insert(q);
        }
    ASSERT_EQ(acc, (std::set<int>{0}));
}

TEST(catalog, invariants) {
    for (auto k : kProtocols) {
        auto c = catalog(k);
        for (const auto &r : c.rotations) ASSERT_TRUE(r.axis.is_z_type()) << c.name;
        for (int q : c.check_qubits) {
            bool used = false;
            for (const auto &r : c.rotations) used |= support_set(r).count(q) > 0;
            ASSERT_TRUE(used) << c.name << " check " << q;
            for (int o : c.output_qubits) ASSERT_NE(q, o);
        }
    }
}

TEST(catalog, parse_kind) {
    ASSERT_EQ(parse_circuit_kind("15to1"), CircuitKind::fifteen_to_one);
    ASSERT_EQ(parse_circuit_kind("twenty_to_four"), CircuitKind::twenty_to_four);
    ASSERT_EQ(parse_circuit_kind("8toccz"), CircuitKind::eight_to_ccz);
    ASSERT_THROW(parse_circuit_kind("15to2"), std::invalid_argument);
}

TEST(verify_equivalence, identity16_is_identity) {
    ASSERT_TRUE(verify_equivalence(5, catalog(CircuitKind::identity16).rotations, {}));
}

TEST(verify_equivalence, fifteen_to_one_is_single_rotation) {
    std::vector<Rotation> single = {Rotation{PauliProduct::z_on(5, {0}), {-1}}};
    ASSERT_TRUE(verify_equivalence(5, catalog(CircuitKind::fifteen_to_one).rotations, single));
    // Negative case: the opposite sign is a different unitary.
    std::vector<Rotation> wrong = {Rotation{PauliProduct::z_on(5, {0}), {1}}};
    ASSERT_FALSE(verify_equivalence(5, catalog(CircuitKind::fifteen_to_one).rotations, wrong));
}

TEST(verify_equivalence, eight_to_ccz_matches_seven_rotations) {
    ASSERT_TRUE(verify_equivalence(catalog(CircuitKind::eight_to_ccz), catalog(CircuitKind::ccz7)));
    ASSERT_TRUE(verify_equivalence(4, catalog(CircuitKind::identity15_4q).rotations, {}));
}

TEST(verify_equivalence, dropping_a_rotation_breaks_identity) {
    auto r = catalog(CircuitKind::identity16).rotations;
    r.pop_back();
    ASSERT_FALSE(verify_equivalence(5, r, {}));
}

TEST(verify_equivalence, width_mismatch_throws) {
    std::vector<Rotation> a = {Rotation{PauliProduct::parse("ZZ"), {1}}};
    ASSERT_THROW(verify_equivalence(3, a, {}), std::invalid_argument);
}

TEST(ideal_output, twenty_to_four_prepares_ideal_state) {
    auto c = catalog(CircuitKind::twenty_to_four);
    auto rho = init_plus<Quad>(c.n);
    for (const auto &r : c.rotations) apply_faulty_rotation(rho, r.axis, {}, {}, r.angle.k < 0 ? -1 : 1);
    ASSERT_GE(to_double(fidelity_with_pure(rho, ideal_output_state<Quad>(c))), 1 - 1e-10);
}

TEST(undetected_error_sets, published_counts) {
    auto f = catalog(CircuitKind::fifteen_to_one);
    ASSERT_EQ(undetected_error_sets(f, 1), 0);
    ASSERT_EQ(undetected_error_sets(f, 2), 0);
    ASSERT_EQ(undetected_error_sets(f, 3), 35);
    auto t = catalog(CircuitKind::twenty_to_four);
    ASSERT_EQ(undetected_error_sets(t, 1), 0);
    ASSERT_EQ(undetected_error_sets(t, 2), 22);
    auto e = catalog(CircuitKind::eight_to_ccz);
    ASSERT_EQ(undetected_error_sets(e, 1), 0);
    ASSERT_EQ(undetected_error_sets(e, 2), 28);
}

TEST(undetected_error_sets, order_out_of_range) {
    ASSERT_THROW(undetected_error_sets(catalog(CircuitKind::eight_to_ccz), 9), std::invalid_argument);
}

TEST(simulate_circuit, fifteen_to_one_z_only) {
    auto r = simulate_circuit(catalog(CircuitKind::fifteen_to_one), CircuitNoise::z_only(1e-4));
    ASSERT_NEAR(to_double(r.p_out) / 3.501e-11, 1, 1e-3);
}

TEST(simulate_circuit, fifteen_to_one_random_pauli) {
    auto r = simulate_circuit(catalog(CircuitKind::fifteen_to_one), CircuitNoise::random_pauli(1e-4));
    ASSERT_NEAR(to_double(r.p_out) / 1.03724e-11, 1, 1e-4);
}

TEST(simulate_circuit, fifteen_to_one_coherent) {
    auto r = simulate_circuit(catalog(CircuitKind::fifteen_to_one), CircuitNoise::coherent(std::asin(0.01)));
    ASSERT_NEAR(to_double(r.p_out) / 1.22e-9, 1, 5e-3);
}

TEST(simulate_circuit, twenty_to_four_z_only) {
    auto r = simulate_circuit(catalog(CircuitKind::twenty_to_four), CircuitNoise::z_only(1e-4));
    ASSERT_NEAR(to_double(r.p_out) / 5.505e-8, 1, 1e-3);
}

TEST(simulate_circuit, noiseless_is_clean) {
    for (auto k : kProtocols) {
        auto r = simulate_circuit(catalog(k), CircuitNoise::z_only(0));
        ASSERT_LE(std::fabs(to_double(r.p_out)), 1e-10);
        ASSERT_LE(std::fabs(to_double(r.p_fail)), 1e-10);
    }
}

TEST(simulate_circuit, matches_z_only_bruteforce) {
    // Exhaustive enumeration of all 2^m fault patterns is an independent oracle.
    for (auto k : kProtocols) {
        auto c = catalog(k);
        for (double p : {1e-3, 1e-2}) {
            auto r = simulate_circuit(c, CircuitNoise::z_only(p));
            auto ref = oracle::z_only_bruteforce(c, p);
            ASSERT_NEAR(to_double(r.p_out) / ref.p_out, 1, 1e-9) << c.name << " p=" << p;
            ASSERT_NEAR(to_double(r.p_fail) / ref.p_fail, 1, 1e-9) << c.name << " p=" << p;
        }
    }
}

TEST(simulate_circuit, rejects_bad_probability) {
    auto c = catalog(CircuitKind::eight_to_ccz);
    ASSERT_THROW(simulate_circuit(c, CircuitNoise::z_only(0.2)), std::domain_error);
    ASSERT_THROW(simulate_circuit(c, CircuitNoise::random_pauli(-1e-3)), std::domain_error);
}

TEST(simulate_circuit, ideal_state_required) {
    ASSERT_THROW(simulate_circuit(catalog(CircuitKind::ccz7), CircuitNoise::z_only(1e-3)), std::invalid_argument);
}

TEST(simulate_circuit, coherent_worse_than_random_pauli) {
    // Gate-fidelity-matched: sin^2(phi) = p.
    auto c = catalog(CircuitKind::fifteen_to_one);
    double p = 1e-4;
    auto coh = simulate_circuit(c, CircuitNoise::coherent(std::asin(std::sqrt(p))));
    auto rp = simulate_circuit(c, CircuitNoise::random_pauli(p));
    ASSERT_GT(coh.p_out, rp.p_out * 10);
}

TEST(export_table, one_line_per_rotation) {
    auto text = export_table(catalog(CircuitKind::twenty_to_four));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line, "# 20-to-4 n=7");
    int n = 0, minus = 0;
    while (std::getline(in, line)) {
        ASSERT_EQ(line.size(), 9u);
        minus += line[0] == '-';
        n++;
    }
    ASSERT_EQ(n, 20);
    ASSERT_EQ(minus, 4);
}

TEST(gadgets, all_verify) {
    for (auto k : {GadgetKind::consumption, GadgetKind::t_measurement, GadgetKind::delayed_choice,
                   GadgetKind::auto_corrected})
        ASSERT_TRUE(verify_gadget(k));
}

TEST(gadgets, t_measurement_x_error_gives_s_dagger) {
    using namespace gadget;
    std::mt19937_64 rng(21);
    auto z = PauliProduct::parse("Z");
    auto psi = random_state(1, rng);
    auto target = rotated(rotated(psi, z, M_PI / 8), z, -M_PI / 4);
    for (const auto &out : t_measurement_with_error(psi, Pauli::X)) ASSERT_TRUE(same_up_to_phase(out, target));
    auto ideal = rotated(psi, z, M_PI / 8);
    for (const auto &out : t_measurement_with_error(psi, Pauli::I)) ASSERT_TRUE(same_up_to_phase(out, ideal));
}

TEST(gadgets, consumption_on_plus_gives_magic_state) {
    using namespace gadget;
    ASSERT_TRUE(same_up_to_phase(rotated(kPlus, PauliProduct::parse("Z"), M_PI / 8), kMagic));
    ASSERT_TRUE(check_consumption(PauliProduct::parse("Z"), kPlus));
}

TEST(gadgets, parse_kind) {
    ASSERT_EQ(parse_gadget_kind("auto_corrected"), GadgetKind::auto_corrected);
    ASSERT_THROW(parse_gadget_kind("teleport"), std::invalid_argument);
}
