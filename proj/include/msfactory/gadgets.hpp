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

#ifndef MSFACTORY_GADGETS_HPP
#define MSFACTORY_GADGETS_HPP

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "msfactory/circuits.hpp"

namespace msf {

enum class GadgetKind { consumption, t_measurement, delayed_choice, auto_corrected };

inline GadgetKind parse_gadget_kind(std::string_view s) {
    if (s == "consumption") return GadgetKind::consumption;
    if (s == "t_measurement") return GadgetKind::t_measurement;
    if (s == "delayed_choice") return GadgetKind::delayed_choice;
    if (s == "auto_corrected") return GadgetKind::auto_corrected;
    throw std::invalid_argument("unknown gadget: " + std::string(s));
}

namespace gadget {

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;

inline int num_qubits(const CVec &v) {
    int n = 0;
    while ((size_t{1} << n) < v.size()) n++;
    return n;
}

/// (I + s P)/2 psi, unnormalized.
inline CVec project(const CVec &psi, const PauliProduct &p, int s) {
    auto pp = apply_pauli(p, psi);
    CVec out(psi.size());
    for (size_t i = 0; i < psi.size(); i++) out[i] = 0.5 * (psi[i] + double(s) * pp[i]);
    return out;
}

inline void apply_1q(CVec &psi, int q, const Mat2 &m) {
    int n = num_qubits(psi);
    uint32_t bit = 1u << (n - 1 - q);
    for (uint32_t x = 0; x < psi.size(); x++) {
        if (x & bit) continue;
        C a = psi[x], b = psi[x | bit];
        psi[x] = m[0] * a + m[1] * b;
        psi[x | bit] = m[2] * a + m[3] * b;
    }
}

inline const Mat2 kH = {C(M_SQRT1_2), C(M_SQRT1_2), C(M_SQRT1_2), C(-M_SQRT1_2)};
inline const Mat2 kT = {C(1), C(0), C(0), std::polar(1.0, M_PI / 4)};

/// Drop qubit q, keeping the component with Z-basis value `bit`.
inline CVec take(const CVec &psi, int q, int bit) {
    int n = num_qubits(psi);
    uint32_t qb = 1u << (n - 1 - q);
    CVec out;
    for (uint32_t x = 0; x < psi.size(); x++) {
        if (((x & qb) != 0) == (bit == 1)) out.push_back(psi[x]);
    }
    return out;
}

/// Drop qubit q after measuring it in the X basis with outcome s.
inline CVec take_x(CVec psi, int q, int s) {
    apply_1q(psi, q, kH);
    return take(psi, q, s == 1 ? 0 : 1);
}

inline CVec kron_vec(const CVec &a, const CVec &b) {
    CVec r;
    for (auto &x : a)
        for (auto &y : b) r.push_back(x * y);
    return r;
}

inline bool same_up_to_phase(const CVec &a, const CVec &b, double tol = 1e-9) {
    double na = norm2(a), nb = norm2(b);
    if (nb < 1e-300 || na < 1e-300) return false;
    C ov = 0;
    for (size_t i = 0; i < a.size(); i++) ov += std::conj(a[i]) * b[i];
    return std::abs(1 - std::norm(ov) / (na * nb)) < tol;
}

/// Pauli P on the first k qubits of a wider register.
inline PauliProduct extend(const PauliProduct &p, std::initializer_list<Pauli> tail) {
    auto l = p.letters();
    l.insert(l.end(), tail.begin(), tail.end());
    return PauliProduct(l);
}

inline CVec rotated(CVec psi, const PauliProduct &p, double theta) {
    apply_rotation(psi, p, theta);
    return psi;
}

inline const CVec kPlus = {C(M_SQRT1_2), C(M_SQRT1_2)};
inline const CVec kZero = {C(1), C(0)};
inline const CVec kMagic = {C(M_SQRT1_2), std::polar(M_SQRT1_2, M_PI / 4)};

/// Measure P (x) Z_m against |m>, fix up with P_{pi/4} and P_{pi/2}.
inline bool check_consumption(const PauliProduct &p, const CVec &psi) {
    using I = Pauli;
    auto target = rotated(psi, p, M_PI / 8);
    auto st = kron_vec(psi, kMagic);
    int m = p.size();
    for (int s : {1, -1}) {
        auto a = project(st, extend(p, {I::Z}), s);
        if (norm2(a) < 1e-12) continue;
        for (int x : {1, -1}) {
            auto data = take_x(a, m, x);
            if (norm2(data) < 1e-12) continue;
            if (s == -1) apply_rotation(data, p, M_PI / 4);
            if (x == -1) data = apply_pauli(p, data);
            if (!same_up_to_phase(data, target)) return false;
        }
    }
    return true;
}

/// Faulty-T-measurement gadget: |+> ancilla, P (x) Z_a, T on the ancilla, X readout.
inline bool check_t_measurement(const PauliProduct &p, const CVec &psi) {
    using I = Pauli;
    auto target = rotated(psi, p, M_PI / 8);
    auto st = kron_vec(psi, kPlus);
    int a = p.size();
    for (int s : {1, -1}) {
        auto b = project(st, extend(p, {I::Z}), s);
        if (norm2(b) < 1e-12) continue;
        if (s == -1) b = apply_pauli(single_qubit_pauli(a + 1, a, I::X), b);
        apply_1q(b, a, kT);
        for (int x : {1, -1}) {
            auto data = take_x(b, a, x);
            if (norm2(data) < 1e-12) continue;
            if (x == -1) data = apply_pauli(p, data);
            if (!same_up_to_phase(data, target)) return false;
        }
    }
    return true;
}

/// Single-qubit T measurement with a Pauli error `e` on the ancilla just before the T gate.
/// Returns the data state for every readout branch.
inline std::vector<CVec> t_measurement_with_error(const CVec &psi, Pauli e) {
    auto st = kron_vec(psi, kZero);
    // CNOT data -> ancilla
    CVec c(st.size());
    for (uint32_t x = 0; x < 4; x++) {
        uint32_t y = (x & 2) ? x ^ 1 : x;
        c[y] = st[x];
    }
    if (e != Pauli::I) c = apply_pauli(single_qubit_pauli(2, 1, e), c);
    apply_1q(c, 1, kT);
    std::vector<CVec> out;
    for (int x : {1, -1}) {
        auto data = take_x(c, 1, x);
        if (norm2(data) < 1e-12) continue;
        if (x == -1) data = apply_pauli(PauliProduct::parse("Z"), data);
        out.push_back(data);
    }
    return out;
}

/// Extra |+> ancilla a: P (x) Z_m (x) Z_a, then a in Z ("on") or X ("off").
inline bool check_delayed_choice(const PauliProduct &p, const CVec &psi) {
    using I = Pauli;
    auto on_target = rotated(psi, p, M_PI / 8);
    auto off_target = kron_vec(psi, kMagic);
    auto st = kron_vec(kron_vec(psi, kMagic), kPlus);
    int m = p.size(), a = m + 1;
    for (int s : {1, -1}) {
        auto b = project(st, extend(p, {I::Z, I::Z}), s);
        if (norm2(b) < 1e-12) continue;
        // on
        for (int z : {1, -1}) {
            auto c = take(b, a, z == 1 ? 0 : 1);
            if (norm2(c) < 1e-12) continue;
            for (int x : {1, -1}) {
                auto data = take_x(c, m, x);
                if (norm2(data) < 1e-12) continue;
                if (s * z == -1) apply_rotation(data, p, M_PI / 4);
                if (x == -1) data = apply_pauli(p, data);
                if (!same_up_to_phase(data, on_target)) return false;
            }
        }
        // off
        for (int r : {1, -1}) {
            auto c = take_x(b, a, r);
            if (norm2(c) < 1e-12) continue;
            if (r == -1) c = apply_pauli(extend(p, {I::Z}), c);
            if (!same_up_to_phase(c, off_target)) return false;
        }
    }
    return true;
}

/// |0> ancilla; P (x) Z_m, then Z_m (x) Y_a; the ancilla basis depends on the first outcome,
/// so the P_{pi/4} fix-up never has to be applied by hand.
inline bool check_auto_corrected(const PauliProduct &p, const CVec &psi) {
    using I = Pauli;
    auto target = rotated(psi, p, M_PI / 8);
    auto st = kron_vec(kron_vec(psi, kMagic), kZero);
    int m = p.size(), a = m + 1;
    auto ident = PauliProduct::identity(m);
    for (int s : {1, -1}) {
        auto b = project(st, extend(p, {I::Z, I::I}), s);
        if (norm2(b) < 1e-12) continue;
        for (int t : {1, -1}) {
            auto c = project(b, extend(ident, {I::Z, I::Y}), t);
            if (norm2(c) < 1e-12) continue;
            for (int bo : {1, -1}) {
                auto d = s == 1 ? take(c, a, bo == 1 ? 0 : 1) : take_x(c, a, bo);
                if (norm2(d) < 1e-12) continue;
                for (int x : {1, -1}) {
                    auto data = take_x(d, m, x);
                    if (norm2(data) < 1e-12) continue;
                    int parity = x * bo * (s == -1 ? t : 1);
                    if (parity == -1) data = apply_pauli(p, data);
                    if (!same_up_to_phase(data, target)) return false;
                }
            }
        }
    }
    return true;
}

inline CVec random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CVec v(size_t{1} << n);
    for (auto &x : v) x = C(g(rng), g(rng));
    double s = std::sqrt(norm2(v));
    for (auto &x : v) x /= s;
    return v;
}

}  // namespace gadget

/// Branch-wise check over fixed and random data states, for several axes on 1-2 data qubits.
inline bool verify_gadget(GadgetKind kind, uint64_t seed = 7, int random_states = 8) {
    using namespace gadget;
    std::mt19937_64 rng(seed);
    std::vector<PauliProduct> axes = {PauliProduct::parse("Z"),  PauliProduct::parse("X"),  PauliProduct::parse("Y"),
                                      PauliProduct::parse("ZZ"), PauliProduct::parse("XY"), PauliProduct::parse("ZI")};
    for (const auto &p : axes) {
        int n = p.size();
        std::vector<CVec> states;
        CVec plus = {C(1)};
        for (int i = 0; i < n; i++) plus = kron_vec(plus, kPlus);
        states.push_back(plus);
        CVec zero(size_t{1} << n);
        zero[0] = 1;
        states.push_back(zero);
        for (int i = 0; i < random_states; i++) states.push_back(random_state(n, rng));
        for (const auto &psi : states) {
            bool ok = false;
            switch (kind) {
                case GadgetKind::consumption:
                    ok = check_consumption(p, psi);
                    break;
                case GadgetKind::t_measurement:
                    ok = check_t_measurement(p, psi);
                    break;
                case GadgetKind::delayed_choice:
                    ok = check_delayed_choice(p, psi);
                    break;
                case GadgetKind::auto_corrected:
                    ok = check_auto_corrected(p, psi);
                    break;
            }
            if (!ok) return false;
        }
    }
    if (kind == GadgetKind::t_measurement) {
        // Ancilla errors before T turn into Clifford errors on the data.
        const std::pair<Pauli, double> cases[] = {
            {Pauli::I, 0}, {Pauli::X, -M_PI / 4}, {Pauli::Y, M_PI / 4}, {Pauli::Z, M_PI / 2}};
        auto z = PauliProduct::parse("Z");
        for (int i = 0; i < random_states; i++) {
            auto psi = random_state(1, rng);
            for (auto [e, extra] : cases) {
                auto target = rotated(rotated(psi, z, M_PI / 8), z, extra);
                for (const auto &out : t_measurement_with_error(psi, e)) {
                    if (!same_up_to_phase(out, target)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace msf

#endif
