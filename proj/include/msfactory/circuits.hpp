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

#ifndef MSFACTORY_CIRCUITS_HPP
#define MSFACTORY_CIRCUITS_HPP

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "msfactory/density.hpp"
#include "msfactory/pauli.hpp"

namespace msf {

enum class CircuitKind { identity16, fifteen_to_one, twenty_to_four, identity15_4q, eight_to_ccz, ccz7 };

enum class IdealOutput { none, magic_outputs, ccz };

struct Circuit {
    std::string name;
    int n = 0;
    std::vector<Rotation> rotations;
    std::vector<int> check_qubits;   // 0-based
    std::vector<int> output_qubits;  // 0-based
    int outputs = 1;
    IdealOutput ideal = IdealOutput::none;
};

namespace detail {

/// Rows of "<sign> <bits>" where bit i set means Z on qubit i.
inline std::vector<Rotation> parse_z_rows(int n, std::initializer_list<std::string_view> rows) {
    std::vector<Rotation> r;
    for (auto row : rows) {
        int sign = row[0] == '-' ? -1 : 1;
        auto bits = row.substr(2);
        if (static_cast<int>(bits.size()) != n) {
            throw std::logic_error("bad catalog row");
        }
        std::vector<int> qs;
        for (int q = 0; q < n; q++) {
            if (bits[q] == '1') {
                qs.push_back(q);
            }
        }
        r.push_back({PauliProduct::z_on(n, qs), {sign}});
    }
    return r;
}

inline std::vector<Rotation> fifteen_rows() {
    return parse_z_rows(5, {
                               "+ 01000",  // 1
                               "+ 00100",  // 2
                               "+ 00010",  // 3
                               "+ 00001",  // 4
                               "+ 01110",  // 5
                               "+ 11100",  // 6
                               "+ 11010",  // 7
                               "+ 10110",  // 8
                               "+ 10011",  // 9
                               "+ 11001",  // 10
                               "+ 10101",  // 11
                               "+ 11111",  // 12
                               "+ 00111",  // 13
                               "+ 01011",  // 14
                               "+ 01101",  // 15
                           });
}

inline std::vector<Rotation> eight_ccz_rows() {
    return parse_z_rows(4, {"- 0001", "+ 1001", "+ 0101", "+ 0011", "- 1101", "- 1011", "- 0111", "+ 1111"});
}

inline std::vector<Rotation> ccz7_rows(int sign) {
    auto r = parse_z_rows(4, {"+ 1000", "+ 0100", "+ 0010", "- 1100", "- 1010", "- 0110", "+ 1110"});
    for (auto &x : r) {
        x.angle.k *= sign;
    }
    return r;
}

}  // namespace detail

inline Circuit catalog(CircuitKind kind) {
    Circuit c;
    switch (kind) {
        case CircuitKind::fifteen_to_one:
            c.name = "15-to-1";
            c.n = 5;
            c.rotations = detail::fifteen_rows();
            c.check_qubits = {1, 2, 3, 4};
            c.output_qubits = {0};
            c.outputs = 1;
            c.ideal = IdealOutput::magic_outputs;
            return c;
        case CircuitKind::identity16:
            c.name = "identity16";
            c.n = 5;
            c.rotations = detail::fifteen_rows();
            c.rotations.insert(c.rotations.begin(), Rotation{PauliProduct::z_on(5, {0}), {1}});
            return c;
        case CircuitKind::twenty_to_four:
            c.name = "20-to-4";
            c.n = 7;
            c.rotations = detail::parse_z_rows(7, {
                                                      "+ 0100100", "+ 0100010", "+ 1000100", "+ 1110100",
                                                      "+ 1101100", "+ 1000010", "+ 0010010", "+ 0001010",
                                                      "+ 1000110", "+ 0100110", "+ 1110110", "+ 1101110",
                                                      "+ 1000001", "+ 0100101", "+ 1000011", "+ 0100111",
                                                      "- 0111001", "- 1011101", "- 0111011", "- 1011111",
                                                  });
            c.check_qubits = {4, 5, 6};
            c.output_qubits = {0, 1, 2, 3};
            c.outputs = 4;
            c.ideal = IdealOutput::magic_outputs;
            return c;
        case CircuitKind::eight_to_ccz:
            c.name = "8-to-CCZ";
            c.n = 4;
            c.rotations = detail::eight_ccz_rows();
            c.check_qubits = {3};
            c.output_qubits = {0, 1, 2};
            c.outputs = 1;
            c.ideal = IdealOutput::ccz;
            return c;
        case CircuitKind::ccz7:
            c.name = "ccz7";
            c.n = 4;
            c.rotations = detail::ccz7_rows(+1);
            return c;
        case CircuitKind::identity15_4q: {
            c.name = "identity15-4q";
            c.n = 4;
            auto inv = detail::ccz7_rows(-1);
            auto eight = detail::eight_ccz_rows();
            c.rotations.assign(inv.begin(), inv.begin() + 3);
            c.rotations.insert(c.rotations.end(), eight.begin(), eight.end());
            c.rotations.insert(c.rotations.end(), inv.begin() + 3, inv.end());
            return c;
        }
    }
    throw std::invalid_argument("unknown circuit kind");
}

inline CircuitKind parse_circuit_kind(std::string_view s) {
    if (s == "identity16") return CircuitKind::identity16;
    if (s == "15to1" || s == "fifteen_to_one") return CircuitKind::fifteen_to_one;
    if (s == "20to4" || s == "twenty_to_four") return CircuitKind::twenty_to_four;
    if (s == "identity15_4q" || s == "identity15") return CircuitKind::identity15_4q;
    if (s == "8toccz" || s == "eight_to_ccz") return CircuitKind::eight_to_ccz;
    if (s == "ccz7") return CircuitKind::ccz7;
    throw std::invalid_argument("unknown circuit kind: " + std::string(s));
}

/// Noiseless ideal output of a distillation circuit (outputs then |+> on checks).
template <typename Real = Quad>
std::vector<Complex<Real>> ideal_output_state(const Circuit &c) {
    std::vector<Complex<Real>> psi{Complex<Real>(Real(1))};
    if (c.ideal == IdealOutput::none) {
        throw std::invalid_argument(c.name + " has no ideal output state");
    }
    int q = 0;
    if (c.ideal == IdealOutput::ccz) {
        psi = ccz_state<Real>();
        q = 3;
    }
    for (; q < c.n; q++) {
        bool is_out = false;
        for (int o : c.output_qubits) {
            is_out |= o == q;
        }
        psi = kron(psi, is_out ? magic_tilde_state<Real>() : plus_state<Real>());
    }
    return psi;
}

inline DenseMatrix circuit_unitary(int n, const std::vector<Rotation> &rots) {
    auto u = DenseMatrix::identity(size_t{1} << n);
    for (const auto &r : rots) {
        if (r.axis.size() != n) {
            throw std::invalid_argument("rotation width does not match qubit count");
        }
        u = rotation_unitary(r) * u;
    }
    return u;
}

inline bool verify_equivalence(int n, const std::vector<Rotation> &a, const std::vector<Rotation> &b, double tol = 1e-9) {
    return equal_up_to_phase(circuit_unitary(n, a), circuit_unitary(n, b), tol);
}

inline bool verify_equivalence(const Circuit &a, const Circuit &b, double tol = 1e-9) {
    if (a.n != b.n) {
        throw std::invalid_argument("verify_equivalence: qubit counts differ");
    }
    return verify_equivalence(a.n, a.rotations, b.rotations, tol);
}

// ---- pure-state helpers used by enumeration ---------------------------------------------

using CVec = std::vector<std::complex<double>>;

inline CVec apply_pauli(const PauliProduct &p, const CVec &psi) {
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    PauliAction act(p);
    CVec out(psi.size());
    for (uint32_t x = 0; x < psi.size(); x++) {
        out[x ^ act.flip] = ipow[act.phase(x) & 3] * psi[x];
    }
    return out;
}

inline void apply_rotation(CVec &psi, const PauliProduct &p, double theta) {
    auto pp = apply_pauli(p, psi);
    double c = std::cos(theta), s = std::sin(theta);
    for (size_t i = 0; i < psi.size(); i++) {
        psi[i] = c * psi[i] + std::complex<double>(0, -s) * pp[i];
    }
}

/// (I + X_q)/2 on a pure state.
inline void project_x_plus(CVec &psi, int n, int q) {
    uint32_t bit = 1u << (n - 1 - q);
    CVec out(psi.size());
    for (uint32_t x = 0; x < psi.size(); x++) {
        out[x] = 0.5 * (psi[x] + psi[x ^ bit]);
    }
    psi.swap(out);
}

inline double norm2(const CVec &v) {
    double s = 0;
    for (auto &x : v) s += std::norm(x);
    return s;
}

inline CVec to_cvec(const std::vector<Complex<double>> &v) {
    CVec r;
    for (auto &x : v) r.push_back(x.to_std());
    return r;
}

/// Count size-`order` subsets of rotations that, when turned into P_{pi/2} errors, pass every
/// check and leave a wrong output.
inline long long undetected_error_sets(const Circuit &c, int order) {
    int m = static_cast<int>(c.rotations.size());
    if (order < 0 || order > m) {
        throw std::invalid_argument("undetected_error_sets: order out of range");
    }
    auto ideal = to_cvec(ideal_output_state<double>(c));
    long long count = 0;
    std::vector<int> idx(static_cast<size_t>(order));
    for (int i = 0; i < order; i++) idx[i] = i;
    while (true) {
        CVec psi(size_t{1} << c.n, std::complex<double>(std::pow(2.0, -c.n / 2.0)));
        size_t next = 0;
        for (int r = 0; r < m; r++) {
            int k = c.rotations[r].angle.k;
            if (next < idx.size() && idx[next] == r) {
                k = k > 0 ? k + 4 : k - 4;
                next++;
            }
            apply_rotation(psi, c.rotations[r].axis, k * M_PI / 8);
        }
        for (int q : c.check_qubits) project_x_plus(psi, c.n, q);
        double pass = norm2(psi);
        if (pass > 1 - 1e-9) {
            std::complex<double> ov = 0;
            for (size_t i = 0; i < psi.size(); i++) ov += std::conj(ideal[i]) * psi[i];
            if (std::norm(ov) / pass < 1 - 1e-9) count++;
        }
        // advance combination
        int i = order - 1;
        while (i >= 0 && idx[i] == m - order + i) i--;
        if (i < 0) break;
        idx[i]++;
        for (int j = i + 1; j < order; j++) idx[j] = idx[j - 1] + 1;
    }
    return count;
}

// ---- circuit-level noise ---------------------------------------------------------------

struct CircuitNoise {
    enum class Kind { z_only, random_pauli, coherent } kind = Kind::z_only;
    double value = 0;  // probability, or excess angle in radians for coherent

    static CircuitNoise z_only(double p) { return {Kind::z_only, p}; }
    static CircuitNoise random_pauli(double p) { return {Kind::random_pauli, p}; }
    static CircuitNoise coherent(double phi) { return {Kind::coherent, phi}; }
};

template <typename Real = Quad>
struct CircuitResult {
    Real p_out;  // joint infidelity divided by outputs
    Real p_fail;
};

template <typename Real = Quad>
CircuitResult<Real> simulate_circuit(const Circuit &c, const CircuitNoise &noise) {
    if (noise.kind != CircuitNoise::Kind::coherent && !(noise.value >= 0 && noise.value <= 0.1)) {
        throw std::domain_error("simulate_circuit: probability outside [0, 0.1]");
    }
    auto rho = DensityMatrix<Real>::init_plus(c.n);
    RotationErrorProfile prof = noise.kind == CircuitNoise::Kind::z_only ? RotationErrorProfile::z_only(noise.value)
                                                                          : RotationErrorProfile::random_pauli(noise.value);
    for (const auto &r : c.rotations) {
        int sign = r.angle.k < 0 ? -1 : 1;
        if (noise.kind == CircuitNoise::Kind::coherent) {
            apply_coherent_rotation(rho, r.axis, Real(noise.value), sign);
        } else {
            apply_faulty_rotation(rho, r.axis, prof, c.output_qubits, sign);
        }
    }
    auto proj = project_plus(std::move(rho), c.check_qubits);
    Real f = fidelity_with_pure(proj.state, ideal_output_state<Real>(c));
    return {(Real(1) - f) / Real(c.outputs), proj.p_fail};
}

/// One rotation per line: sign then axis letters.
inline std::string export_table(const Circuit &c) {
    std::ostringstream out;
    out << "# " << c.name << " n=" << c.n << "\n";
    for (const auto &r : c.rotations) {
        out << (r.angle.k < 0 ? '-' : '+') << ' ' << r.axis.str() << '\n';
    }
    return out.str();
}

}  // namespace msf

#endif
