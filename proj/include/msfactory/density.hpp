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

#ifndef MSFACTORY_DENSITY_HPP
#define MSFACTORY_DENSITY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "msfactory/numeric.hpp"
#include "msfactory/pauli.hpp"

namespace msf {

/// Per-rotation error probabilities. p_half, p_quarter, p_mquarter are the chances that the
/// pi/8 rotation comes out as k=5, k=3 or k=-1 instead of k=1.
struct RotationErrorProfile {
    double p_half = 0;
    double p_quarter = 0;
    double p_mquarter = 0;
    double p_z_output = 0;

    void validate() const {
        for (double p : {p_half, p_quarter, p_mquarter, p_z_output}) {
            if (!(p >= 0 && p < 1)) {
                throw std::domain_error("RotationErrorProfile: probability out of [0,1): " + std::to_string(p));
            }
        }
        if (p_half + p_quarter + p_mquarter > 1) {
            throw std::domain_error("RotationErrorProfile: error probabilities sum above 1");
        }
    }

    static RotationErrorProfile ideal() {
        return {};
    }
    /// Only P_{pi/2} errors.
    static RotationErrorProfile z_only(double p) {
        return {p, 0, 0, 0};
    }
    /// Symmetric Pauli error on the consumed magic state: p/3 each.
    static RotationErrorProfile random_pauli(double p) {
        return {p / 3, p / 3, p / 3, 0};
    }
    bool operator==(const RotationErrorProfile &) const = default;
};

struct StorageRates {
    double pX = 0;
    double pZ = 0;
    bool operator==(const StorageRates &) const = default;
};

/// Dense 2^n x 2^n density matrix. Row/column index bit (n-1-q) is qubit q.
template <typename Real = Quad>
class DensityMatrix {
   public:
    using C = Complex<Real>;

    DensityMatrix() = default;
    explicit DensityMatrix(int n) : n_(checked(n)), dim_(size_t{1} << n), data_(dim_ * dim_) {}

    static DensityMatrix init_plus(int n) {
        DensityMatrix r(n);
        Real v = Real(1) / Real(r.dim_);
        for (auto &e : r.data_) {
            e = C(v);
        }
        return r;
    }

    static DensityMatrix from_pure(const std::vector<C> &psi) {
        int n = 0;
        while ((size_t{1} << n) < psi.size()) {
            n++;
        }
        if ((size_t{1} << n) != psi.size() || n == 0) {
            throw std::invalid_argument("from_pure: length is not a power of two");
        }
        DensityMatrix r(n);
        for (size_t i = 0; i < r.dim_; i++) {
            for (size_t j = 0; j < r.dim_; j++) {
                r(i, j) = psi[i] * psi[j].conj();
            }
        }
        return r;
    }

    static DensityMatrix maximally_mixed(int n) {
        DensityMatrix r(n);
        Real v = Real(1) / Real(r.dim_);
        for (size_t i = 0; i < r.dim_; i++) {
            r(i, i) = C(v);
        }
        return r;
    }

    int num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return dim_;
    }
    C &operator()(size_t r, size_t c) {
        return data_[r * dim_ + c];
    }
    const C &operator()(size_t r, size_t c) const {
        return data_[r * dim_ + c];
    }

    Real trace() const {
        Real t = 0;
        for (size_t i = 0; i < dim_; i++) {
            t += (*this)(i, i).re;
        }
        return t;
    }

    Real hermiticity_error() const {
        Real m = 0;
        for (size_t i = 0; i < dim_; i++) {
            for (size_t j = i; j < dim_; j++) {
                auto d = (*this)(i, j) - (*this)(j, i).conj();
                using std::sqrt;
                Real a = sqrt(d.norm2());
                if (a > m) {
                    m = a;
                }
            }
        }
        return m;
    }

    DensityMatrix &operator*=(const Real &s) {
        for (auto &e : data_) {
            e *= s;
        }
        return *this;
    }
    friend DensityMatrix operator+(DensityMatrix a, const DensityMatrix &b) {
        for (size_t i = 0; i < a.data_.size(); i++) {
            a.data_[i] += b.data_[i];
        }
        return a;
    }

    /// rho <- A rho + B P rho P + i C (rho P - P rho). Covers every unitary mixture of
    /// exp(-i theta P) and every single-Pauli channel.
    void apply_pauli_mixture(const PauliProduct &p, const Real &a, const Real &b, const Real &c) {
        if (p.size() != n_) {
            throw std::invalid_argument("axis length " + std::to_string(p.size()) + " != qubit count " +
                                        std::to_string(n_));
        }
        PauliAction act(p);
        std::vector<C> out(data_.size());
        for (uint32_t i = 0; i < dim_; i++) {
            uint32_t i2 = i ^ act.flip;
            int ph_i2 = act.phase(i2);  // P_{i, i2} = i^ph_i2
            for (uint32_t j = 0; j < dim_; j++) {
                uint32_t j2 = j ^ act.flip;
                int ph_j = act.phase(j);  // P_{j2, j} = i^ph_j
                const C &rij = (*this)(i, j);
                C r = rij * a;
                if (b != 0) {
                    r += (*this)(i2, j2).times_i_pow(ph_i2 + ph_j) * b;
                }
                if (c != 0) {
                    // (rho P)_{ij} = rho_{i,j2} P_{j2,j};  (P rho)_{ij} = P_{i,i2} rho_{i2,j}
                    C comm = (*this)(i, j2).times_i_pow(ph_j) - (*this)(i2, j).times_i_pow(ph_i2);
                    r += comm.times_i_pow(1) * c;
                }
                out[i * dim_ + j] = r;
            }
        }
        data_.swap(out);
    }

    /// Conjugation by exp(-i theta P).
    void apply_rotation(const PauliProduct &p, const Real &theta) {
        using std::cos;
        using std::sin;
        Real c = cos(theta), s = sin(theta);
        apply_pauli_mixture(p, c * c, s * s, c * s);
    }

    /// rho <- (1-prob) rho + prob P rho P.
    void apply_pauli_channel(const PauliProduct &p, const Real &prob) {
        if (prob == 0) {
            return;
        }
        apply_pauli_mixture(p, Real(1) - prob, prob, Real(0));
    }

    /// Multiply by the projector (I + X_q)/2 on both sides. Not renormalized.
    void project_x_plus(int q) {
        uint32_t bit = 1u << (n_ - 1 - q);
        Real h = Real(1) / 2;
        // Rows then columns.
        std::vector<C> out(data_.size());
        for (uint32_t i = 0; i < dim_; i++) {
            for (uint32_t j = 0; j < dim_; j++) {
                out[i * dim_ + j] = ((*this)(i, j) + (*this)(i ^ bit, j)) * h;
            }
        }
        for (uint32_t i = 0; i < dim_; i++) {
            for (uint32_t j = 0; j < dim_; j++) {
                (*this)(i, j) = (out[i * dim_ + j] + out[i * dim_ + (j ^ bit)]) * h;
            }
        }
    }

    const std::vector<C> &data() const {
        return data_;
    }

   private:
    static int checked(int n) {
        if (n < 1 || n > kMaxDenseQubits) {
            throw std::length_error("DensityMatrix: qubit count " + std::to_string(n) + " outside [1," +
                                    std::to_string(kMaxDenseQubits) + "]");
        }
        return n;
    }

    int n_ = 0;
    size_t dim_ = 0;
    std::vector<C> data_;
};

template <typename Real = Quad>
DensityMatrix<Real> init_plus(int n) {
    return DensityMatrix<Real>::init_plus(n);
}

inline PauliProduct single_qubit_pauli(int n, int q, Pauli p) {
    auto letters = PauliProduct::identity(n).letters();
    letters.at(static_cast<size_t>(q)) = p;
    return PauliProduct(letters);
}

/// The faulty rotation map. sign = -1 mirrors every angle (a -pi/8 gate with mirrored errors).
template <typename Real>
void apply_faulty_rotation(DensityMatrix<Real> &rho, const PauliProduct &axis, const RotationErrorProfile &profile,
                           const std::vector<int> &output_qubits, int sign = 1) {
    profile.validate();
    if (axis.size() != rho.num_qubits()) {
        throw std::invalid_argument("apply_faulty_rotation: axis length mismatch");
    }
    using std::cos;
    using std::sin;
    const Real unit = pi<Real>() / 8;
    Real w0 = Real(1) - Real(profile.p_half) - Real(profile.p_quarter) - Real(profile.p_mquarter);
    const std::pair<Real, int> branches[4] = {
        {w0, 1}, {Real(profile.p_half), 5}, {Real(profile.p_quarter), 3}, {Real(profile.p_mquarter), -1}};
    Real a = 0, b = 0, c = 0;
    for (const auto &[w, k] : branches) {
        if (w == 0) {
            continue;
        }
        Real th = unit * (sign * k);
        Real co = cos(th), si = sin(th);
        a += w * co * co;
        b += w * si * si;
        c += w * co * si;
    }
    rho.apply_pauli_mixture(axis, a, b, c);
    if (profile.p_z_output > 0) {
        for (int q : axis.support()) {
            for (int o : output_qubits) {
                if (o == q) {
                    rho.apply_pauli_channel(single_qubit_pauli(rho.num_qubits(), q, Pauli::Z), Real(profile.p_z_output));
                }
            }
        }
    }
}

/// Conjugation by exp(-i axis (pi/8 + excess)), mirrored for sign = -1.
template <typename Real>
void apply_coherent_rotation(DensityMatrix<Real> &rho, const PauliProduct &axis, const Real &excess_angle,
                             int sign = 1) {
    rho.apply_rotation(axis, (pi<Real>() / 8 + excess_angle) * sign);
}

template <typename Real>
void apply_storage(DensityMatrix<Real> &rho, int qubit, const StorageRates &rates, double cycles) {
    if (qubit < 0 || qubit >= rho.num_qubits()) {
        throw std::out_of_range("apply_storage: qubit index out of range");
    }
    double px = rates.pX * cycles, pz = rates.pZ * cycles;
    if (!(px >= 0 && px < 1 && pz >= 0 && pz < 1)) {
        throw std::domain_error("apply_storage: accumulated flip probability outside [0,1)");
    }
    int n = rho.num_qubits();
    rho.apply_pauli_channel(single_qubit_pauli(n, qubit, Pauli::X), Real(px));
    rho.apply_pauli_channel(single_qubit_pauli(n, qubit, Pauli::Z), Real(pz));
}

template <typename Real>
struct ProjectionResult {
    DensityMatrix<Real> state;
    Real p_fail;
};

/// tr(Pi rho) with Pi projecting every check qubit onto X = +1.
template <typename Real>
Real pass_probability(DensityMatrix<Real> rho, const std::vector<int> &check_qubits) {
    for (int q : check_qubits) {
        if (q < 0 || q >= rho.num_qubits()) {
            throw std::out_of_range("pass_probability: check qubit out of range");
        }
        rho.project_x_plus(q);
    }
    return rho.trace();
}

/// Post-select all check qubits on X = +1.
template <typename Real>
ProjectionResult<Real> project_plus(DensityMatrix<Real> rho, const std::vector<int> &check_qubits) {
    if (check_qubits.empty()) {
        throw std::invalid_argument("project_plus: no check qubits");
    }
    for (int q : check_qubits) {
        if (q < 0 || q >= rho.num_qubits()) {
            throw std::out_of_range("project_plus: check qubit out of range");
        }
        rho.project_x_plus(q);
    }
    Real succ = rho.trace();
    if (!(succ > Real(1e-30))) {
        throw std::domain_error("project_plus: success probability is numerically zero");
    }
    rho *= Real(1) / succ;
    return {std::move(rho), Real(1) - succ};
}

/// <psi| rho |psi>.
template <typename Real>
Real fidelity_with_pure(const DensityMatrix<Real> &rho, const std::vector<Complex<Real>> &psi) {
    if (psi.size() != rho.dim()) {
        throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
    }
    Complex<Real> acc;
    for (size_t i = 0; i < rho.dim(); i++) {
        Complex<Real> row;
        for (size_t j = 0; j < rho.dim(); j++) {
            row += rho(i, j) * psi[j];
        }
        acc += psi[i].conj() * row;
    }
    return acc.re;
}

// ---- pure states ------------------------------------------------------------------------

template <typename Real>
std::vector<Complex<Real>> kron(const std::vector<Complex<Real>> &a, const std::vector<Complex<Real>> &b) {
    std::vector<Complex<Real>> r;
    r.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            r.push_back(x * y);
        }
    }
    return r;
}

template <typename Real>
std::vector<Complex<Real>> plus_state() {
    using std::sqrt;
    Real h = Real(1) / sqrt(Real(2));
    return {Complex<Real>(h), Complex<Real>(h)};
}

/// (|0> + e^{i phase} |1>)/sqrt 2.
template <typename Real>
std::vector<Complex<Real>> phased_plus_state(const Real &phase) {
    using std::sqrt;
    Real h = Real(1) / sqrt(Real(2));
    return {Complex<Real>(h), Complex<Real>::polar(phase) * h};
}

/// |m~> = (|0> + e^{-i pi/4}|1>)/sqrt 2, the state a -pi/8 Z rotation makes from |+>.
template <typename Real>
std::vector<Complex<Real>> magic_tilde_state() {
    return phased_plus_state<Real>(-pi<Real>() / 4);
}

/// |m> = (|0> + e^{i pi/4}|1>)/sqrt 2, the state a +pi/8 Z rotation makes from |+>.
template <typename Real>
std::vector<Complex<Real>> magic_state() {
    return phased_plus_state<Real>(pi<Real>() / 4);
}

/// CCZ|+++>.
template <typename Real>
std::vector<Complex<Real>> ccz_state() {
    using std::sqrt;
    Real v = Real(1) / sqrt(Real(8));
    std::vector<Complex<Real>> r(8, Complex<Real>(v));
    r[7] = Complex<Real>(-v);
    return r;
}

}  // namespace msf

#endif
