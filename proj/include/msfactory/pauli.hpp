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

#ifndef MSFACTORY_PAULI_HPP
#define MSFACTORY_PAULI_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msf {

/// Largest qubit count for which dense operators are built.
constexpr int kMaxDenseQubits = 10;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

inline Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

/// An n-qubit tensor product of Pauli letters. Qubit 0 is the leftmost letter and the
/// most significant bit of computational-basis indices.
class PauliProduct {
   public:
    PauliProduct() = default;
    explicit PauliProduct(std::vector<Pauli> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) {
            throw std::invalid_argument("PauliProduct needs at least one qubit");
        }
    }

    static PauliProduct parse(std::string_view text) {
        std::vector<Pauli> v;
        v.reserve(text.size());
        for (char c : text) {
            v.push_back(pauli_from_char(c));
        }
        return PauliProduct(std::move(v));
    }

    static PauliProduct identity(int n) {
        return PauliProduct(std::vector<Pauli>(static_cast<size_t>(n), Pauli::I));
    }

    /// Z on every listed qubit, I elsewhere.
    static PauliProduct z_on(int n, const std::vector<int> &qubits) {
        auto p = identity(n);
        for (int q : qubits) {
            p.letters_.at(static_cast<size_t>(q)) = Pauli::Z;
        }
        return p;
    }

    int size() const {
        return static_cast<int>(letters_.size());
    }
    Pauli operator[](int q) const {
        return letters_[static_cast<size_t>(q)];
    }
    const std::vector<Pauli> &letters() const {
        return letters_;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int q = 0; q < size(); q++) {
            if (letters_[q] != Pauli::I) {
                s.push_back(q);
            }
        }
        return s;
    }
    bool is_identity() const {
        for (auto p : letters_) {
            if (p != Pauli::I) {
                return false;
            }
        }
        return true;
    }
    bool is_z_type() const {
        for (auto p : letters_) {
            if (p != Pauli::I && p != Pauli::Z) {
                return false;
            }
        }
        return true;
    }
    std::string str() const {
        std::string s;
        for (auto p : letters_) {
            s.push_back(pauli_char(p));
        }
        return s;
    }

    bool operator==(const PauliProduct &o) const = default;

   private:
    std::vector<Pauli> letters_;
};

inline bool commutes(const PauliProduct &a, const PauliProduct &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("commutes: length mismatch");
    }
    int anti = 0;
    for (int q = 0; q < a.size(); q++) {
        if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) {
            anti++;
        }
    }
    return anti % 2 == 0;
}

/// Angle k*pi/8.
struct RotationAngle {
    int k = 1;
    bool operator==(const RotationAngle &) const = default;
};

struct Rotation {
    PauliProduct axis;
    RotationAngle angle;
    bool operator==(const Rotation &) const = default;
};

/// P|x> = i^(phase(x)) |x ^ flip>. Every Pauli product is a signed/phased permutation,
/// which is what lets the simulators avoid dense products.
struct PauliAction {
    uint32_t flip = 0;   // X or Y positions
    uint32_t zmask = 0;  // Z or Y positions
    int y_count = 0;

    explicit PauliAction(const PauliProduct &p) {
        int n = p.size();
        for (int q = 0; q < n; q++) {
            uint32_t bit = 1u << (n - 1 - q);
            switch (p[q]) {
                case Pauli::X:
                    flip |= bit;
                    break;
                case Pauli::Y:
                    flip |= bit;
                    zmask |= bit;
                    y_count++;
                    break;
                case Pauli::Z:
                    zmask |= bit;
                    break;
                default:
                    break;
            }
        }
    }

    /// Exponent of i in P|x> = i^e |x^flip>.
    int phase(uint32_t x) const {
        // Y = iXZ: Z part acts first on |x>, contributing (-1)^{x.zmask}.
        return y_count + 2 * (__builtin_popcount(x & zmask) & 1);
    }
};

/// Small dense complex matrix for verification paths.
class DenseMatrix {
   public:
    using C = std::complex<double>;
    DenseMatrix() = default;
    explicit DenseMatrix(size_t dim) : dim_(dim), data_(dim * dim) {
    }
    static DenseMatrix identity(size_t dim) {
        DenseMatrix m(dim);
        for (size_t i = 0; i < dim; i++) {
            m(i, i) = 1.0;
        }
        return m;
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
    DenseMatrix operator*(const DenseMatrix &o) const {
        if (o.dim_ != dim_) {
            throw std::invalid_argument("DenseMatrix: dimension mismatch");
        }
        DenseMatrix r(dim_);
        for (size_t i = 0; i < dim_; i++) {
            for (size_t k = 0; k < dim_; k++) {
                C a = (*this)(i, k);
                if (a == C(0)) {
                    continue;
                }
                for (size_t j = 0; j < dim_; j++) {
                    r(i, j) += a * o(k, j);
                }
            }
        }
        return r;
    }
    DenseMatrix adjoint() const {
        DenseMatrix r(dim_);
        for (size_t i = 0; i < dim_; i++) {
            for (size_t j = 0; j < dim_; j++) {
                r(j, i) = std::conj((*this)(i, j));
            }
        }
        return r;
    }
    C trace() const {
        C t = 0;
        for (size_t i = 0; i < dim_; i++) {
            t += (*this)(i, i);
        }
        return t;
    }
    double max_abs_diff(const DenseMatrix &o) const {
        double m = 0;
        for (size_t i = 0; i < data_.size(); i++) {
            m = std::max(m, std::abs(data_[i] - o.data_[i]));
        }
        return m;
    }

   private:
    size_t dim_ = 0;
    std::vector<C> data_;
};

inline void check_dense_size(int n) {
    if (n > kMaxDenseQubits) {
        throw std::length_error("dense operator requested for " + std::to_string(n) + " qubits (max " +
                                std::to_string(kMaxDenseQubits) + ")");
    }
}

inline DenseMatrix matrix_of(const PauliProduct &p) {
    check_dense_size(p.size());
    size_t dim = size_t{1} << p.size();
    DenseMatrix m(dim);
    PauliAction act(p);
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (uint32_t x = 0; x < dim; x++) {
        m(x ^ act.flip, x) = ipow[act.phase(x) & 3];
    }
    return m;
}

/// exp(-i * axis * k*pi/8) via cos/sin closed form.
inline DenseMatrix rotation_unitary(const PauliProduct &axis, double theta) {
    auto m = matrix_of(axis);
    size_t dim = m.dim();
    double c = std::cos(theta), s = std::sin(theta);
    DenseMatrix r(dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            r(i, j) = std::complex<double>(0, -s) * m(i, j);
        }
        r(i, i) += c;
    }
    return r;
}

inline DenseMatrix rotation_unitary(const Rotation &r) {
    return rotation_unitary(r.axis, r.angle.k * M_PI / 8);
}

/// True iff a = e^{i theta} b for some theta, entrywise within tol.
inline bool equal_up_to_phase(const DenseMatrix &a, const DenseMatrix &b, double tol = 1e-9) {
    if (a.dim() != b.dim()) {
        return false;
    }
    size_t best_i = 0, best_j = 0;
    double best = -1;
    for (size_t i = 0; i < b.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            if (std::abs(b(i, j)) > best) {
                best = std::abs(b(i, j));
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best < tol) {
        return a.max_abs_diff(b) < tol;
    }
    auto ph = a(best_i, best_j) / b(best_i, best_j);
    if (std::abs(std::abs(ph) - 1) > tol) {
        return false;
    }
    for (size_t i = 0; i < b.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            if (std::abs(a(i, j) - ph * b(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace msf

#endif
