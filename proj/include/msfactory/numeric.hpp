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

#ifndef MSFACTORY_NUMERIC_HPP
#define MSFACTORY_NUMERIC_HPP

#include <cmath>
#include <complex>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace msf {

/// Quad precision. Needed because some factory outputs are ~1e-25 while F ~ 1.
using Quad = boost::multiprecision::float128;

template <typename Real>
inline Real pi() {
    return boost::math::constants::pi<Real>();
}

template <typename Real>
inline double to_double(const Real &x) {
    return static_cast<double>(x);
}

/// Minimal complex number. std::complex<T> is only specified for float/double/long double.
template <typename Real>
struct Complex {
    Real re{};
    Real im{};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {  // NOLINT: implicit on purpose
    }
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {
    }

    Complex conj() const {
        return {re, -im};
    }
    Real norm2() const {
        return re * re + im * im;
    }
    Complex &operator+=(const Complex &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex &operator-=(const Complex &o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex &operator*=(const Real &s) {
        re *= s;
        im *= s;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex &b) {
        return a += b;
    }
    friend Complex operator-(Complex a, const Complex &b) {
        return a -= b;
    }
    friend Complex operator-(const Complex &a) {
        return {-a.re, -a.im};
    }
    friend Complex operator*(const Complex &a, const Complex &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(Complex a, const Real &s) {
        return a *= s;
    }
    friend Complex operator*(const Real &s, Complex a) {
        return a *= s;
    }
    friend Complex operator/(Complex a, const Real &s) {
        a.re /= s;
        a.im /= s;
        return a;
    }
    bool operator==(const Complex &o) const {
        return re == o.re && im == o.im;
    }

    /// Multiply by i^q (q taken mod 4).
    Complex times_i_pow(int q) const {
        switch (((q % 4) + 4) % 4) {
            case 0:
                return *this;
            case 1:
                return {-im, re};
            case 2:
                return {-re, -im};
            default:
                return {im, -re};
        }
    }

    static Complex polar(const Real &theta) {
        using std::cos;
        using std::sin;
        return {cos(theta), sin(theta)};
    }

    std::complex<double> to_std() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

template <typename Real>
inline Real abs_value(const Real &x) {
    using std::abs;
    return abs(x);
}

}  // namespace msf

#endif
