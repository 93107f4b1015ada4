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

#ifndef MSFACTORY_SURFACE_NOISE_HPP
#define MSFACTORY_SURFACE_NOISE_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "msfactory/density.hpp"

namespace msf {

struct PhysicalNoise {
    double p_phys = 1e-4;
    double c_T = 1;  // multiplier on the faulty-T-measurement Pauli rate

    void validate() const {
        if (!(p_phys >= 0 && p_phys < 0.01)) {
            throw std::domain_error("p_phys must be in [0, 0.01), got " + std::to_string(p_phys));
        }
        if (!(c_T > 0)) {
            throw std::domain_error("c_T must be positive");
        }
    }
};

struct DistanceSet {
    int dX = 0, dZ = 0, dm = 0;
    std::optional<int> dX2, dZ2, dm2;
    std::optional<int> nL1;

    bool has_level2() const {
        return dX2 && dZ2 && dm2;
    }

    void validate() const {
        auto odd = [](int d, const char *name) {
            if (d < 1 || d % 2 == 0) {
                throw std::invalid_argument(std::string(name) + " must be a positive odd integer, got " +
                                            std::to_string(d));
            }
        };
        odd(dX, "dX");
        odd(dZ, "dZ");
        odd(dm, "dm");
        if (dZ > dX) throw std::invalid_argument("dZ must not exceed dX");
        if (dX > 3 * dm) throw std::invalid_argument("dX must not exceed 3*dm");
        if (dX2 || dZ2 || dm2) {
            if (!has_level2()) throw std::invalid_argument("level-2 distances must be given together");
            odd(*dX2, "dX2");
            odd(*dZ2, "dZ2");
            odd(*dm2, "dm2");
            if (*dZ2 > *dX2) throw std::invalid_argument("dZ2 must not exceed dX2");
            if (*dX2 > 3 * *dm2) throw std::invalid_argument("dX2 must not exceed 3*dm2");
        }
        if (nL1 && (*nL1 < 2 || *nL1 % 2 != 0)) {
            throw std::invalid_argument("nL1 must be a positive even integer");
        }
    }
};

/// Per-code-cycle logical error rate of a distance-d patch.
inline double logical_error_rate(double p_phys, int d) {
    if (!(p_phys >= 0 && p_phys < 0.01)) {
        throw std::domain_error("logical_error_rate: p_phys must be below threshold (0.01)");
    }
    if (d < 1) {
        throw std::domain_error("logical_error_rate: d must be >= 1");
    }
    return 0.1 * std::pow(100 * p_phys, (d + 1) / 2.0);
}

/// dX x dH patch: fewer X strings, more Z strings.
inline StorageRates patch_storage_rates(const PhysicalNoise &noise, int dX, int dH) {
    if (dH > dX) {
        throw std::invalid_argument("patch_storage_rates: dH must not exceed dX");
    }
    double p = noise.p_phys;
    return {0.5 * (double(dH) / dX) * logical_error_rate(p, dX), 0.5 * (double(dX) / dH) * logical_error_rate(p, dH)};
}

namespace detail {
inline RotationErrorProfile checked(RotationErrorProfile r) {
    for (double v : {r.p_half, r.p_quarter, r.p_mquarter, r.p_z_output}) {
        if (!(v >= 0 && v < 1)) {
            throw std::domain_error("error profile component outside [0,1)");
        }
    }
    return r;
}
}  // namespace detail

/// Level-1 multi-qubit rotation through an ancilla of length l, consumed via a faulty T measurement.
inline RotationErrorProfile multiqubit_rotation_profile(const PhysicalNoise &noise, double l, int dX, int dm,
                                                        bool involves_output) {
    if (l < dX) {
        throw std::invalid_argument("multiqubit_rotation_profile: l must be >= dX");
    }
    double p = noise.p_phys, t = noise.c_T * p / 3;
    double lm = logical_error_rate(p, dm);
    return detail::checked({
        t + 0.5 * lm * dm,
        t,
        t + 0.5 * (l * dX / (double(dm) * dm)) * lm * dm + 0.5 * lm * dm,
        involves_output ? 0.5 * (l / dX) * logical_error_rate(p, dX) * dm : 0.0,
    });
}

inline RotationErrorProfile single_qubit_rotation_profile(const PhysicalNoise &noise, int dZ, int dm) {
    double p = noise.p_phys, t = noise.c_T * p / 3;
    return detail::checked({
        t + 0.5 * (double(dm) * dm / dZ) * logical_error_rate(p, dZ),
        t,
        t + 0.5 * dZ * logical_error_rate(p, dm),
        0.0,
    });
}

/// Level-2 rotation consuming a level-1 state of infidelity p_L1 that travelled l_move.
inline RotationErrorProfile level2_rotation_profile(const PhysicalNoise &noise, double p_L1, double l, int dX2,
                                                    int dm2, double l_move, bool involves_output) {
    double p = noise.p_phys;
    double lm = logical_error_rate(p, dm2);
    return detail::checked({
        p_L1 + 0.5 * l_move * lm,
        0.0,
        0.5 * l_move * lm + 0.5 * (l * dX2 / dm2) * lm,
        involves_output ? 0.5 * (l * dm2 / dX2) * logical_error_rate(p, dX2) : 0.0,
    });
}

}  // namespace msf

#endif
