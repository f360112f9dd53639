#pragma once

#include <cmath>
#include <numbers>

#include "wmdisc/algebra.hpp"
#include "wmdisc/rng.hpp"

namespace wmdisc {

// Uniform direction on the unit sphere.
inline BlochVector random_unit_vector(SplitMix64& rng) {
    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.next_double();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// Uniform point in the closed unit ball (valid mixed-state Bloch vector).
inline BlochVector random_ball_vector(SplitMix64& rng) {
    const BlochVector dir = random_unit_vector(rng);
    const double r = std::cbrt(rng.next_double());
    return r * dir;
}

// Random 2x2 Hermitian matrix with entries of order `scale`.
inline Complex2x2 random_hermitian(SplitMix64& rng, double scale = 1.0) {
    const double a = scale * (2.0 * rng.next_double() - 1.0);
    const double d = scale * (2.0 * rng.next_double() - 1.0);
    const complexd b{scale * (2.0 * rng.next_double() - 1.0),
                     scale * (2.0 * rng.next_double() - 1.0)};
    return {a, b, std::conj(b), d};
}

inline complexd random_complex(SplitMix64& rng, double scale = 1.0) {
    return {scale * (2.0 * rng.next_double() - 1.0),
            scale * (2.0 * rng.next_double() - 1.0)};
}

} // namespace wmdisc
