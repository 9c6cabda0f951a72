#pragma once
#include <array>

#include "edwalk/matrix.hpp"

namespace edwalk {

// Axis-angle form of a 2x2 unitary:
//   exp(i global_phase) * (cos(angle) I - i sin(angle) axis.sigma)
// which, as a Bloch-sphere map, rotates about `axis` by 2*angle
// following the right-handed rule.
struct Rotation {
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    double angle = 0.0;
    double global_phase = 0.0;
};

// Throws std::invalid_argument unless |axis| = 1 within 1e-12.
ComplexMatrix rotation_to_matrix(const Rotation&);

// matrix(result) = matrix(second) * matrix(first), computed in quaternion
// form without building matrices. A degenerate composite
// (sin(angle) < tol::axis_epsilon) gets the canonical axis [0,0,1].
Rotation compose_rotations(const Rotation& second, const Rotation& first);

// Inverse of rotation_to_matrix for any invertible 2x2 matrix that is
// unitary up to scale. angle lands in [0, pi]; phase is arg(det)/2, so
// the result can differ from the original by the exact double-cover
// flip (axis, angle, phase) -> (-axis, pi - angle, phase + pi).
Rotation rotation_from_matrix(const ComplexMatrix&);

}  // namespace edwalk
