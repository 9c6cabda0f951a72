#include "edwalk/rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "edwalk/tolerances.hpp"

namespace edwalk {

namespace {

double axis_norm(const std::array<double, 3>& n) {
    return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

}  // namespace

ComplexMatrix rotation_to_matrix(const Rotation& r) {
    if (std::abs(axis_norm(r.axis) - 1.0) > 1e-12)
        throw std::invalid_argument("rotation_to_matrix: axis is not unit length");
    const double c = std::cos(r.angle), s = std::sin(r.angle);
    const cd phase = std::polar(1.0, r.global_phase);
    const auto& n = r.axis;
    ComplexMatrix m(2, 2);
    // cos I - i sin (nx X + ny Y + nz Z)
    m.at(0, 0) = phase * cd{c, -s * n[2]};
    m.at(0, 1) = phase * cd{-s * n[1], -s * n[0]};
    m.at(1, 0) = phase * cd{s * n[1], -s * n[0]};
    m.at(1, 1) = phase * cd{c, s * n[2]};
    return m;
}

Rotation compose_rotations(const Rotation& second, const Rotation& first) {
    const double cs = std::cos(second.angle), ss = std::sin(second.angle);
    const double cf = std::cos(first.angle), sf = std::sin(first.angle);
    const auto& as = second.axis;
    const auto& af = first.axis;
    if (std::abs(axis_norm(as) - 1.0) > 1e-12 || std::abs(axis_norm(af) - 1.0) > 1e-12)
        throw std::invalid_argument("compose_rotations: axis is not unit length");

    const double dot = as[0] * af[0] + as[1] * af[1] + as[2] * af[2];
    const std::array<double, 3> cross{as[1] * af[2] - as[2] * af[1],
                                      as[2] * af[0] - as[0] * af[2],
                                      as[0] * af[1] - as[1] * af[0]};
    const double w = cs * cf - ss * sf * dot;
    std::array<double, 3> vec;
    for (int i = 0; i < 3; ++i) vec[i] = cs * sf * af[i] + cf * ss * as[i] + ss * sf * cross[i];

    Rotation out;
    out.global_phase = second.global_phase + first.global_phase;
    const double vn = axis_norm(vec);
    out.angle = std::atan2(vn, w);
    if (vn < tol::axis_epsilon) {
        out.axis = {0.0, 0.0, 1.0};
        // snap the angle so the matrix is exactly +-I
        out.angle = (w >= 0) ? 0.0 : std::numbers::pi;
    } else {
        out.axis = {vec[0] / vn, vec[1] / vn, vec[2] / vn};
    }
    return out;
}

Rotation rotation_from_matrix(const ComplexMatrix& m) {
    if (m.rows != 2 || m.cols != 2) throw std::invalid_argument("rotation_from_matrix: need 2x2");
    const cd det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    const double dn = std::abs(det);
    if (dn < 1e-300) throw std::invalid_argument("rotation_from_matrix: singular matrix");
    Rotation out;
    out.global_phase = std::arg(det) / 2.0;
    const cd unphase = std::polar(1.0 / std::sqrt(dn), -out.global_phase);
    // u = unphase * m is special-unitary when m is unitary:
    // u = [[w - i z, -y - i x], [y - i x, w + i z]]
    const cd u00 = unphase * m.at(0, 0), u01 = unphase * m.at(0, 1);
    const cd u10 = unphase * m.at(1, 0), u11 = unphase * m.at(1, 1);
    const double w = (u00.real() + u11.real()) / 2.0;
    const double x = -(u01.imag() + u10.imag()) / 2.0;
    const double y = (u10.real() - u01.real()) / 2.0;
    const double z = (u11.imag() - u00.imag()) / 2.0;
    const double vn = std::sqrt(x * x + y * y + z * z);
    out.angle = std::atan2(vn, w);
    if (vn < tol::axis_epsilon)
        out.axis = {0.0, 0.0, 1.0};
    else
        out.axis = {x / vn, y / vn, z / vn};
    return out;
}

}  // namespace edwalk
