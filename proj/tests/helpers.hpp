#pragma once

#include <cmath>
#include <random>

#include "rwlab/classa.hpp"
#include "rwlab/families.hpp"

namespace rwlab::testing {

inline WarpingFunction unit_warp() { return WarpingFunction::constant(1.0); }

// f = 1, x1 = sqrt(2) u: flat plane graph, theta = -asinh(1).
inline CylinderFamilySpec plane_spec() {
    return {Profile::linear(std::sqrt(2.0), 0.0), Profile::constant(0.0), unit_warp(),
            Rect{-0.5, 0.5, -0.5, 0.5}};
}

// f = e^t, x1' = 2 e^{-u}: fV = 2 along the surface.
inline CylinderFamilySpec exp_cylinder_spec() {
    return {Profile::exponential(-2.0, -1.0, 0.0), Profile::constant(0.3),
            WarpingFunction::exponential(1.0), Rect{-0.3, 0.3, -0.4, 0.4}};
}

inline CylinderFamilySpec generic_cylinder_spec() {
    return {Profile::linear(1.2, 0.0), Profile::trig(0.2, 1.0, 0.0, 0.0),
            WarpingFunction::cosh_plus(1.0, 0.5), Rect{-0.4, 0.4, -0.4, 0.4}};
}

// f = 1, zeta1 = 2u, zeta2 = 0: the cone.
inline RevolutionFamilySpec cone_spec() {
    return {Profile::linear(2.0, 0.0), Profile::constant(0.0), unit_warp(),
            Rect{0.5, 1.5, 0.2, 1.2}};
}

inline RevolutionFamilySpec generic_revolution_spec() {
    return {Profile::trig(0.2, 1.0, 0.0, 1.5), Profile::linear(1.1, 0.0),
            WarpingFunction::cosh_plus(1.0, 0.0), Rect{-0.4, 0.4, 0.1, 1.1}};
}

inline SphericalFamilySpec generic_spherical_spec() {
    SphereFrame frame0{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    return {Profile::constant(1.0),
            frame0,
            Profile::constant(0.3),
            Profile::trig(0.5, 1.0, 0.0, 2.0),
            Profile::constant(0.2),
            -2.0,
            0.3,
            unit_warp(),
            Rect{0.0, 0.4, 0.0, 0.3}};
}

inline Grid coarse_grid(const Rect& r) { return Grid::over(r, 8, 8); }
inline Grid standard_grid(const Rect& r) { return Grid::over(r, 32, 32); }

}  // namespace rwlab::testing
