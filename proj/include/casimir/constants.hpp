#pragma once

namespace casimir {

/// CODATA 2018 values in SI units. The SI-exact ones (k_B, h, c, e) are exact.
struct PhysicalConstants {
    double k_b = 1.380649e-23;           // J/K
    double hbar = 1.054571817e-34;       // J s
    double c_light = 299792458.0;        // m/s
    double e_charge = 1.602176634e-19;   // C
    double m_electron = 9.1093837015e-31; // kg
    double eps_vacuum = 8.8541878128e-12; // F/m
};

inline constexpr PhysicalConstants codata2018{};

inline constexpr double pi = 3.14159265358979323846;

} // namespace casimir
