#pragma once

// Published per-link figures for the first five slots of the Toronto-Sydney Starlink path at a
// 3000 km laser range: eight satellites, seven inter-satellite links.

#include <array>

namespace ref {

inline constexpr int kSlots = 5;
inline constexpr int kIsls = 7;

// T_up, T_1..T_7, T_down (ms), then T_net.
inline constexpr std::array<std::array<double, 9>, kSlots> kDelayMs = {{
    {3.23, 8.04, 3.94, 9.40, 9.35, 5.27, 5.13, 9.28, 3.53},
    {3.22, 8.05, 3.95, 9.38, 9.38, 5.27, 5.13, 9.28, 3.53},
    {3.21, 8.06, 3.95, 9.36, 9.41, 5.27, 5.13, 9.27, 3.53},
    {3.20, 8.06, 3.95, 9.34, 9.44, 5.27, 5.13, 9.27, 3.53},
    {3.19, 8.07, 3.96, 9.33, 9.47, 5.27, 5.13, 9.26, 3.52},
}};
inline constexpr std::array<double, kSlots> kNetMs = {137.22, 137.22, 137.22, 137.23, 137.23};

// P_up, P_1..P_7, P_down (mW).
inline constexpr std::array<std::array<double, 9>, kSlots> kPowerMw = {{
    {70.42, 198.26, 47.67, 270.82, 268.28, 85.14, 80.80, 264.18, 111.49},
    {69.93, 198.61, 47.76, 269.78, 269.90, 85.14, 80.75, 263.88, 111.31},
    {69.45, 198.96, 47.86, 268.74, 271.53, 85.13, 80.71, 263.59, 111.13},
    {68.99, 199.31, 47.95, 267.71, 273.17, 85.12, 80.67, 263.29, 110.97},
    {68.53, 199.66, 48.04, 266.69, 274.81, 85.12, 80.63, 262.99, 110.82},
}};

// Ingress, six intermediates, egress, then the per-slot average (mW).
inline constexpr std::array<std::array<double, 9>, kSlots> kSatellitePowerMw = {{
    {268.67, 245.93, 318.49, 539.10, 353.42, 165.94, 344.98, 375.67, 326.53},
    {268.54, 246.37, 317.54, 539.68, 355.04, 165.89, 344.64, 375.19, 326.61},
    {268.41, 246.81, 316.60, 540.27, 356.66, 165.84, 344.30, 374.72, 326.70},
    {268.29, 247.26, 315.66, 540.88, 358.29, 165.79, 343.96, 374.26, 326.80},
    {268.18, 247.70, 314.73, 541.50, 359.93, 165.74, 343.62, 373.81, 326.90},
}};

inline constexpr double kStationAltitudeKm = 0.1;
inline constexpr double kSatelliteAltitudeKm = 550.0;

}  // namespace ref
