#pragma once

// Bubble chart of an evaluation: items along the x axis, M1..M8 along the y
// axis. A significant result is drawn as a circle (positive change) or a
// triangle (negative change); non-significant cells stay empty.
//
// Glyph size: r = kMinRadius + kRadiusSlope * min(-log10(p), kStrengthCap),
// with p = 0 treated as the cap. When an item carries both methods the exact
// result is drawn.

#include <filesystem>
#include <string>

#include "dyadic/report.hpp"

namespace dyadic {

inline constexpr double kMinRadius = 3.0;
inline constexpr double kRadiusSlope = 1.5;
inline constexpr double kStrengthCap = 6.0;

double glyph_radius(double p_value);

std::string bubble_chart_svg(const ReportSet& reports);

// InputError if `reports` has no items or the path is unwritable.
void emit_bubble_chart(const ReportSet& reports, const std::filesystem::path& path);

}  // namespace dyadic
