#pragma once

#include <string>

namespace riskconv {
namespace reports {

/// Three-convolution comparison for the dual-power pair (0.3, 0.6) over
/// Uniform(0,1), Pareto(3,2) and LogNormal(0,1), each on both signs, with
/// embedded reference values and deviations. Entries whose defining
/// integral diverges print the token "divergent".
std::string run_table1();

/// Probability split and value for the power pairs (1.2, 1.4) and (1.2, 5)
/// with embedded reference values.
std::string run_table2();

/// Figure-ready CSV data:
///   1 - lambda* sweep of the concave pair family over alpha
///   2 - lambda* sweep of the convex pair family over alpha
///   3 - sup-convolutions and normalized difference for the convex family
///       at alpha = 2 vs alpha = 1
///   4 - the same comparison for the kinked-line groups with the single
///       interior crossing near 0.789
std::string run_figure(int which, int grid_n = 201);

}  // namespace reports
}  // namespace riskconv
