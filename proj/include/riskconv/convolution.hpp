#pragma once

#include <vector>

#include "riskconv/distortion.hpp"

namespace riskconv {

enum class ConvolutionMethod { closed_form, simplex_search, piecewise_exact };

struct ConvolutionResult {
    double value = 0.0;
    std::vector<double> weights;  // x_1..x_n, each in [0,1], summing to x
    ConvolutionMethod method = ConvolutionMethod::closed_form;
};

/// Pointwise inf-convolution of distortion functions:
///   min { sum h_i(x_i) : x_i in [0,1], sum x_i = x }.
/// Smooth strictly convex families solve the derivative-matching system in
/// closed form (KKT water filling with clamped weights); all-convex
/// piecewise-linear groups fill lowest slopes first; everything else runs
/// projected coordinate descent from the uniform start plus 10 random
/// simplex starts. Requires every curve in H.
ConvolutionResult inf_convolve(const std::vector<DistortionCurve>& hs, double x);

/// Sup counterpart: max { sum h_i(x_i) : sum x_i = x }. Requires increasing
/// curves with h(0)=0 (duals of H members are the typical input); concave
/// piecewise-linear groups use exact greedy slope ordering.
ConvolutionResult sup_convolve(const std::vector<DistortionCurve>& hs, double x);

enum class ConvolveMode { inf, sup };

/// Samples the pointwise convolution on a uniform grid; output monotone.
GridFunction grid_convolve(const std::vector<DistortionCurve>& hs, ConvolveMode mode,
                           int n_points);

/// The sup-convolution as a curve: exact piecewise-linear when every input
/// is concave piecewise-linear, otherwise sampled on `grid_n` points.
DistortionCurve sup_convolution_curve(const std::vector<DistortionCurve>& hs,
                                      int grid_n = 1001);

/// Normalized sup-convolution of the duals:
///   f(x) = (sup-conv of dual h_i)(x) / (sup-conv of dual h_i)(1),
/// an increasing concave curve with f(0)=0, f(1)=1. Requires each h convex
/// continuous in H.
DistortionCurve normalized_sup_dual(const std::vector<DistortionCurve>& hs,
                                    int grid_n = 1001);

}  // namespace riskconv
