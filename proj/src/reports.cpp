#include "riskconv/reports.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "riskconv/allocation.hpp"
#include "riskconv/convolution.hpp"
#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"
#include "riskconv/portfolio.hpp"
#include "riskconv/riskshare.hpp"

namespace riskconv {
namespace reports {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string run_table1() {
    const std::vector<DistortionCurve> hs{DistortionCurve::dual_power(0.3),
                                          DistortionCurve::dual_power(0.6)};
    struct Row {
        const char* name;
        Distribution d;
        bool negated;
        double ref_como, ref_counter;
    };
    const Distribution u = Distribution::uniform(0.0, 1.0);
    const Distribution p = Distribution::pareto(3.0, 2.0);
    const Distribution l = Distribution::lognormal(0.0, 1.0);
    const std::vector<Row> rows{
        {"uniform(0,1)", u, false, 0.3692, 0.2074},
        {"uniform(0,1)", negate(u), true, -0.7667, -1.0435},
        {"pareto(3,2)", p, false, 2.7291, 1.3828},
        {"pareto(3,2)", negate(p), true, -9.4262, -11.0881},
        {"lognormal(0,1)", l, false, 1.0825, 0.5849},
        {"lognormal(0,1)", negate(l), true, -5.5828, -6.4773},
    };

    std::string out = "# source: Table 1\n";
    out += "dist,space,como,counter_eq_unconstrained,paper_como,paper_counter,dev_como,dev_counter\n";
    for (const auto& row : rows) {
        std::string como = "divergent", counter = "divergent";
        std::string dev_como, dev_counter;
        try {
            const double v = comonotonic_infconv(hs, row.d).value;
            como = num(v);
            dev_como = num(v - row.ref_como);
        } catch (const DivergenceError&) {
        }
        try {
            const double v = countermonotonic_infconv(hs, row.d).value;
            counter = num(v);
            dev_counter = num(v - row.ref_counter);
        } catch (const DivergenceError&) {
        }
        out += std::string(row.name) + "," + (row.negated ? "L-" : "L+") + "," + como + "," +
               counter + "," + num(row.ref_como) + "," + num(row.ref_counter) + "," + dev_como +
               "," + dev_counter + "\n";
    }
    return out;
}

std::string run_table2() {
    struct Row {
        double a1, a2;
        double ref_p1, ref_p2, ref_value;
    };
    const std::vector<Row> rows{{1.2, 1.4, 0.5129, 0.4871, 0.8141},
                                {1.2, 5.0, 0.3371, 0.6629, 0.3992}};
    std::string out = "# source: Table 2\n";
    out += "alpha1,alpha2,p_a1,p_a2,value,ref_p_a1,ref_p_a2,ref_value\n";
    for (const auto& row : rows) {
        const auto [comp, value] = constant_share({row.a1, row.a2});
        out += num(row.a1) + "," + num(row.a2) + "," + num(comp.probs[0]) + "," +
               num(comp.probs[1]) + "," + num(value) + "," + num(row.ref_p1) + "," +
               num(row.ref_p2) + "," + num(row.ref_value) + "\n";
    }
    return out;
}

namespace {

std::string sweep_csv(const GroupBuilder& family, double a_lo, double a_hi, double step) {
    const Distribution u = Distribution::uniform(0.0, 1.0);
    const CostFunction cost = CostFunction::quadratic();
    std::vector<double> alphas;
    for (double a = a_lo; a <= a_hi + 1e-12; a += step) alphas.push_back(a);
    std::string out = "alpha,lambda_star\n";
    for (const auto& row : comparative_sweep(family, alphas, u, 1.0, cost))
        out += num(row.alpha) + "," + num(row.lambda_star) + "\n";
    return out;
}

std::string convolution_comparison_csv(const std::vector<DistortionCurve>& hs,
                                       const std::vector<DistortionCurve>& gs, int grid_n) {
    auto duals = [](const std::vector<DistortionCurve>& cs) {
        std::vector<DistortionCurve> out;
        for (const auto& c : cs) out.push_back(dual(c));
        return out;
    };
    const auto dh = duals(hs);
    const auto dg = duals(gs);
    const double lh = sup_convolve(dh, 1.0).value;
    const double lg = sup_convolve(dg, 1.0).value;
    std::string out = "x,sup_h,sup_g,f_h,f_g,diff\n";
    for (int k = 0; k < grid_n; ++k) {
        const double x = static_cast<double>(k) / (grid_n - 1);
        const double sh = sup_convolve(dh, x).value;
        const double sg = sup_convolve(dg, x).value;
        const double fh = sh / lh, fg = sg / lg;
        out += num(x) + "," + num(sh) + "," + num(sg) + "," + num(fh) + "," + num(fg) + "," +
               num(fg - fh) + "\n";
    }
    return out;
}

}  // namespace

std::string run_figure(int which, int grid_n) {
    switch (which) {
        case 1:
            return sweep_csv(sweep_family_concave, 0.5, 3.0, 0.25);
        case 2:
            return sweep_csv(sweep_family_convex, 0.5, 3.0, 0.25);
        case 3:
            return convolution_comparison_csv(sweep_family_convex(2.0), sweep_family_convex(1.0),
                                              grid_n);
        case 4: {
            const std::vector<DistortionCurve> hs{
                DistortionCurve::piecewise_linear({{0.0, 0.0}, {0.24 / 1.24, 0.0}, {1.0, 1.0}}),
                DistortionCurve::piecewise_linear({{0.0, 0.0}, {0.10 / 1.10, 0.0}, {1.0, 1.0}})};
            const std::vector<DistortionCurve> gs{
                DistortionCurve::piecewise_linear({{0.0, 0.0}, {0.36 / 1.36, 0.0}, {1.0, 1.0}}),
                DistortionCurve::piecewise_linear({{0.0, 0.0}, {0.21 / 1.21, 0.0}, {1.0, 1.0}})};
            return convolution_comparison_csv(hs, gs, grid_n);
        }
        default:
            throw std::invalid_argument("run_figure: which must be 1..4");
    }
}

}  // namespace reports
}  // namespace riskconv
