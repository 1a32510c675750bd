#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riskconv/allocation.hpp"
#include "riskconv/convolution.hpp"
#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"
#include "riskconv/measures.hpp"
#include "riskconv/numerics.hpp"
#include "riskconv/oracle.hpp"
#include "riskconv/portfolio.hpp"
#include "riskconv/reports.hpp"
#include "riskconv/riskshare.hpp"

namespace py = pybind11;
using namespace riskconv;

namespace {

std::string regime_name(ShareRegime r) {
    switch (r) {
        case ShareRegime::all_concave_with_min: return "all_concave_with_min";
        case ShareRegime::all_convex: return "all_convex";
        case ShareRegime::var_family: return "var_family";
        case ShareRegime::es_family: return "es_family";
        case ShareRegime::generic_bound: return "generic_bound";
    }
    return "";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "distortion riskmetrics, inf-convolutions and counter-monotonic risk sharing";

    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<std::vector<double>>())
        .def("__call__", &GridFunction::operator())
        .def_property_readonly("values", &GridFunction::values)
        .def_property_readonly("monotone", &GridFunction::monotone);

    py::class_<DistortionCurve>(m, "DistortionCurve")
        .def_static("power", &DistortionCurve::power, py::arg("alpha"))
        .def_static("dual_power", &DistortionCurve::dual_power, py::arg("beta"))
        .def_static("piecewise_linear", &DistortionCurve::piecewise_linear, py::arg("points"))
        .def_static("var_indicator", &DistortionCurve::var_indicator, py::arg("alpha"))
        .def_static("es_cap", &DistortionCurve::es_cap, py::arg("alpha"))
        .def_static("identity", &DistortionCurve::identity)
        .def_static("sampled",
                    [](std::vector<double> v) {
                        return DistortionCurve::sampled(GridFunction(std::move(v)));
                    })
        .def("__call__", &DistortionCurve::operator())
        .def_property_readonly("total_mass", &DistortionCurve::total_mass)
        .def_property_readonly("is_increasing", &DistortionCurve::is_increasing)
        .def_property_readonly("is_convex", &DistortionCurve::is_convex)
        .def_property_readonly("is_concave", &DistortionCurve::is_concave)
        .def_property_readonly("is_continuous", &DistortionCurve::is_continuous)
        .def_property_readonly("is_normalized", &DistortionCurve::is_normalized)
        .def_property_readonly("in_h_class", &DistortionCurve::in_h_class);

    m.def("dual", &dual);
    m.def(
        "classify",
        [](const DistortionCurve& h, int grid_n) {
            const ShapeReport r = classify(h, grid_n);
            py::dict d;
            d["increasing"] = r.increasing;
            d["convex"] = r.convex;
            d["concave"] = r.concave;
            d["continuous"] = r.continuous;
            d["normalized"] = r.normalized;
            d["grid_conflict"] = r.grid_conflict;
            return d;
        },
        py::arg("h"), py::arg("grid_n") = 1001);
    m.def("is_dually_subadditive", &is_dually_subadditive, py::arg("h"), py::arg("grid_n") = 200);
    m.def("bernstein", &bernstein, py::arg("h"), py::arg("k"), py::arg("out_n") = 1001);
    py::enum_<CombineMode>(m, "CombineMode")
        .value("pointwise_min", CombineMode::pointwise_min)
        .value("pointwise_max", CombineMode::pointwise_max);
    m.def("combine", &combine, py::arg("hs"), py::arg("mode"), py::arg("grid_n") = 1001);

    py::class_<Distribution>(m, "Distribution")
        .def_static("uniform", &Distribution::uniform, py::arg("a"), py::arg("b"))
        .def_static("pareto", &Distribution::pareto, py::arg("alpha"), py::arg("theta"))
        .def_static("lognormal", &Distribution::lognormal, py::arg("mu"), py::arg("sigma"))
        .def_static("discrete", &Distribution::discrete, py::arg("atoms"))
        .def("survival", &Distribution::survival)
        .def("cdf", &Distribution::cdf)
        .def("quantile", &Distribution::quantile)
        .def_property_readonly("lower", &Distribution::lower)
        .def_property_readonly("upper", &Distribution::upper)
        .def_property_readonly("is_discrete", &Distribution::is_discrete)
        .def_property_readonly("cone", [](const Distribution& d) {
            switch (d.cone()) {
                case Cone::nonnegative: return "nonnegative";
                case Cone::nonpositive: return "nonpositive";
                default: return "general";
            }
        });
    m.def("negate", &negate);

    m.def("riskmetric", &riskmetric, py::arg("h"), py::arg("d"));
    m.def("var", &var, py::arg("d"), py::arg("alpha"));
    m.def("es", &es, py::arg("d"), py::arg("beta"));

    py::class_<ConvolutionResult>(m, "ConvolutionResult")
        .def_readonly("value", &ConvolutionResult::value)
        .def_readonly("weights", &ConvolutionResult::weights)
        .def_property_readonly("method", [](const ConvolutionResult& r) {
            switch (r.method) {
                case ConvolutionMethod::closed_form: return "closed_form";
                case ConvolutionMethod::piecewise_exact: return "piecewise_exact";
                default: return "simplex_search";
            }
        });
    m.def("inf_convolve", &inf_convolve, py::arg("hs"), py::arg("x"));
    m.def("sup_convolve", &sup_convolve, py::arg("hs"), py::arg("x"));
    m.def(
        "grid_convolve",
        [](const std::vector<DistortionCurve>& hs, const std::string& mode, int n) {
            return grid_convolve(hs, mode == "sup" ? ConvolveMode::sup : ConvolveMode::inf, n);
        },
        py::arg("hs"), py::arg("mode"), py::arg("n_points"));
    m.def("normalized_sup_dual", &normalized_sup_dual, py::arg("hs"), py::arg("grid_n") = 1001);

    py::class_<Composition>(m, "Composition").def_readonly("probs", &Composition::probs);
    py::class_<JackpotAllocation>(m, "JackpotAllocation")
        .def_readonly("weight_fns", &JackpotAllocation::weight_fns);
    py::class_<DiscreteAllocation>(m, "DiscreteAllocation")
        .def(py::init([](std::vector<double> probs, std::vector<std::vector<double>> payoffs) {
                 return DiscreteAllocation{std::move(probs), std::move(payoffs)};
             }),
             py::arg("atom_probs"), py::arg("payoffs"))
        .def_readonly("atom_probs", &DiscreteAllocation::atom_probs)
        .def_readonly("payoffs", &DiscreteAllocation::payoffs)
        .def("aggregate", &DiscreteAllocation::aggregate);

    m.def("constant_share", &constant_share, py::arg("alphas"));
    m.def("jackpot_allocation", &jackpot_allocation, py::arg("hs"), py::arg("d"),
          py::arg("grid_n") = 1001);
    m.def("pairwise_countermonotonic_check", &pairwise_countermonotonic_check);
    m.def("countermonotonic_form", [](const DiscreteAllocation& a) {
        const CounterMonotonicForm f = countermonotonic_form(a);
        py::dict d;
        d["m_consts"] = f.m_consts;
        d["m_total"] = f.m_total;
        d["probs"] = f.composition.probs;
        d["side"] = f.side == CounterSide::below_essinf ? "below_essinf" : "above_esssup";
        return d;
    });

    py::class_<ShareResult>(m, "ShareResult")
        .def_readonly("value", &ShareResult::value)
        .def_property_readonly("regime",
                               [](const ShareResult& r) { return regime_name(r.regime); })
        .def_readonly("curve", &ShareResult::curve)
        .def_readonly("lower_bound", &ShareResult::lower_bound)
        .def_readonly("upper_bound", &ShareResult::upper_bound)
        .def_property_readonly("agent_takes_all", [](const ShareResult& r) -> py::object {
            if (r.allocation)
                if (const auto* s = std::get_if<SingleAgent>(&*r.allocation))
                    return py::int_(s->index);
            return py::none();
        });
    m.def("comonotonic_infconv", &comonotonic_infconv, py::arg("hs"), py::arg("d"));
    m.def("countermonotonic_infconv", &countermonotonic_infconv, py::arg("hs"), py::arg("d"));
    m.def("unconstrained_infconv", &unconstrained_infconv, py::arg("hs"), py::arg("d"));
    m.def("divergence_certificate", &divergence_certificate, py::arg("hs"), py::arg("m"));
    m.def("allocation_total_risk", &allocation_total_risk, py::arg("hs"), py::arg("a"),
          py::arg("d"));

    py::class_<CostFunction>(m, "CostFunction")
        .def_static("quadratic", &CostFunction::quadratic)
        .def_static("custom", &CostFunction::custom)
        .def("cost", &CostFunction::cost)
        .def("marginal", &CostFunction::marginal)
        .def("marginal_inverse", &CostFunction::marginal_inverse)
        .def("cost_inverse", &CostFunction::cost_inverse);

    py::class_<PortfolioSolution>(m, "PortfolioSolution")
        .def_readonly("lambda_star", &PortfolioSolution::lambda_star)
        .def_readonly("rho_value", &PortfolioSolution::rho_value)
        .def_readonly("budget_bound", &PortfolioSolution::budget_bound)
        .def_readonly("clamped", &PortfolioSolution::clamped)
        .def_readonly("representative", &PortfolioSolution::representative)
        .def_property_readonly("regime", [](const PortfolioSolution& s) {
            return s.regime == PortfolioRegime::concave_group ? "concave_group" : "convex_group";
        });
    m.def("optimal_lambda", &optimal_lambda, py::arg("hs"), py::arg("d"), py::arg("wealth"),
          py::arg("cost"), py::arg("strict_budget") = false);
    m.def("crossing_points", &crossing_points, py::arg("hs"), py::arg("gs"), py::arg("grid_n"));
    m.def("sweep_family_concave", &sweep_family_concave, py::arg("alpha"));
    m.def("sweep_family_convex", &sweep_family_convex, py::arg("alpha"));
    m.def(
        "comparative_sweep",
        [](const GroupBuilder& family, const std::vector<double>& alphas, const Distribution& d,
           double wealth, const CostFunction& cost) {
            std::vector<std::pair<double, double>> rows;
            for (const auto& r : comparative_sweep(family, alphas, d, wealth, cost))
                rows.emplace_back(r.alpha, r.lambda_star);
            return rows;
        },
        py::arg("family"), py::arg("alphas"), py::arg("d"), py::arg("wealth"), py::arg("cost"));

    m.def("oracle_levelwise", &oracle::oracle_levelwise, py::arg("hs"), py::arg("d"),
          py::arg("n_levels") = 2001);
    m.def("oracle_constant_share", &oracle::oracle_constant_share, py::arg("alphas"),
          py::arg("grid_n"));
    m.def("convex_order_leq", &oracle::convex_order_leq, py::arg("x"), py::arg("y"));

    m.def("run_table1", &reports::run_table1);
    m.def("run_table2", &reports::run_table2);
    m.def("run_figure", &reports::run_figure, py::arg("which"), py::arg("grid_n") = 201);
}
