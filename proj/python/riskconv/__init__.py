"""Distortion riskmetrics, inf-convolutions and counter-monotonic risk sharing."""

from ._core import (
    CombineMode,
    Composition,
    ConvolutionResult,
    CostFunction,
    DiscreteAllocation,
    DistortionCurve,
    Distribution,
    DivergenceError,
    GridFunction,
    JackpotAllocation,
    PortfolioSolution,
    ShareResult,
    allocation_total_risk,
    bernstein,
    classify,
    combine,
    comonotonic_infconv,
    comparative_sweep,
    constant_share,
    convex_order_leq,
    countermonotonic_form,
    countermonotonic_infconv,
    crossing_points,
    divergence_certificate,
    dual,
    es,
    grid_convolve,
    inf_convolve,
    is_dually_subadditive,
    jackpot_allocation,
    negate,
    normalized_sup_dual,
    optimal_lambda,
    oracle_constant_share,
    oracle_levelwise,
    pairwise_countermonotonic_check,
    riskmetric,
    run_figure,
    run_table1,
    run_table2,
    sup_convolve,
    sweep_family_concave,
    sweep_family_convex,
    unconstrained_infconv,
    var,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
