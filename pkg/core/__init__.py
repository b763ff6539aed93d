"""Solver, baselines, weighting and benchmark harness of eigentrilat."""
