"""Bounds on the stable topological and smooth 4-genus of knots from PD codes."""

from .bounds import GenusReport, analyze, analyze_matrix, double_sum_taylor, render_text
from .dagger import certify_isotropy, solve_dagger
from .diagram import Diagram, parse_pd, parse_pd_file
from .surface import build_surface

__all__ = [
    "Diagram",
    "GenusReport",
    "analyze",
    "analyze_matrix",
    "build_surface",
    "certify_isotropy",
    "double_sum_taylor",
    "parse_pd",
    "parse_pd_file",
    "render_text",
    "solve_dagger",
]
