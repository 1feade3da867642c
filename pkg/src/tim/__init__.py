"""Type inference and state-invariant extraction for STRIPS planning domains."""

from tim.analysis import Analysis, AnalysisConfig, analyze, analyze_files, analyze_text
from tim.bags import Bag
from tim.pddl import PDDLError, parse_domain, parse_problem

__all__ = [
    "Analysis",
    "AnalysisConfig",
    "Bag",
    "PDDLError",
    "analyze",
    "analyze_files",
    "analyze_text",
    "parse_domain",
    "parse_problem",
]
