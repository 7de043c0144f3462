"""Toolkit for building and scoring NP/S subsequence challenge sets for NLI.

The pipeline mines a dependency-parsed corpus for attested subjects, direct
objects and finite clauses, instantiates NP1-V1-S1 premises whose hypothesis
is a non-entailed prefix subsequence, runs an annotation/agreement filter over
the generated pairs, and scores heuristic baselines or external model
predictions against the resulting gold sets.
"""

__version__ = "0.1.0"
