"""Exact algebra of sums of cycles and chains counted modulo 2.

The package provides the ring of cycle sums with its division theory,
Boolean-lattice machinery for finite meet lattices, classification of
special elements, a polynomial solver, the combined cycle-and-chain
division, and an independent digraph oracle for cross-checking.
"""

from .chains import ChainSum, Element, divide_chains, divide_full
from .cycles import CycleSum, OddSet, mul_cycles
from .division import IntervalSolutionSet, min_solution, solve
from .formal import AxiomReport, FormalSum, ProductRule, check_axioms
from .lattice import BoolElem, FiniteLattice, divisor_lattice
from .structure import Classification, classify, green

__all__ = [
    "AxiomReport",
    "BoolElem",
    "ChainSum",
    "Classification",
    "CycleSum",
    "Element",
    "FiniteLattice",
    "FormalSum",
    "IntervalSolutionSet",
    "OddSet",
    "ProductRule",
    "check_axioms",
    "classify",
    "divide_chains",
    "divide_full",
    "divisor_lattice",
    "green",
    "min_solution",
    "mul_cycles",
    "solve",
]
