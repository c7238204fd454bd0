"""Upper bounds for constant-weight binary codes.

The package generates, solves and cross-checks a family of semidefinite
programs whose optima bound A(n, d, w), the maximum size of a binary code
with word length n, constant weight w and minimum Hamming distance d.
The programs are reduced under the coordinate-permutation symmetry, so
their variables are orbits of small sets of words and their constraints
are small matrix blocks indexed by tableaux.
"""

__version__ = "0.1.0"

VARIANTS = ("a2", "a3", "b4", "a4")
FORMULATIONS = ("raw", "normalized", "pinned")
