"""Exact-arithmetic toolkit for cube structures on finite filtered groups
and the abstract cubespaces built from them.

Subpackages are deliberately flat: cubes (discrete-cube combinatorics),
groups (finite groups / filtrations / abelian linear algebra), cubegroups
(cube groups of a filtered group), poly (polynomial maps), cubespace
(abstract cubespaces and axiom checkers), structure (canonical factors and
bundle decomposition), translations, cohomology, cli.
"""

__version__ = "0.1.0"
