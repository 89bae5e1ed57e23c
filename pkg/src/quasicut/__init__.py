"""Exact symplectic cutting of toric quasifolds.

The package turns polyhedral data ``(Delta, Q, {X_j})`` -- a simple pointed
polyhedron whose normals lie in a quasilattice ``Q`` -- into the symbolic
data of the generalized Delzant construction, and cuts it along arbitrary
hyperplanes.  All arithmetic is exact, over towers of real quadratic
extensions of the rationals.

Modules:

* :mod:`quasicut.exactfield` -- real quadratic towers and exact signs
* :mod:`quasicut.polyhedra` -- H-polyhedra, vertices, half-space cuts
* :mod:`quasicut.quasilattice` -- membership, line subgroups, quotients
* :mod:`quasicut.delzant` -- level sets, charts, isotropy
* :mod:`quasicut.cutting` -- cuts in quasilattice and arbitrary directions
* :mod:`quasicut.blowup` -- blow-ups at fixed points
* :mod:`quasicut.docformat`, :mod:`quasicut.cli` -- input format and command line
"""
from .exactfield import (RATIONALS, FieldElement, FieldTower, adjoin_sqrt, approximate,
                         coerce, common_tower, sign)
from .polyhedra import HPolyhedron, analyze, combinatorial_type, halfspace_cut
from .quasilattice import Quasilattice, extend, line_subgroup, quotient, standard_lattice
from .delzant import build_model, isotropy, presentation, vertex_chart
from .cutting import CutSpec, arbitrary_cut, cut, reduced_space_info, validate_cut
from .blowup import BlowupSpec, admissible, blow_up, local_model, max_epsilon

__version__ = "0.1.0"

__all__ = [
    "RATIONALS", "FieldElement", "FieldTower", "adjoin_sqrt", "approximate", "coerce",
    "common_tower", "sign",
    "HPolyhedron", "analyze", "combinatorial_type", "halfspace_cut",
    "Quasilattice", "extend", "line_subgroup", "quotient", "standard_lattice",
    "build_model", "isotropy", "presentation", "vertex_chart",
    "CutSpec", "arbitrary_cut", "cut", "reduced_space_info", "validate_cut",
    "BlowupSpec", "admissible", "blow_up", "local_model", "max_epsilon",
]
