"""Exact monoid, cone and corner computations for manifolds with generalized corners."""

from .latcone import (Cone, FaceHandle, Lattice, cokernel_torsion_free, cone_faces, dual_cone,
                      hermite_normal_form, hilbert_basis, relative_interior_contains,
                      smith_normal_form)
from .monoid import (AffineMonoid, MonoidClassification, MonoidError, MonoidFace, MonoidMorphism,
                     PresentedMonoid, classify, classify_presented, double_dual_map, dual,
                     face_dual, faces, fibre_product, groupification, is_free, is_isomorphic,
                     membership, presented_groupification, pushout_fg, pushout_toric, spec,
                     units_and_split, word_problem)
from .model import LocalModel, point_from_values
from .germ import MapGerm, PreconditionError
from .trans import FibreModel, TransversalityReport

__version__ = "0.1.0"
