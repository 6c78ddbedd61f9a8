"""Finite generalized quasi-uniform spaces: relations, supratopologies,
bases, products, sequence classification and the two infinite
counterexamples, with exhaustive checks on small universes."""

from .errors import (CapExceeded, CeilingExceeded, CertificateError, EmptyBase, GquError,
                     MissingDiagonal, NoSquareRefinement, NotStrong, NotUnionClosed,
                     PointOutOfRange, PreconditionViolated, UniverseMismatch)
from .gentop import (GenTopology, generate_from_base, is_generalized_continuous,
                     limit_and_cluster_points_ep, product_topology_base, validate_family)
from .product import ProductUniverse, product_base, product_universe, project_ep, projection, section_sequence
from .quniform import (SequenceClass, SpaceReport, UniformBase, classify_ep_sequence, contains_entourage,
                       core_entourage, decide_space_properties, induced_supratopology, is_gqu_continuous,
                       pervin_base, pervin_entourage, validate_base)
from .relation import MapPair, PointSet, Relation, Universe, compose, diagonal, full_relation, image, pullback
from .seqlab import EPSeq, all_ep_sequences, ep_normalize, ep_term, ep_values

__version__ = "0.1.0"
