"""Moment cones and moment polytopes of compact Lie group embeddings via relative Schubert calculus."""
from .embedding import (EmbeddingData, diagonal_embedding, embedding_from_lattice_matrix, embedding_from_matrix,
                        embedding_from_weights, identity_embedding, make_compatible, principal_sl2, sl2_embedding,
                        torus_embedding)
from .errors import ConfigError, ResourceError, VerificationError
from .momentcone import (MomentConeEstimator, MomentProblem, apply_duality, cone_inequalities, grouped_cones,
                         grouped_system,
                         invariant_inequalities,
                         lattice_necessary, polytope_inequalities, polytope_system, scalar_inequalities, sl2_interval,
                         to_polytope_form)
from .oracle import (branching_multiplicity, decomposition, saturation_scan, tensor_decomposition,
                     weight_multiplicities)
from .polyhedra import (InequalitySystem, RationalCone, Row, implied, monoid_member, prune_redundant,
                        systems_equivalent, vertex_enumeration)
from .rootdata import RootDatum, WeylElement, build_root_datum, product_datum, unitary_datum
from .schubert import CohomologyClass, SchubertCalculus, phi_star, schubert_class

__version__ = "0.1.0"
