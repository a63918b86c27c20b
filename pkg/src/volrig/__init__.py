"""Exact and randomized tools for generic volume rigidity of hypergraphs."""
from .certify import (alpha_identity, alt1_check, coning_matrix, coning_rank_check, glue_certify,
                      glue_plan, split_certify, split_check, split_matrix, split_sets,
                      verify_paper)
from .complexes import (Hypergraph, SimplicialComplex, complete_uniform, cone, contract,
                        contract_complex, cross_polytope, hypergraph_link, link, presets,
                        simplex_boundary, skeleton, star, strong_components)
from .errors import ArgumentError, DegeneracyError, DimensionError, VolrigError
from .exactlinalg import Matrix, Realisation, det, kernel_basis, random_realisation, rank
from .exterior import PluckerVector, compound, vol_squared, wedge
from .field import GF, QQ, get_field
from .rigidity import (dof, is_rigid, kneser_reduction, rigidity_matrix, rigidity_report,
                       target_rank, trivial_motions)

__version__ = "0.1.0"
