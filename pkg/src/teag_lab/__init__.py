"""Expressivity laboratory for typed entity-attribute graphs.

Builds typed directed multigraphs, evaluates duplicate-detection and cycle
predicates with brute-force oracles, runs exact message-passing
constructions and adaptation-aware color refinement, and reproduces the
random-weight indistinguishability trials from the command line.
"""

from .constructions import (
    CycEgoTrace,
    DupEgoTrace,
    cyc_ego,
    dup1_multigraph,
    dup1_simple,
    dupr_ego,
    dupr_ego_multigraph,
)
from .engine import (
    EngineConfig,
    FeatureDims,
    LayerWeights,
    embedding_distance,
    feature_dims,
    forward,
    init_weights,
)
from .errors import (
    GraphFormatError,
    InvalidPortsError,
    MissingPortsError,
    NotSimpleError,
    TeagLabError,
)
from .graph import (
    ATTRIBUTE,
    ENTITY,
    PLAIN,
    AdaptationSet,
    Edge,
    EntityAttributeView,
    GraphBuilder,
    NodeTypeDef,
    PortAssignment,
    TypedMultigraph,
    ValidityReport,
    assign_canonical_ports,
    is_functional,
    typed_neighborhood,
    validate_entity_attribute,
    validate_ports,
)
from .io import load_graph, save_graph
from .oracles import SimilarityTable, closed_walk, cyc, dup_r, overlap, soft_overlap
from .pairs import (
    SeparationPair,
    gen_cycle_pair,
    gen_k21_multigraph_pair,
    gen_k21_simple_pair,
    gen_k22_example,
    gen_k2r_pair,
)
from .refinement import ColorAssignment, indistinguishable, refine

__version__ = "0.1.0"

__all__ = [
    "ATTRIBUTE",
    "AdaptationSet",
    "ColorAssignment",
    "CycEgoTrace",
    "DupEgoTrace",
    "Edge",
    "EngineConfig",
    "EntityAttributeView",
    "ENTITY",
    "FeatureDims",
    "GraphBuilder",
    "GraphFormatError",
    "InvalidPortsError",
    "LayerWeights",
    "MissingPortsError",
    "NodeTypeDef",
    "NotSimpleError",
    "PLAIN",
    "PortAssignment",
    "SeparationPair",
    "SimilarityTable",
    "TeagLabError",
    "TypedMultigraph",
    "ValidityReport",
    "assign_canonical_ports",
    "closed_walk",
    "cyc",
    "cyc_ego",
    "dup1_multigraph",
    "dup1_simple",
    "dup_r",
    "dupr_ego",
    "dupr_ego_multigraph",
    "embedding_distance",
    "feature_dims",
    "forward",
    "gen_cycle_pair",
    "gen_k21_multigraph_pair",
    "gen_k21_simple_pair",
    "gen_k22_example",
    "gen_k2r_pair",
    "indistinguishable",
    "init_weights",
    "is_functional",
    "load_graph",
    "overlap",
    "refine",
    "save_graph",
    "soft_overlap",
    "typed_neighborhood",
    "validate_entity_attribute",
    "validate_ports",
]
