"""Multilayer network engine: ingestion, metrics, projection, layouts, service."""

from .model import (
    GENERAL,
    INTERLAYER,
    INTRALAYER,
    REPLICA,
    DirectionMismatchError,
    EngineError,
    ExtendedEdge,
    LayerDef,
    NetworkSnapshot,
    PhysicalNode,
    StateNode,
    UnknownLayerError,
    UnknownNodeError,
    UnknownStateNodeError,
    classify_edge,
)
from .ingest import (
    Issue,
    ValidationReport,
    document_dict,
    normalize_directedness,
    parse_csv,
    parse_json,
    serialize_json,
    stable_dumps,
)
from .metrics import (
    MetricsBundle,
    aggregate_over_layers,
    average_density,
    compute_bundle,
    histogram,
    interlayer_degree,
    interlayer_strength,
    intralayer_degree,
    intralayer_strength,
    jaccard_edges,
    jaccard_nodes,
    layer_density,
    participation,
)
from .meta import CanonicalEdgeKey, MetaNetwork, build_meta, canonicalize, meta_degree, meta_strength
from .layout import (
    LayerGraphLayout,
    LayerLocalLayout,
    MissingCoordinatesError,
    StackParams,
    StackProjection,
    layout_geographic,
    layout_grid,
    layout_layer,
    layout_layer_graph,
    layout_union,
    project_stack,
    stack_for_snapshot,
)
from .session import (
    AttributeFilter,
    FilteredView,
    Filters,
    SessionCorruptError,
    SessionState,
    SessionVersionError,
    apply_filters,
    compare_layers,
    load_session,
    save_session,
    select_node,
)

__version__ = "1.0.0"

__all__ = [
    "GENERAL",
    "INTERLAYER",
    "INTRALAYER",
    "REPLICA",
    "AttributeFilter",
    "CanonicalEdgeKey",
    "DirectionMismatchError",
    "EngineError",
    "ExtendedEdge",
    "FilteredView",
    "Filters",
    "Issue",
    "LayerDef",
    "LayerGraphLayout",
    "LayerLocalLayout",
    "MetaNetwork",
    "MetricsBundle",
    "MissingCoordinatesError",
    "NetworkSnapshot",
    "PhysicalNode",
    "SessionCorruptError",
    "SessionState",
    "SessionVersionError",
    "StackParams",
    "StackProjection",
    "StateNode",
    "UnknownLayerError",
    "UnknownNodeError",
    "UnknownStateNodeError",
    "ValidationReport",
    "aggregate_over_layers",
    "apply_filters",
    "average_density",
    "build_meta",
    "canonicalize",
    "classify_edge",
    "compare_layers",
    "compute_bundle",
    "document_dict",
    "histogram",
    "interlayer_degree",
    "interlayer_strength",
    "intralayer_degree",
    "intralayer_strength",
    "jaccard_edges",
    "jaccard_nodes",
    "layer_density",
    "layout_geographic",
    "layout_grid",
    "layout_layer",
    "layout_layer_graph",
    "layout_union",
    "load_session",
    "meta_degree",
    "meta_strength",
    "normalize_directedness",
    "parse_csv",
    "parse_json",
    "participation",
    "project_stack",
    "save_session",
    "select_node",
    "serialize_json",
    "stable_dumps",
    "stack_for_snapshot",
    "__version__",
]
