"""Citation-network mapping: seed ingest, DOI resolution, snowball
expansion, community detection, rankings, and deterministic graph exports."""

__version__ = "0.1.0"

from .community import (
    CommunityAssignment,
    CommunityLabel,
    LabeledAssignment,
    apply_labels,
    community_sizes,
    detect_communities,
    modularity,
)
from .errors import (
    CitemapError,
    ConflictingRecord,
    DanglingReference,
    EmptyFile,
    EmptyFrontier,
    EmptyGraph,
    IncompleteMembership,
    MalformedRow,
    MissingHeader,
    NoResolvableSeeds,
    NotADoi,
    UnknownCommunityId,
)
from .expander import ExpansionFrontier, expand_corpus, frontier_step
from .exporters import (
    ReviewManifest,
    parse_gexf,
    write_corpus_csv,
    write_gexf,
    write_report,
    write_resolution_log_csv,
    write_web_json,
)
from .graph import (
    CitationGraph,
    FilterSpec,
    build_graph,
    degree_stats,
    filter_graph,
    largest_weak_component,
)
from .ingest import (
    extract_reference_dois,
    normalize_doi,
    parse_corpus_csv,
    parse_seed_table,
)
from .model import ArticleRecord, Corpus, SeedEntry
from .rankings import RankedEntry, rank_authors, rank_subjects
from .resolver import (
    MetadataResolver,
    ResolutionLog,
    ResolutionOutcome,
    ResolverPolicy,
    resolve_batch,
    resolve_metadata,
)

__all__ = [
    "__version__",
    "ArticleRecord",
    "CitationGraph",
    "CitemapError",
    "CommunityAssignment",
    "CommunityLabel",
    "ConflictingRecord",
    "Corpus",
    "DanglingReference",
    "EmptyFile",
    "EmptyFrontier",
    "EmptyGraph",
    "ExpansionFrontier",
    "FilterSpec",
    "IncompleteMembership",
    "LabeledAssignment",
    "MalformedRow",
    "MetadataResolver",
    "MissingHeader",
    "NoResolvableSeeds",
    "NotADoi",
    "RankedEntry",
    "ResolutionLog",
    "ResolutionOutcome",
    "ResolverPolicy",
    "ReviewManifest",
    "SeedEntry",
    "UnknownCommunityId",
    "apply_labels",
    "build_graph",
    "community_sizes",
    "degree_stats",
    "detect_communities",
    "expand_corpus",
    "extract_reference_dois",
    "filter_graph",
    "frontier_step",
    "largest_weak_component",
    "modularity",
    "normalize_doi",
    "parse_corpus_csv",
    "parse_gexf",
    "parse_seed_table",
    "rank_authors",
    "rank_subjects",
    "resolve_batch",
    "resolve_metadata",
    "write_corpus_csv",
    "write_gexf",
    "write_report",
    "write_resolution_log_csv",
    "write_web_json",
]
