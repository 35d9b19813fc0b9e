"""Graph-based topic extraction from token corpora.

Builds a cosine-similarity graph over word embeddings, prunes weak edges,
and reads topics off the maximal k-edge-connected subgraphs; ships a
weighted K-Means baseline and u_mass / c_v coherence scoring for
comparison.
"""

from .coherence import (
    CoherenceReport,
    CooccurrenceStats,
    collect_stats,
    cv,
    evaluate,
    npmi,
    umass,
)
from .corpus import (
    Corpus,
    PosMap,
    Segment,
    Vocabulary,
    build_vocabulary,
    filter_pos,
    load_corpus,
    load_pos_map,
    split_holdout,
    tokenize,
)
from .embeddings import (
    EmbeddingTable,
    HuffmanTree,
    SkipGramConfig,
    SkipGramHS,
    build_huffman,
    cosine,
    load_embeddings,
    save_embeddings,
    train_skipgram_hs,
)
from .errors import ConfigError, DataError, PipelineStageError
from .kcomponents import (
    ComponentHierarchy,
    Cut,
    KComponent,
    build_hierarchy,
    connected_components,
    edge_connectivity,
    global_min_cut,
    k_edge_subgraphs,
)
from .pipeline import (
    PipelineConfig,
    RunReport,
    emit_report,
    load_config,
    map_to_gold,
    run_kmeans_baseline,
    run_pipeline,
)
from .simgraph import (
    WordGraph,
    build_complete_graph,
    dump_edge_list,
    prune_percentile,
    prune_top_m,
    remove_isolated,
)
from .topics import (
    KMeansConfig,
    Topic,
    components_to_topics,
    kmeans_weighted,
    representatives_by_degree,
    representatives_by_tvs,
    topic_vector,
)

__version__ = "0.1.0"

__all__ = [
    "CoherenceReport", "CooccurrenceStats", "collect_stats", "cv", "evaluate",
    "npmi", "umass",
    "Corpus", "PosMap", "Segment", "Vocabulary", "build_vocabulary",
    "filter_pos", "load_corpus", "load_pos_map", "split_holdout", "tokenize",
    "EmbeddingTable", "HuffmanTree", "SkipGramConfig", "SkipGramHS",
    "build_huffman", "cosine", "load_embeddings", "save_embeddings",
    "train_skipgram_hs",
    "ConfigError", "DataError", "PipelineStageError",
    "ComponentHierarchy", "Cut", "KComponent", "build_hierarchy",
    "connected_components", "edge_connectivity", "global_min_cut",
    "k_edge_subgraphs",
    "PipelineConfig", "RunReport", "emit_report", "load_config", "map_to_gold",
    "run_kmeans_baseline", "run_pipeline",
    "WordGraph", "build_complete_graph", "dump_edge_list", "prune_percentile",
    "prune_top_m", "remove_isolated",
    "KMeansConfig", "Topic", "components_to_topics", "kmeans_weighted",
    "representatives_by_degree", "representatives_by_tvs", "topic_vector",
]
