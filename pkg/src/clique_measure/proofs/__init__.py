"""Semantic lines, tree-like refutations, decision-tree extraction and leaf certificates."""

from .extract import (
    DTNode,
    FDecisionTree,
    LeafCertificate,
    LeafEntry,
    balance_extract,
    certify_leaf_lower_bound,
    depth_bound,
    detect_missing_edge,
    leaf_tuple_sets,
    q_map,
    verify_search_tree,
)
from .lines import SemanticLine, line_from_clause, var_mask
from .refutation import (
    ProofNode,
    ResolutionNode,
    ResolutionProof,
    TreeRefutation,
    VerifyResult,
    resolution_to_semantic,
    tree_resolution_refutation,
    verify_tree_refutation,
)

__all__ = [
    "DTNode",
    "FDecisionTree",
    "LeafCertificate",
    "LeafEntry",
    "ProofNode",
    "ResolutionNode",
    "ResolutionProof",
    "SemanticLine",
    "TreeRefutation",
    "VerifyResult",
    "balance_extract",
    "certify_leaf_lower_bound",
    "depth_bound",
    "detect_missing_edge",
    "leaf_tuple_sets",
    "line_from_clause",
    "q_map",
    "resolution_to_semantic",
    "tree_resolution_refutation",
    "var_mask",
    "verify_search_tree",
    "verify_tree_refutation",
]
