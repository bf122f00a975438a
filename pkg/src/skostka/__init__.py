"""Signed p-Kostka numbers over odd primes.

Two independent engines compute the Krull-Schmidt multiplicities of
signed Young modules inside signed Young permutation modules: a
combinatorial reduction to smaller plain and projective multiplicities
(reduction), and a direct decomposition of explicit modules over GF(p)
(modrep). Tableaux counts and character vectors (tabx) give a third,
filtration-level view, and the command line (cli) binds the engines
together with caches and verification suites.
"""

from . import combinat, gfp, modrep, reduction, tabx
from .combinat import (
    cmp_total,
    enumerate_p2,
    enumerate_p2p,
    mullineux,
    p_adic_expansion,
    total_key,
)
from .modrep import (
    DimensionCapError,
    DirectEngine,
    IntegrityError,
    assemble_matrix,
    build_module,
    decompose_labelled,
    hom_basis,
    modules_isomorphic,
    projective_oracle,
    radical,
    split_idempotents,
    wedderburn,
    wedderburn_module,
)
from .reduction import (
    enumerate_lambda,
    enumerate_lambda_supp,
    product_formula,
    rowcut_lower_bound,
    sign_twist_label,
    signed_kostka,
)
from .tabx import char_vector, count_signed_ssyt, iso_equivalent, pieri_expand

__version__ = "0.1.0"

__all__ = [
    "DimensionCapError",
    "DirectEngine",
    "IntegrityError",
    "assemble_matrix",
    "build_module",
    "char_vector",
    "cmp_total",
    "combinat",
    "count_signed_ssyt",
    "decompose_labelled",
    "enumerate_lambda",
    "enumerate_lambda_supp",
    "enumerate_p2",
    "enumerate_p2p",
    "gfp",
    "hom_basis",
    "iso_equivalent",
    "modrep",
    "modules_isomorphic",
    "mullineux",
    "p_adic_expansion",
    "pieri_expand",
    "product_formula",
    "projective_oracle",
    "radical",
    "reduction",
    "rowcut_lower_bound",
    "sign_twist_label",
    "signed_kostka",
    "split_idempotents",
    "tabx",
    "total_key",
    "wedderburn",
    "wedderburn_module",
]
