"""Exact chains of extended Jordanian twists for so(M) and their Yangian R-matrices."""

from .scalar import GaussRational, parse_scalar
from .matrix import Matrix, kron, embed_leg, unipotent_exp, unipotent_log, unipotent_pow
from .ortho import Root, build_rep_table, build_root_system, carrier_quadruple, e
from .chain import ChainSpec, build_chain_spec, chain_element, factor_matrices, coproduct_image
from .rmatrix import rho, classical_r, twisted_R, lemma_R, yangian_R, yangian_R_truncated, p_and_k

__version__ = "0.1.0"
