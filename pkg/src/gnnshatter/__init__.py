"""Exact shattering certificates for single-parameter GNN families."""
from .bits import BitVector, all_bitvectors
from .constructions import (
    FamilyInstance,
    build_pl_gnn,
    build_pl_graph,
    build_sine_gnn,
    build_sine_graph,
    q_index,
    verify_q_bijection,
)
from .gnn import Activation, Embedding, GnnSpec, Layer, classify, forward, forward_by_degree, pad_layers, pl_triangle
from .graph import DegreeHistogram, Graph, degree, degree_histogram, make_circulant_regular, union_and_join
from .kernels import BACKEND as KERNEL_BACKEND
from .numerics import SinKind, SinValue, gamma_pl, gamma_sine, sin_bit_extract, sinpi_half
from .shatter import ShatterReport, brute_force_shatter, verify_family_shatter, verify_lemma
from .wl import Coloring, wl_distinguish, wl_stable, wl_step

__version__ = "0.1.0"
