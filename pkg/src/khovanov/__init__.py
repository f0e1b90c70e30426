"""Khovanov homology of link diagrams given as PD codes.

Exact Kauffman bracket and Jones polynomial, integral Khovanov homology in
the ordinary, framed and Z[c] gradings, and checks of the skein exact
sequences.
"""
from .bracket import bracket_skein_oracle, enhanced_monomial, jones_K, kauffman_bracket
from .complex import ChainComplex, check_d_squared, differential_matrix, incidence
from .diagram import (Crossing, IllegalMoveError, LinkDiagram, PDError, apply_move_script,
                      apply_r_move, crossing_sign, mirror, parse_pd, permute_crossings,
                      resolve_state, writhe)
from .framed import (FramedComplex, framed_complex, framed_homology, long_exact_sequence_check,
                     skein_chain_maps, smooth_at, verify_skein_ses)
from .homology import (AbelianGroupPresentation, HomologyTable, graded_euler_char,
                       homology_table, smith_normal_form)
from .linalg import SparseIntegerMatrix
from .polynomial import LaurentPolynomial
from .polyring import JWindow, ZcComplex, zc_differential_matrix, zc_homology_table
from .states import (CrossingBoundError, EnhancedState, enumerate_enhanced_states, gradings,
                     state_stats)

__version__ = "0.1.0"
