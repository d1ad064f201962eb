"""Maximal fillings of moon polyominoes and their reduced pipe dreams.

Submodules: ``shape`` (polyominoes), ``filling`` (chains and maximal
fillings), ``pipedream`` (pipe dreams and permutations), ``chute`` (chute
moves, posets, lattice checks), ``schubert`` (polynomials and counting),
``eg`` (Edelman-Greene insertion), ``bijections`` (triangulations and Dyck
fans), ``acceptance`` (reproduction checks) and ``cli``.
"""

from .shape import (
    Cell,
    MoonShape,
    ShapeClass,
    classify,
    column_heights,
    enumerate_moon_shapes,
    ferrers,
    is_ferrers,
    is_stack,
    parse_shape,
    reverse_staircase,
    staircase,
)
from .filling import (
    Filling,
    d_bot,
    d_top,
    enumerate_maximal,
    is_maximal,
    longest_ne_chain,
    parse_filling,
    zeros_per_row,
)
from .pipedream import (
    PipeDream,
    bb_bot,
    bb_top,
    coxeter_length,
    enumerate_rc,
    evaluate_word,
    from_filling,
    is_reduced,
    permutation_of,
    shape_permutation,
    to_filling,
    word_of,
)
from .chute import (
    apply_chute,
    apply_inverse_chute,
    chute_poset,
    find_chutable,
    flip,
    flip_graph,
    interval_check,
    is_lattice,
    rc_poset,
)
from .schubert import (
    is_vexillary,
    ktriangulation_count,
    schubert_divided_difference,
    schubert_from_rc,
)
from .eg import BiWord, Tableau, biword_of_filling, check_counterexample, check_ne_se, eg_insert, eg_pair, mu_vector
from .bijections import (
    DiagonalSet,
    DyckFan,
    diagonals_to_filling,
    filling_to_diagonals,
    filling_to_fan,
    jonsson_check,
    max_mutual_crossing,
)

__version__ = "0.1.0"
