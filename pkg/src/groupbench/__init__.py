"""Exact computation in an HNN extension of F2, its amalgam over <b>, and
the combinatorial geometry hanging off them: normal forms and a two-route
word problem, strip areas of circuits in the Bass-Serre cover with a
linear isoperimetric bound, tree colorings, and CAT(0) link certification
for the associated triangle complexes.
"""

from .words import Letter, Word, free_reduce, invert, concat, parse_word, twist, word_str
from .hnn import (
    CosetRep,
    CosetShape,
    HNormalForm,
    IDENTITY,
    britton_is_identity,
    cayley_ball,
    commutator_power,
    coset_rep,
    coset_shape,
    is_parallel,
    normalize,
    normalize_str,
    pi,
    pi_u,
)
from .amalgam import (
    G_IDENTITY,
    GElement,
    TreeEdgeId,
    TreeVertexId,
    embed,
    from_steps,
    parse_sided_word,
    sided_word_str,
    spell,
    tree_edge,
    tree_vertex,
)
from .circuits import (
    Circuit,
    CoverVertex,
    CrossStep,
    FactorStep,
    IsoperimetricReport,
    StripChain,
    area,
    area_per_strip,
    check_isoperimetric,
    circuit_from_record,
    circuit_to_record,
    len_per_copy,
    parallel_class_sums,
    random_circuit,
    rebase_area,
    rectangle_circuit,
    strip_chain,
    walk,
)
from .treecolor import SampledSubtree, color_subtree, sample_subtree
from .links import (
    Cat0Report,
    GIRTH_BOUND,
    LinkGraph,
    TriangleSpec,
    add_path,
    build_link,
    certify_models,
    link_distance,
    shortest_injective_loop,
)
from .checks import Report, RunConfig, verify_all

__version__ = "0.1.0"
