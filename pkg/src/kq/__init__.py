"""Exact-arithmetic toolkit for the tilting quiver of the Grassmannian
of lines: Young tableau combinatorics, the quiver and its relation
ideal, and the embedding and reconstruction of points as stable quiver
representations."""

from .linalg import FormalLinComb, RatMatrix, rat
from .tableaux import (
    Partition,
    SkewShape,
    SkewTableau,
    contains,
    enumerate_ssyt,
    gamma_set,
    gl_dimension,
    hom_dim,
    is_lattice_word,
    lr_number,
    pieri_col,
    pieri_row,
    reverse_word,
    skew_decomposition,
    young_symmetrizer_image,
)
from .fibers import (
    FiberTensor,
    GrPoint,
    f_matrix,
    g_matrix,
    reduce_point,
    section_apply,
    section_matrix,
    surjectivity_rank,
    theta_compose,
)
from .quiver import (
    Arrow,
    Path,
    RelationElement,
    TiltingQuiver,
    build_quiver,
    enumerate_paths,
    graded_ideal_dim,
    quotient_dim,
    relation_sets,
)
from .moduli import (
    GaugeElement,
    QuiverRep,
    StabilityReport,
    assemble_W,
    check_relations,
    check_stability,
    embed,
    random_gauge,
    random_point,
    reconstruct,
    scramble,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
