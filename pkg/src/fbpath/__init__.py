"""Exact q-polynomial toolkit for Forrester-Baxter lattice paths.

Models weighted unit-step paths on the strip [1, p'-1], the combinatorial
transforms that generate them from the trivial (1, 3) model, and every route
to their weight generating functions (recurrences, bosonic and fermionic
sums, hook-difference partition counts), all in exact integer arithmetic.
"""

from .qseries import (
    QPolynomial,
    QSeriesTruncated,
    QuarterPolynomial,
    gaussian,
    pochhammer_trunc,
    q_inverse_normalized,
)
from .paths import (
    ModelParams,
    Path,
    PathError,
    StrikingSequence,
    VertexInfo,
    enumerate_paths,
    flip,
    make_path,
    striking_sequence,
    validate,
    vertices,
    wt,
    wt_fb_quarter,
    wt_from_striking,
)
from .cfmn import (
    CartanLike,
    ContinuedFraction,
    MNVectors,
    ZoneData,
    cartan_like,
    continued_fraction,
    solve_m,
    verify_cartan,
    zones,
)
from .transforms import (
    SectorLabel,
    TransformError,
    TransformRecord,
    b1,
    b2,
    b3,
    b_transform,
    d_transform,
    particle_content,
    particle_move,
    sector_construct,
    sector_decompose,
)
from .bijection import (
    BijectionError,
    HookConstraints,
    Partition,
    enumerate_dki,
    hook_difference,
    partition_to_path,
    path_to_partition,
    satisfies_dki,
)
from .charform import (
    CharFormError,
    CharLabels,
    chi_bosonic,
    chi_bruteforce,
    chi_fermionic_infinite_trunc,
    chi_fermionic_lambda,
    chi_fermionic_m,
    chi_normalize,
    chi_recurrence,
    dki_closed,
    dki_recurrence,
    gordon_trunc,
    ground_labels,
    phi_recurrence,
    rocha_caridi_trunc,
    sector_genfun,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
