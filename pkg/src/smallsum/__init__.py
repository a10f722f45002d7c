"""Small sumsets in finite abelian groups."""

from smallsum.errors import HypothesisError, SmallSumError, TheoremViolation
from smallsum.groups import (
    AbelianGroup,
    Element,
    GroupSpec,
    Subgroup,
    abelian_groups,
    all_subgroups,
    make_group,
    quotient,
)
from smallsum.setops import SubsetMask, boundary, exterior, is_aperiodic, normalize, period, sumset

__all__ = [
    "AbelianGroup",
    "Element",
    "GroupSpec",
    "HypothesisError",
    "SmallSumError",
    "Subgroup",
    "SubsetMask",
    "TheoremViolation",
    "abelian_groups",
    "all_subgroups",
    "boundary",
    "exterior",
    "is_aperiodic",
    "make_group",
    "normalize",
    "period",
    "quotient",
    "sumset",
]
