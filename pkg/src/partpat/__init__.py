"""Pattern containment, avoidance counting and recurrence guessing for set partitions."""

from .core import (
    DomainError,
    PartitionError,
    PartitionSyntaxError,
    RGFError,
    SetPartition,
    complement,
    from_rgf,
    parse_partition,
    restrict,
    standardize,
    subpartition,
    to_rgf,
)
from .generate import SizeSet, bell, count_by_block_sizes, enumerate_partitions, stirling2
from .patterns import (
    AvoidanceProfile,
    Copy,
    Notion,
    avoidance_profile,
    avoids_all,
    contains,
    copies,
    count_avoiders,
    r_contains,
    r_copies,
    wilf_classes,
)
from .precursive import PRecurrence, extend, guess, verify
from .series import TruncatedSeries

__version__ = "0.1.0"
