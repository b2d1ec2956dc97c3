"""Resource ceilings shared by the enumeration and collection code.

Every guarded operation reads its ceiling from here unless the caller passes an
explicit override. The command line sets these through flags; nothing is read
from the environment.
"""

DEFAULT_BASIS_CEILING = 1_000_000
DEFAULT_SERIES_CEILING = 200_000
DEFAULT_PARTITION_CEILING = 20
DEFAULT_ORACLE_CLASS_CEILING = 3

BASIS_CEILING = DEFAULT_BASIS_CEILING
SERIES_CEILING = DEFAULT_SERIES_CEILING
PARTITION_CEILING = DEFAULT_PARTITION_CEILING
ORACLE_CLASS_CEILING = DEFAULT_ORACLE_CLASS_CEILING


def set_basis_ceiling(value: int) -> None:
    """Sets the largest Hall basis :func:`nilmult.hall.generate` will build.

    The check is made against the size predicted by the Witt formula, before
    anything is enumerated.
    """
    global BASIS_CEILING
    BASIS_CEILING = value

def basis_ceiling() -> int:
    return BASIS_CEILING

def set_series_ceiling(value: int) -> None:
    """Sets the largest number of terms a truncated series may hold during collection."""
    global SERIES_CEILING
    SERIES_CEILING = value

def series_ceiling() -> int:
    return SERIES_CEILING

def set_partition_ceiling(value: int) -> None:
    """Sets the largest n for which all partitions of n are scanned."""
    global PARTITION_CEILING
    PARTITION_CEILING = value

def partition_ceiling() -> int:
    return PARTITION_CEILING

def set_oracle_class_ceiling(value: int) -> None:
    """Sets the largest class c accepted by :func:`nilmult.collect.verify_e1_congruence`."""
    global ORACLE_CLASS_CEILING
    ORACLE_CLASS_CEILING = value

def oracle_class_ceiling() -> int:
    return ORACLE_CLASS_CEILING

def reset_ceilings() -> None:
    """Restores every ceiling to its default value."""
    global BASIS_CEILING, SERIES_CEILING, PARTITION_CEILING, ORACLE_CLASS_CEILING
    BASIS_CEILING = DEFAULT_BASIS_CEILING
    SERIES_CEILING = DEFAULT_SERIES_CEILING
    PARTITION_CEILING = DEFAULT_PARTITION_CEILING
    ORACLE_CLASS_CEILING = DEFAULT_ORACLE_CLASS_CEILING
