"""Möbius function and the Witt formula for counting basic commutators."""

import logging
from collections.abc import Sequence
from math import factorial, gcd, prod
from typing import NamedTuple

from sympy import divisors
from sympy import mobius as sympy_mobius

from .exceptions import (
    DegreeLengthError,
    InexactDivisionError,
    NegativeValueError,
    NotPositiveError,
)

logger = logging.getLogger(__name__)


class WittCount(NamedTuple):
    """ The number of basic commutators of a given weight on a given number of letters. """
    weight: int
    letters: int
    value: int


def mobius(m: int) -> int:
    """Returns the Möbius function of ``m``.

    :param m: A positive integer.
    :returns: 1 for ``m == 1``, 0 if a prime divides ``m`` twice, otherwise
        ``(-1) ** s`` for ``s`` distinct prime factors.
    :rtype: int

    :Example:
        >>> mobius(30)
        -1
    """
    if m < 1:
        raise NotPositiveError("m", m)
    return int(sympy_mobius(m))


def witt(n: int, d: int) -> int:
    """Returns χ_n(d), the number of basic commutators of weight ``n`` on ``d`` letters.

    The sum over divisors is checked to be exactly divisible by ``n``.

    :Example:
        >>> witt(3, 3)
        8
    """
    if n < 1:
        raise NotPositiveError("n", n)
    if d < 0:
        raise NegativeValueError("d", d)
    total = sum(mobius(m) * d ** (n // m) for m in divisors(n))
    if total % n:
        raise InexactDivisionError(total, n)
    return total // n


def _words(degrees: Sequence[int], letters: Sequence[int]) -> int:
    """ Words with ``degrees[j]`` letters drawn from class ``j`` of size ``letters[j]``. """
    multinomial = factorial(sum(degrees)) // prod(factorial(k) for k in degrees)
    return multinomial * prod(n ** k for n, k in zip(letters, degrees, strict=True))


def witt_graded(degrees: Sequence[int], letters: Sequence[int]) -> int:
    """Counts basic commutators by how often they use each class of letters.

    The alphabet is split into classes, class ``j`` holding ``letters[j]``
    letters. The result is the number of basic commutators that use letters of
    class ``j`` exactly ``degrees[j]`` times in total.

    :Example:
        >>> witt_graded((2, 1), (1, 1))
        1
        >>> witt_graded((4,), (2,)) == witt(4, 2)
        True
    """
    if len(degrees) != len(letters):
        raise DegreeLengthError(len(degrees), len(letters))
    for name, values in (("degree", degrees), ("letters", letters)):
        for value in values:
            if value < 0:
                raise NegativeValueError(name, value)
    n = sum(degrees)
    if n < 1:
        raise NotPositiveError("weight", n)
    total = sum(mobius(m) * _words([k // m for k in degrees], letters)
                for m in divisors(gcd(*degrees)))
    if total % n:
        raise InexactDivisionError(total, n)
    return total // n


def witt_count(n: int, d: int) -> WittCount:
    return WittCount(n, d, witt(n, d))


def witt_table(max_weight: int, letters: int) -> list[WittCount]:
    """Returns χ_n(letters) for every weight ``1 <= n <= max_weight``."""
    if max_weight < 1:
        raise NotPositiveError("max_weight", max_weight)
    logger.debug("witt table up to weight %d on %d letters", max_weight, letters)
    return [witt_count(n, letters) for n in range(1, max_weight + 1)]
