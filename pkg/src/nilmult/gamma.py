"""The mixed tensor term Γ_{c+1}(A, B) and the direct-product multiplier formula.

``Γ_{c+1}(A, B)`` is built on an alphabet with one letter per cyclic factor
of ``A`` (the low block) followed by one letter per cyclic factor of ``B``.
Every basic commutator of weight ``c+1`` that uses letters from both blocks
contributes the tensor product of the cyclic groups in its slots, which is
cyclic of the gcd order. Different primes never meet in a non-zero term, so
the computation runs prime by prime.

Letters of equal exponent on the same side are interchangeable, so they are
grouped into classes and the commutators are counted per class degree with
:func:`~nilmult.witt.witt_graded` instead of being listed.

The two-letter reading, where each mixed basic commutator on ``{a < b}``
contributes ``A^{⊗s} ⊗ B^{⊗t}``, is available as :func:`gamma_two_letter`. It
agrees with :func:`gamma` up to ``c = 2`` and undercounts from ``c = 3``.
"""

import functools
import itertools
import logging
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass

from .abelian import FinAbelian, iterated_tensor, tensor
from .exceptions import NotPositiveError
from .hall import Alphabet, BasicCommutator, generate
from .witt import witt, witt_graded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaTermReport:
    """All mixed contributions whose slots hold ``s`` letters of A and ``t`` of B.

    ``commutators`` are the two-letter basic commutators on ``{a < b}`` with
    that content; ``term`` is the direct sum of their contributions.
    """
    content: tuple[int, int]
    commutators: tuple[BasicCommutator, ...]
    term: FinAbelian


@dataclass(frozen=True)
class GammaResult:
    group: FinAbelian
    terms: tuple[GammaTermReport, ...]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """ Every way to write ``total`` as an ordered sum of ``parts`` non-negative integers. """
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        edges = (-1, *bars, total + parts - 1)
        yield tuple(b - a - 1 for a, b in itertools.pairwise(edges))


@functools.cache
def _two_letter_stratum(weight: int) -> tuple[BasicCommutator, ...]:
    return tuple(generate(Alphabet(["a", "b"]), weight).stratum(weight))


def _check_class(c: int) -> None:
    if c < 1:
        raise NotPositiveError("c", c)


def two_letter_commutators(content: tuple[int, int]) -> tuple[BasicCommutator, ...]:
    """Basic commutators on ``{a < b}`` using ``a`` ``s`` times and ``b`` ``t`` times."""
    s, t = content
    return tuple(bc for bc in _two_letter_stratum(s + t)
                 if bc.content[0] == s and bc.content[1] == t)


def gamma(a: FinAbelian, b: FinAbelian, c: int) -> GammaResult:
    """Computes ``Γ_{c+1}(a, b)`` with its terms grouped by content.

    :Example:
        >>> result = gamma(FinAbelian.elementary(2, 2), FinAbelian.elementary(2, 1), 2)
        >>> str(result.group)
        'Z(2)^6'
        >>> [(t.content, str(t.term)) for t in result.terms]
        [((2, 1), 'Z(2)^4'), ((1, 2), 'Z(2)^2')]
    """
    _check_class(c)
    weight = c + 1
    by_content: dict[tuple[int, int], list[tuple[int, int, int]]] = defaultdict(list)
    for p in sorted(set(a.primes) & set(b.primes)):
        low, high = a.counts(p), b.counts(p)
        classes = low + high
        sizes = [k for _, k in classes]
        for degrees in _compositions(weight, len(classes)):
            s = sum(degrees[:len(low)])
            if s in (0, weight):
                continue
            count = witt_graded(degrees, sizes)
            if count:
                e = min(classes[j][0] for j, k in enumerate(degrees) if k)
                by_content[(s, weight - s)].append((p, e, count))

    terms = []
    for s in range(weight - 1, 0, -1):
        content = (s, weight - s)
        terms.append(GammaTermReport(content, two_letter_commutators(content),
                                     FinAbelian(by_content.get(content, []))))
    group = FinAbelian([f for term in terms for f in term.term])
    logger.debug("gamma_%d(%s, %s) = %s", weight, a, b, group)
    return GammaResult(group, tuple(terms))


def gamma_two_letter(a: FinAbelian, b: FinAbelian, c: int) -> GammaResult:
    """``Γ_{c+1}`` where every mixed two-letter commutator carries whole-group slots."""
    _check_class(c)
    terms = []
    for bc in _two_letter_stratum(c + 1):
        s, t = bc.content[0], bc.content[1]
        if not (s and t):
            continue
        term = iterated_tensor(a, a, s - 1) if s > 1 else a
        for _ in range(t):
            term = tensor(term, b)
        terms.append(GammaTermReport((s, t), (bc,), term))
    group = FinAbelian([f for term in terms for f in term.term])
    return GammaResult(group, tuple(terms))


def elementary_gamma_exponent(r: int, s: int, c: int) -> int:
    """``log_p |Γ_{c+1}(Z_p^r, Z_p^s)|``, the number of mixed basic commutators."""
    return witt(c + 1, r + s) - witt(c + 1, r) - witt(c + 1, s)


def multiplier_direct_product(mg: FinAbelian, mh: FinAbelian, gab: FinAbelian,
                              hab: FinAbelian, c: int) -> FinAbelian:
    """``M(G × H) = M(G) + M(H) + Γ_{c+1}(G^ab, H^ab)``.

    :param mg: The multiplier of ``G``.
    :param mh: The multiplier of ``H``.
    :param gab: The abelianization of ``G``.
    :param hab: The abelianization of ``H``.
    """
    return mg + mh + gamma(gab, hab, c).group
