import itertools
import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from math import prod

from sympy import factorint
from sympy.utilities.iterables import partitions as sympy_partitions

from . import limits
from .exceptions import (
    InvalidOrderError,
    NotDescendingError,
    NotPositiveError,
    PartitionLimitError,
)
from .witt import witt

logger = logging.getLogger(__name__)


class FinAbelian(tuple[tuple[int, int, int], ...]):
    """A finite abelian group stored as counted prime-power cyclic factors.

    Each entry ``(p, e, k)`` stands for ``k`` copies of the cyclic group of
    order ``p**e``. Entries are merged and kept sorted by prime, and by
    descending exponent within a prime, so two groups are isomorphic exactly
    when they are equal. The constructor takes ``(p, e)`` pairs (one copy
    each) or ``(p, e, k)`` triples.

    Direct sums are written with ``+``.

    :Example:
        >>> g = FinAbelian([(2, 1), (2, 2)])
        >>> str(g)
        'Z(2^2) + Z(2)'
        >>> g.order
        8
        >>> str(g + FinAbelian.elementary(3, 2))
        'Z(2^2) + Z(2) + Z(3)^2'
        >>> FinAbelian.elementary(3, 10**12).log_order(3)
        1000000000000
    """

# region Dunder functions

    def __new__(cls, factors: 'Iterable[tuple[int, ...]]' = ()) -> 'FinAbelian':
        counts: Counter[tuple[int, int]] = Counter()
        for factor in factors:
            p, e = int(factor[0]), int(factor[1])
            k = int(factor[2]) if len(factor) > 2 else 1
            if e > 0 and k > 0:
                counts[(p, e)] += k
        ordered = sorted(counts.items(), key=lambda item: (item[0][0], -item[0][1]))
        return super().__new__(cls, ((p, e, k) for (p, e), k in ordered))

    def __repr__(self) -> str:
        return f"FinAbelian({list(self)})"

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for p, e, k in self:
            base = f"Z({p})" if e == 1 else f"Z({p}^{e})"
            parts.append(base if k == 1 else f"{base}^{k}")
        return " + ".join(parts)

    def __add__(self, other: object) -> 'FinAbelian':
        if not isinstance(other, FinAbelian):
            return NotImplemented
        return FinAbelian([*self, *other])

    def __bool__(self) -> bool:
        """ A group is falsy when it is trivial. """
        return len(self) > 0

# endregion Dunder functions

# region Constructors

    @classmethod
    def trivial(cls) -> 'FinAbelian':
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> 'FinAbelian':
        return normalize([n])

    @classmethod
    def elementary(cls, p: int, rank: int) -> 'FinAbelian':
        return cls([(p, 1, rank)])

    @classmethod
    def from_exponents(cls, p: int, exponents: 'list[int] | tuple[int, ...]') -> 'FinAbelian':
        return cls([(p, e) for e in exponents])

    @classmethod
    def from_invariant_factors(cls, factors: 'list[int] | tuple[int, ...]') -> 'FinAbelian':
        return normalize(factors)

# endregion Constructors

# region Public properties

    @property
    def order(self) -> int:
        return prod(p ** (e * k) for p, e, k in self)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for p, _, _ in self}))

    @property
    def is_trivial(self) -> bool:
        return not self

    @property
    def is_elementary(self) -> bool:
        """ True for trivial groups and for Z_p^r with one prime p. """
        return len(self.primes) <= 1 and all(e == 1 for _, e, _ in self)

    def counts(self, p: int) -> tuple[tuple[int, int], ...]:
        """ ``(exponent, multiplicity)`` pairs of the ``p``-primary part, exponents descending. """
        return tuple((e, k) for q, e, k in self if q == p)

    def exponents(self, p: int) -> tuple[int, ...]:
        """ Descending exponents of the ``p``-primary part, one per cyclic factor. """
        return tuple(e for e, k in self.counts(p) for _ in range(k))

    def rank(self, p: int) -> int:
        return sum(k for _, k in self.counts(p))

    def log_order(self, p: int) -> int:
        """ The exponent of ``p`` in the order. """
        return sum(e * k for e, k in self.counts(p))

    @property
    def order_exponents(self) -> tuple[tuple[int, int], ...]:
        """ ``(p, log_p |G|)`` for each prime; safe for orders too large to print. """
        return tuple((p, self.log_order(p)) for p in self.primes)

    def primary_part(self, p: int) -> 'FinAbelian':
        return FinAbelian(f for f in self if f[0] == p)

    def invariant_factors(self) -> list[int]:
        """Returns the invariant factors ``n1 | n2 | ...`` of the group.

        :Example:
            >>> FinAbelian([(2, 2), (2, 1), (3, 1)]).invariant_factors()
            [2, 12]
        """
        width = max((self.rank(p) for p in self.primes), default=0)
        factors = [1] * width
        for p in self.primes:
            exps = self.exponents(p)
            # the largest exponent goes in the last invariant factor
            for i, e in enumerate(exps):
                factors[width - 1 - i] *= p ** e
        return factors

    def to_json(self) -> list[dict[str, object]]:
        """One object per prime: distinct exponents (descending) with their multiplicities."""
        return [{"p": p,
                 "exponents": [e for e, _ in self.counts(p)],
                 "multiplicities": [k for _, k in self.counts(p)]}
                for p in self.primes]

# endregion Public properties


@dataclass(frozen=True)
class PartitionValue:
    """ A partition of n (descending parts) with its S-function value. """
    parts: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class MaxAbelianReport:
    """Result of :func:`max_abelian`.

    ``best`` lists every partition attaining the maximum; ``second`` lists
    every partition with first part at least 2 attaining the largest value
    among such partitions (empty for ``n == 1``).
    """
    n: int
    c: int
    best: tuple[PartitionValue, ...]
    second: tuple[PartitionValue, ...]

    @property
    def best_value(self) -> int:
        return self.best[0].value

    @property
    def second_value(self) -> int | None:
        return self.second[0].value if self.second else None


@dataclass(frozen=True)
class DivisibilityReport:
    """ ``holds`` is true when ``divisor`` divides ``dividend``. """
    divisor: int
    dividend: int

    @property
    def holds(self) -> bool:
        return self.dividend % self.divisor == 0


# region Public functions

def normalize(orders: 'list[int] | tuple[int, ...]') -> FinAbelian:
    """Primary decomposition of ``Z_{n1} + Z_{n2} + ...``.

    :raises InvalidOrderError: for an order below 1.

    :Example:
        >>> str(normalize([12, 2]))
        'Z(2^2) + Z(2) + Z(3)'
    """
    factors = []
    for n in orders:
        if n < 1:
            raise InvalidOrderError(n)
        factors.extend(factorint(n).items())
    return FinAbelian(factors)


def tensor(a: FinAbelian, b: FinAbelian) -> FinAbelian:
    """``a ⊗ b``: a cyclic factor ``Z_gcd`` for every pair of factors over the same prime."""
    return FinAbelian((p, min(e, f), j * k) for p, e, j in a for q, f, k in b if p == q)


def iterated_tensor(b: FinAbelian, q: FinAbelian, c: int) -> FinAbelian:
    """``b ⊗ q ⊗ ... ⊗ q`` with ``c`` copies of ``q``."""
    if c < 1:
        raise NotPositiveError("c", c)
    result = b
    for _ in range(c):
        result = tensor(result, q)
    return result


def multiplier_abelian(g: FinAbelian, c: int) -> FinAbelian:
    """The c-nilpotent multiplier of a finite abelian group.

    For each prime with exponents ``m1 >= ... >= mk`` this is the direct sum
    over ``2 <= i <= k`` of ``Z_{p^{m_i}}`` with multiplicity
    ``χ_{c+1}(i) - χ_{c+1}(i-1)``; primes do not interact.

    :Example:
        >>> str(multiplier_abelian(FinAbelian.elementary(2, 3), 1))
        'Z(2)^3'
    """
    if c < 1:
        raise NotPositiveError("c", c)
    factors = []
    for p in g.primes:
        # positions before+1 .. before+k share exponent e; the multiplicities telescope
        before = 0
        for e, k in g.counts(p):
            factors.append((p, e, witt(c + 1, before + k) - witt(c + 1, before)))
            before += k
    return FinAbelian(factors)


def multiplier_abelian_invariant(g: FinAbelian, c: int) -> FinAbelian:
    """Same value as :func:`multiplier_abelian`, computed from invariant factors.

    With ``g = Z_{n1} + ... + Z_{nk}`` and ``n_{i+1} | n_i`` the multiplier is
    the sum over ``i >= 2`` of ``Z_{n_i}`` with multiplicity
    ``χ_{c+1}(i) - χ_{c+1}(i-1)``.
    """
    if c < 1:
        raise NotPositiveError("c", c)
    descending = list(reversed(g.invariant_factors()))
    orders = []
    for i, n in enumerate(descending, start=1):
        if i >= 2:
            orders.extend([n] * (witt(c + 1, i) - witt(c + 1, i - 1)))
    return normalize(orders)


def check_descending(exponents: 'list[int] | tuple[int, ...]') -> tuple[int, ...]:
    exponents = tuple(exponents)
    if any(e < 1 for e in exponents) or any(
            a < b for a, b in itertools.pairwise(exponents)):
        raise NotDescendingError(exponents)
    return exponents


def s_function(exponents: 'list[int] | tuple[int, ...]', c: int) -> int:
    """``S(k: m1, ..., mk)``: the exponent of p in the order of the multiplier.

    :Example:
        >>> s_function((2, 1, 1), 2)
        8
    """
    exponents = check_descending(exponents)
    if c < 1:
        raise NotPositiveError("c", c)
    return sum((witt(c + 1, i) - witt(c + 1, i - 1)) * m
               for i, m in enumerate(exponents, start=1) if i >= 2)


def refine(exponents: 'list[int] | tuple[int, ...]', j: int) -> tuple[int, ...]:
    """Splits ``Z_{p^{m_j}}`` into ``Z_{p^{m_j - 1}} + Z_p`` and re-sorts."""
    parts = list(check_descending(exponents))
    parts[j] -= 1
    parts.append(1)
    return tuple(sorted((m for m in parts if m > 0), reverse=True))


def refinement_gap(exponents: 'list[int] | tuple[int, ...]', j: int, c: int) -> int:
    """``S`` of the refined partition minus ``S`` of the original."""
    return s_function(refine(exponents, j), c) - s_function(exponents, c)


def partitions(n: int, ceiling: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of ``n`` as descending tuples, in descending lexicographic order."""
    if n < 1:
        raise NotPositiveError("n", n)
    if ceiling is None:
        ceiling = limits.partition_ceiling()
    if n > ceiling:
        raise PartitionLimitError(n, ceiling)
    found = []
    for part in sympy_partitions(n):
        found.append(tuple(sorted(Counter(part).elements(), reverse=True)))
    return sorted(found, reverse=True)


def max_abelian(n: int, c: int, ceiling: int | None = None) -> MaxAbelianReport:
    """Maximises ``S`` over every abelian p-group of order ``p^n``.

    All partitions of ``n`` are scanned. Ties are reported, never resolved.

    :Example:
        >>> report = max_abelian(4, 2)
        >>> report.best[0]
        PartitionValue(parts=(1, 1, 1, 1), value=20)
        >>> report.second[0]
        PartitionValue(parts=(2, 1, 1), value=8)
    """
    if c < 1:
        raise NotPositiveError("c", c)
    scored = [PartitionValue(parts, s_function(parts, c)) for parts in partitions(n, ceiling)]
    logger.debug("scanned %d partitions of %d at c=%d", len(scored), n, c)
    top = max(item.value for item in scored)
    best = tuple(item for item in scored if item.value == top)
    wide = [item for item in scored if item.parts[0] >= 2]
    second: tuple[PartitionValue, ...] = ()
    if wide:
        runner = max(item.value for item in wide)
        second = tuple(item for item in wide if item.value == runner)
    return MaxAbelianReport(n, c, best, second)


def summand_pairs(g: FinAbelian) -> list[tuple[FinAbelian, FinAbelian]]:
    """Every splitting ``g = B + Q`` into complementary sets of cyclic factors, up to isomorphism."""
    pairs = []
    for choice in itertools.product(*(range(k + 1) for _, _, k in g)):
        b = FinAbelian((p, e, taken) for (p, e, _), taken in zip(g, choice, strict=True))
        q = FinAbelian((p, e, k - taken) for (p, e, k), taken in zip(g, choice, strict=True))
        pairs.append((b, q))
    return pairs


def quotient_divisibility(b: FinAbelian, q: FinAbelian, c: int) -> DivisibilityReport:
    """``|M(G/B)|`` divides ``|M(G)|`` for ``G = B + Q``."""
    return DivisibilityReport(multiplier_abelian(q, c).order, multiplier_abelian(b + q, c).order)


def central_divisibility(b: FinAbelian, q: FinAbelian, c: int) -> DivisibilityReport:
    """``|M(G)|`` against ``|M(G/B)| |M(B)| |B ⊗_c G/B|`` for ``G = B + Q``.

    Holds for every splitting when ``c == 1``; fails for some splittings once
    ``c >= 2`` (for instance ``B = Q = Z_p``).
    """
    rhs = (multiplier_abelian(q, c).order * multiplier_abelian(b, c).order
           * iterated_tensor(b, q, c).order)
    return DivisibilityReport(multiplier_abelian(b + q, c).order, rhs)

# endregion Public functions
