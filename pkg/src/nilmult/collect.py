"""Arithmetic in free nilpotent groups, integer lattices, and the E1 congruence oracle.

Elements of ``F / γ_{W+1}(F)`` for the free group ``F`` on ``d`` letters are
kept in collected normal form: an exponent vector over the Hall basis, read as
the product ``b_1^{e_1} b_2^{e_2} ...`` in ascending basis order.

Products are computed through the Magnus embedding ``x_i -> 1 + X_i`` into
non-commuting power series truncated above degree ``W``. The embedding is
faithful on ``F / γ_{W+1}(F)``, so collecting a series back into normal form is
exact: working up one weight at a time, the lowest-degree part of the series
is an integer combination of the Lie elements of the basic commutators of that
weight; those coefficients are the exponents, and the matching basis powers are
divided off on the left before moving to the next weight.
"""

import logging
import random
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from sympy import ZZ, Matrix, isprime
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors

from . import limits
from .abelian import FinAbelian, normalize
from .exceptions import (
    CollectionBlowUpError,
    ContextMismatchError,
    NotInGammaError,
    NotInImageError,
    NotPrimeError,
    OracleLimitError,
    RankMismatchError,
    TooSmallError,
)
from .hall import HallBasis, generate
from .witt import witt

logger = logging.getLogger(__name__)

Series = dict[tuple[int, ...], int]

ONE: Series = {(): 1}


# region Private functions

def _binomial(n: int, t: int) -> int:
    """ Binomial coefficient valid for negative ``n``. """
    return prod(n - j for j in range(t)) // factorial(t)


def _mul(a: Series, b: Series, max_degree: int, ceiling: int) -> Series:
    by_length: dict[int, list[tuple[tuple[int, ...], int]]] = defaultdict(list)
    for word, coeff in b.items():
        by_length[len(word)].append((word, coeff))
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for u, x in a.items():
        room = max_degree - len(u)
        for length in range(room + 1):
            for v, y in by_length.get(length, ()):
                out[u + v] += x * y
    result = {word: coeff for word, coeff in out.items() if coeff}
    if len(result) > ceiling:
        raise CollectionBlowUpError(len(result), ceiling)
    return result


def _inv(a: Series, max_degree: int, ceiling: int) -> Series:
    """ Inverse of a series with constant term 1. """
    nil = {word: -coeff for word, coeff in a.items() if word}
    result = dict(ONE)
    term = dict(ONE)
    for _ in range(max_degree):
        term = _mul(term, nil, max_degree, ceiling)
        if not term:
            break
        for word, coeff in term.items():
            result[word] = result.get(word, 0) + coeff
    return {word: coeff for word, coeff in result.items() if coeff}


def _add_scaled(target: dict[tuple[int, ...], int], series: Series, scale: int) -> None:
    for word, coeff in series.items():
        target[word] = target.get(word, 0) + scale * coeff

# endregion Private functions


class _StratumSolver:
    """Reads exponents of one weight off the lowest-degree part of a series.

    The Lie elements of the basic commutators of this weight are linearly
    independent, so a square invertible block of their coefficient matrix
    (columns picked by row reduction) determines the exponents; the full
    combination is then checked against the input.
    """

    def __init__(self, weight: int, lie: list[Series]) -> None:
        self.weight = weight
        self.lie = lie
        columns = sorted({word for poly in lie for word in poly})
        rows = [[poly.get(word, 0) for word in columns] for poly in lie]
        _, pivots = Matrix(rows).rref()
        self.pivot_words = [columns[j] for j in pivots]
        block = Matrix([[row[j] for j in pivots] for row in rows]).inv()
        self.inverse = [[Fraction(int(x.p), int(x.q)) for x in block.row(i)]
                        for i in range(block.rows)]

    def solve(self, part: Series) -> list[int]:
        size = len(self.lie)
        rhs = [part.get(word, 0) for word in self.pivot_words]
        exponents = []
        for j in range(size):
            value = sum((rhs[i] * self.inverse[i][j] for i in range(size)), Fraction(0))
            if value.denominator != 1:
                raise NotInImageError(self.weight)
            exponents.append(int(value))
        check: dict[tuple[int, ...], int] = {}
        for e, poly in zip(exponents, self.lie, strict=True):
            if e:
                _add_scaled(check, poly, e)
        if {w: c for w, c in check.items() if c} != part:
            raise NotInImageError(self.weight)
        return exponents


class NilGroupCtx:
    """The free nilpotent group of class ``max_weight`` on ``d`` generators.

    Holds the Hall basis, the Magnus image of every basis element, and a lazily
    filled table of commutators of basis elements. Calls on one context may come
    from several threads; the table is guarded by a lock.

    :Example:
        >>> ctx = NilGroupCtx(2, 2)
        >>> x1, x2 = ctx.generator(0), ctx.generator(1)
        >>> (x2 * x1).exponents
        (1, 1, 1)
    """

    def __init__(self, d: int, max_weight: int, series_ceiling: int | None = None,
                 basis_ceiling: int | None = None) -> None:
        self.basis: HallBasis = generate(d, max_weight, basis_ceiling)
        self.d = d
        self.max_weight = max_weight
        self.series_ceiling = (limits.series_ceiling() if series_ceiling is None
                               else series_ceiling)
        self.commutator_table: dict[tuple[int, int], NilWord] = {}
        self._lock = threading.Lock()
        self._weights = [bc.weight for bc in self.basis]
        self._nil_powers: list[list[Series]] = []
        self._build_magnus()
        self._solvers = {
            k: _StratumSolver(k, [self._lie(i) for i in self.basis.weight_range(k)])
            for k in range(1, max_weight + 1) if self.basis.weight_range(k)
        }
        logger.debug("nilpotent context d=%d W=%d with %d basis elements",
                     d, max_weight, len(self.basis))

    def __repr__(self) -> str:
        return f"NilGroupCtx(d={self.d}, max_weight={self.max_weight})"

# region Series plumbing

    def mul_series(self, a: Series, b: Series) -> Series:
        return _mul(a, b, self.max_weight, self.series_ceiling)

    def inv_series(self, a: Series) -> Series:
        return _inv(a, self.max_weight, self.series_ceiling)

    def _build_magnus(self) -> None:
        images: list[Series] = []
        for bc in self.basis:
            if bc.is_letter:
                image = {(): 1, (bc.index,): 1}
            else:
                left = images[self.basis.index_of[bc.left]]
                right = images[self.basis.index_of[bc.right]]
                image = self.series_commutator(left, right)
            images.append(image)
            nil = {word: coeff for word, coeff in image.items() if word}
            powers = [nil]
            for _ in range(self.max_weight // bc.weight - 1):
                powers.append(self.mul_series(powers[-1], nil))
            self._nil_powers.append(powers)
        self._images = images

    def series_commutator(self, a: Series, b: Series) -> Series:
        left = self.mul_series(self.inv_series(a), self.inv_series(b))
        return self.mul_series(self.mul_series(left, a), b)

    def _lie(self, index: int) -> Series:
        weight = self._weights[index]
        return {w: c for w, c in self._nil_powers[index][0].items() if len(w) == weight}

    def basis_power(self, index: int, exponent: int) -> Series:
        """ ``μ(b_index) ** exponent`` expanded binomially. """
        result = dict(ONE)
        for t, power in enumerate(self._nil_powers[index], start=1):
            scale = _binomial(exponent, t)
            if scale:
                _add_scaled(result, power, scale)
        return {word: coeff for word, coeff in result.items() if coeff}

    def magnus(self, exponents: tuple[int, ...]) -> Series:
        """ The series of the normal-form word with these exponents. """
        series = dict(ONE)
        for i, e in enumerate(exponents):
            if e:
                series = self.mul_series(series, self.basis_power(i, e))
        return series

    def collect(self, series: Series) -> tuple[int, ...]:
        """Returns the normal-form exponents of the element with this series.

        :raises NotInImageError: if ``series`` is not the image of a group element.
        """
        g = dict(series)
        exponents = [0] * len(self.basis)
        for weight in range(1, self.max_weight + 1):
            part = {w: c for w, c in g.items() if len(w) == weight}
            if not part:
                continue
            if weight not in self._solvers:
                raise NotInImageError(weight)
            solved = self._solvers[weight].solve(part)
            for i, e in zip(self.basis.weight_range(weight), solved, strict=True):
                exponents[i] = e
                if e:
                    g = self.mul_series(self.basis_power(i, -e), g)
        if g != ONE:
            raise NotInImageError(self.max_weight)
        return tuple(exponents)

# endregion Series plumbing

# region Words

    def word(self, exponents: 'list[int] | tuple[int, ...]') -> 'NilWord':
        return NilWord(self, exponents)

    def identity(self) -> 'NilWord':
        return NilWord(self, [0] * len(self.basis))

    def basis_word(self, index: int) -> 'NilWord':
        exponents = [0] * len(self.basis)
        exponents[index] = 1
        return NilWord(self, exponents)

    def generator(self, letter: int) -> 'NilWord':
        """ The free generator with letter index ``letter`` (basis position ``letter``). """
        return self.basis_word(letter)

    def basis_commutator(self, i: int, j: int) -> 'NilWord':
        """``[b_i, b_j]`` in normal form, memoized in :attr:`commutator_table`."""
        with self._lock:
            cached = self.commutator_table.get((i, j))
        if cached is not None:
            return cached
        series = self.series_commutator(self._images[i], self._images[j])
        value = NilWord(self, self.collect(series))
        with self._lock:
            self.commutator_table.setdefault((i, j), value)
        return value

    def random_word(self, rng: random.Random, bound: int = 3) -> 'NilWord':
        return NilWord(self, [rng.randint(-bound, bound) for _ in self.basis])

# endregion Words


class NilWord(tuple[int, ...]):
    """An element of a free nilpotent group, as normal-form exponents.

    ``*`` multiplies, ``**`` raises to an integer power.
    """

    def __new__(cls, ctx: NilGroupCtx, exponents: 'list[int] | tuple[int, ...]') -> 'NilWord':
        self = super().__new__(cls, (int(e) for e in exponents))
        self.ctx = ctx
        return self

    def __repr__(self) -> str:
        return f"NilWord({list(self)})"

    def __str__(self) -> str:
        if not any(self):
            return "1"
        return " ".join(f"{self.ctx.basis[i]}^{e}" if e != 1 else str(self.ctx.basis[i])
                        for i, e in enumerate(self) if e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NilWord):
            return NotImplemented
        return self.ctx is other.ctx and tuple.__eq__(self, other)

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return tuple.__hash__(self)

    def __mul__(self, other: object) -> 'NilWord':
        if not isinstance(other, NilWord):
            return NotImplemented
        return multiply(self, other)

    def __pow__(self, e: int) -> 'NilWord':
        return power(self, e)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def series(self) -> Series:
        if not hasattr(self, "_series"):
            self._series = self.ctx.magnus(self.exponents)
        return self._series

    @property
    def is_identity(self) -> bool:
        return not any(self)


@dataclass(frozen=True)
class IntLattice:
    """The subgroup of ``Z^rank`` spanned by integer rows.

    Equality of lattices is equality of their Hermite normal forms.
    """
    rank: int
    rows: tuple[tuple[int, ...], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_rows(cls, rank: int, rows: 'list[list[int]] | list[tuple[int, ...]]') -> 'IntLattice':
        return cls(rank, tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def scaled_identity(cls, rank: int, scale: int) -> 'IntLattice':
        return cls(rank, tuple(tuple(scale if i == j else 0 for j in range(rank))
                               for i in range(rank)))

    @property
    def nonzero_rows(self) -> list[tuple[int, ...]]:
        return [row for row in self.rows if any(row)]

    @property
    def hermite_form(self) -> tuple[tuple[int, ...], ...]:
        """Canonical generators of the lattice, one per row."""
        if "hnf" not in self._cache:
            rows = self.nonzero_rows
            if not rows:
                self._cache["hnf"] = ()
            else:
                columns = hermite_normal_form(Matrix(rows).T)
                self._cache["hnf"] = tuple(tuple(int(x) for x in columns.col(j))
                                           for j in range(columns.cols))
        return self._cache["hnf"]

    def to_json(self) -> dict[str, object]:
        return {
            "rank": self.rank,
            "generators": [list(row) for row in self.rows],
            "hermite_form": [list(row) for row in self.hermite_form],
        }


@dataclass(frozen=True)
class SmithQuotient:
    torsion: FinAbelian
    free_rank: int


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of :func:`verify_e1_congruence`.

    ``index`` is the order of the quotient (``None`` if it is infinite);
    ``expected_index`` is ``p ** ambient_rank``.
    """
    p: int
    c: int
    holds: bool
    quotient: FinAbelian
    free_rank: int
    ambient_rank: int
    generator_count: int
    lattice: IntLattice

    @property
    def index(self) -> int | None:
        return self.quotient.order if self.free_rank == 0 else None

    @property
    def expected_index(self) -> int:
        return self.p ** self.ambient_rank

    def to_json(self) -> dict[str, object]:
        return {
            "p": self.p,
            "c": self.c,
            "holds": self.holds,
            "ambient_rank": self.ambient_rank,
            "free_rank": self.free_rank,
            "quotient": self.quotient.to_json(),
            "lattice": self.lattice.to_json(),
        }


# region Public functions

def _same_ctx(a: NilWord, b: NilWord) -> NilGroupCtx:
    if a.ctx is not b.ctx:
        raise ContextMismatchError()
    return a.ctx


def multiply(a: NilWord, b: NilWord) -> NilWord:
    """The collected normal form of ``a * b``.

    :raises CollectionBlowUpError: when a series outgrows the configured ceiling.
    """
    ctx = _same_ctx(a, b)
    return NilWord(ctx, ctx.collect(ctx.mul_series(a.series, b.series)))


def inverse(a: NilWord) -> NilWord:
    return NilWord(a.ctx, a.ctx.collect(a.ctx.inv_series(a.series)))


def commutator(a: NilWord, b: NilWord) -> NilWord:
    """``[a, b] = a^-1 b^-1 a b`` in normal form.

    :Example:
        >>> ctx = NilGroupCtx(2, 3)
        >>> str(commutator(ctx.generator(1), ctx.generator(0)))
        '[x2,x1]'
    """
    ctx = _same_ctx(a, b)
    ia, ib = _single_basis_index(a), _single_basis_index(b)
    if ia is not None and ib is not None:
        return ctx.basis_commutator(ia, ib)
    return NilWord(ctx, ctx.collect(ctx.series_commutator(a.series, b.series)))


def _single_basis_index(w: NilWord) -> int | None:
    support = [i for i, e in enumerate(w) if e]
    if len(support) == 1 and w[support[0]] == 1:
        return support[0]
    return None


def power(a: NilWord, e: int) -> NilWord:
    """``a ** e`` by square-and-multiply on series, collected once at the end."""
    ctx = a.ctx
    base = a.series if e >= 0 else ctx.inv_series(a.series)
    e = abs(e)
    result = dict(ONE)
    while e:
        if e & 1:
            result = ctx.mul_series(result, base)
        e >>= 1
        if e:
            base = ctx.mul_series(base, base)
    return NilWord(ctx, ctx.collect(result))


def graded_image(w: NilWord, lo: int, hi: int) -> list[int]:
    """Coordinates of ``w`` in ``γ_lo / γ_{hi+1}``.

    :raises NotInGammaError: if ``w`` has a non-zero exponent below weight ``lo``.
    """
    basis = w.ctx.basis
    below = [i for weight in range(1, lo) for i in basis.weight_range(weight)]
    if any(w[i] for i in below):
        raise NotInGammaError(lo)
    return [w[i] for weight in range(lo, hi + 1) for i in basis.weight_range(weight)]


def lattice_equal(a: IntLattice, b: IntLattice) -> bool:
    if a.rank != b.rank:
        raise RankMismatchError(a.rank, b.rank)
    return a.hermite_form == b.hermite_form


def smith_quotient(a: IntLattice) -> SmithQuotient:
    """Structure of ``Z^rank / rowspan``: torsion from the Smith diagonal and the free rank."""
    rows = a.nonzero_rows
    if not rows:
        return SmithQuotient(FinAbelian.trivial(), a.rank)
    diagonal = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [x for x in diagonal if x]
    return SmithQuotient(normalize([x for x in nonzero if x > 1]), a.rank - len(nonzero))


def e1_relators(ctx: NilGroupCtx, p: int) -> list[NilWord]:
    """``x^p, y^p, [y,x]^p, [y,x,y], [y,x,x]`` in a two-generator context."""
    x, y = ctx.generator(0), ctx.generator(1)
    yx = commutator(y, x)
    return [power(x, p), power(y, p), power(yx, p), commutator(yx, y), commutator(yx, x)]


def verify_e1_congruence(p: int, c: int, max_c: int | None = None) -> CongruenceReport:
    """Checks ``[R, _c F] ≡ γ_{c+1}(F)^p`` modulo ``γ_{c+3}(F)`` for the E1 presentation.

    Left-normed commutators ``[w, v_1, ..., v_j]`` with ``w`` a relator, each
    ``v_i`` a generator and ``c <= j <= c+1`` are mapped into
    ``γ_{c+1}/γ_{c+3}``, free abelian of rank ``χ_{c+1}(2) + χ_{c+2}(2)``. The
    congruence holds when their span is ``p`` times the whole lattice; the
    quotient by the span is reported either way.

    For odd ``p`` the quotient is the multiplier of E1. For ``p = 2`` the
    presentation defines the dihedral group of order 8 and the congruence fails.

    :raises OracleLimitError: if ``c`` exceeds ``max_c``
        (default :func:`nilmult.limits.oracle_class_ceiling`).
    """
    if not isprime(p):
        raise NotPrimeError(p)
    if c < 2:
        raise TooSmallError("c", c, 2)
    if max_c is None:
        max_c = limits.oracle_class_ceiling()
    if c > max_c:
        raise OracleLimitError(c, max_c)

    ctx = NilGroupCtx(2, c + 2)
    letters = [ctx.generator(0), ctx.generator(1)]
    images: list[list[int]] = []

    def extend(word: NilWord, depth: int) -> None:
        if depth >= c:
            image = graded_image(word, c + 1, c + 2)
            if any(image):
                images.append(image)
        if depth < c + 1:
            for v in letters:
                extend(commutator(word, v), depth + 1)

    for relator in e1_relators(ctx, p):
        extend(relator, 0)

    rank = witt(c + 1, 2) + witt(c + 2, 2)
    lattice = IntLattice.from_rows(rank, images)
    holds = lattice_equal(lattice, IntLattice.scaled_identity(rank, p))
    quotient = smith_quotient(lattice)
    logger.debug("congruence p=%d c=%d: %d generators, holds=%s", p, c, len(images), holds)
    return CongruenceReport(p, c, holds, quotient.torsion, quotient.free_rank, rank,
                            len(images), lattice)

# endregion Public functions
