"""Recognized p-group classes and their c-nilpotent multipliers.

Groups are described symbolically, never by multiplication tables:

* :class:`Abelian` wraps a :class:`~nilmult.abelian.FinAbelian`.
* :class:`ExtraSpecial` is an extra-special group of order ``p^(2m+1)``.
* :class:`GeneralizedExtraSpecial` is ``E × Z_p^r`` (split) or
  ``(E · Z_{p^2}) × Z_p^r`` (central), with ``E`` extra-special.
* :class:`Product` is an external direct product; build it with
  :func:`direct_product`.
"""

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from math import prod

from sympy import factorint, isprime

from .abelian import FinAbelian, multiplier_abelian
from .exceptions import (
    BoundArgumentError,
    ClassNotCoveredError,
    DerivedSubgroupError,
    MalformedDescriptorError,
    NotPositiveError,
    NotPrimeError,
    TooSmallError,
)
from .gamma import gamma, multiplier_direct_product
from .witt import witt

logger = logging.getLogger(__name__)


class ExtraSpecialType(Enum):
    """ Exponent type of an extra-special group. """
    EXP_P = "expP"
    EXP_P2 = "expP2"
    D8 = "D8"
    Q8 = "Q8"


class CenterType(Enum):
    """ :meta private: """
    SPLIT = "split"
    CENTRAL = "central"


def check_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrimeError(p)


def default_variant(p: int) -> ExtraSpecialType:
    return ExtraSpecialType.D8 if p == 2 else ExtraSpecialType.EXP_P


# region Descriptors

@dataclass(frozen=True)
class Abelian:
    group: FinAbelian

    def __str__(self) -> str:
        if self.group.is_trivial:
            return "1"
        return " x ".join(
            f"Ab({p};{','.join(str(e) for e in self.group.exponents(p))})"
            for p in self.group.primes)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def abelianization(self) -> FinAbelian:
        return self.group

    @property
    def derived_order(self) -> int:
        return 1

    @property
    def primes(self) -> tuple[int, ...]:
        return self.group.primes


@dataclass(frozen=True)
class ExtraSpecial:
    """An extra-special group of order ``p^(2m+1)``.

    For odd ``p`` the variant is the exponent type (``EXP_P`` or ``EXP_P2``);
    for ``p = 2`` it is ``D8`` (a central power of the dihedral group) or ``Q8``
    (one quaternion factor). For ``m > 1`` the multiplier does not depend on it.
    """
    p: int
    m: int
    variant: ExtraSpecialType

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.m < 1:
            raise MalformedDescriptorError("m must be positive", str(self.m))
        two_only = self.variant in {ExtraSpecialType.D8, ExtraSpecialType.Q8}
        if two_only and self.p != 2:
            raise MalformedDescriptorError(f"{self.variant.value} requires p=2",
                                           self.variant.value)
        if not two_only and self.p == 2:
            raise MalformedDescriptorError(f"{self.variant.value} requires odd p",
                                           self.variant.value)

    def __str__(self) -> str:
        return f"ES({self.p};{self.m};{self.variant.value})"

    @property
    def order(self) -> int:
        return self.p ** (2 * self.m + 1)

    @property
    def abelianization(self) -> FinAbelian:
        return FinAbelian.elementary(self.p, 2 * self.m)

    @property
    def derived_order(self) -> int:
        return self.p

    @property
    def primes(self) -> tuple[int, ...]:
        return (self.p,)


@dataclass(frozen=True)
class GeneralizedExtraSpecial:
    """A group with ``Φ(G) = G' ≅ Z_p``, given by its decomposition.

    ``SPLIT`` is ``E × Z_p^rank``; ``CENTRAL`` is ``(E · Z_{p^2}) × Z_p^rank``
    where ``E`` is the extra-special group ``ES(p; m; variant)``.
    """
    p: int
    m: int
    center: CenterType
    rank: int = 0
    variant: ExtraSpecialType | None = None

    def __post_init__(self) -> None:
        if self.variant is None:
            object.__setattr__(self, "variant", default_variant(self.p))
        if self.rank < 0:
            raise MalformedDescriptorError("rank must be non-negative", str(self.rank))
        ExtraSpecial(self.p, self.m, self.variant)

    def __str__(self) -> str:
        text = f"GES({self.p};{self.m};{self.center.value};{self.rank}"
        if self.variant != default_variant(self.p):
            text += f";{self.variant.value}"
        return text + ")"

    @property
    def extraspecial(self) -> ExtraSpecial:
        return ExtraSpecial(self.p, self.m, self.variant)

    @property
    def order(self) -> int:
        extra = 1 if self.center is CenterType.CENTRAL else 0
        return self.p ** (2 * self.m + 1 + extra + self.rank)

    @property
    def abelianization(self) -> FinAbelian:
        extra = 1 if self.center is CenterType.CENTRAL else 0
        return FinAbelian.elementary(self.p, 2 * self.m + extra + self.rank)

    @property
    def derived_order(self) -> int:
        return self.p

    @property
    def primes(self) -> tuple[int, ...]:
        return (self.p,)

    def split_form(self) -> 'Product | ExtraSpecial':
        """ The split group rewritten as ``ES × Z_p^rank``. """
        return direct_product(self.extraspecial,
                              Abelian(FinAbelian.elementary(self.p, self.rank)))


@dataclass(frozen=True)
class Product:
    factors: tuple['Descriptor', ...]

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)

    @property
    def order(self) -> int:
        return prod(f.order for f in self.factors)

    @property
    def abelianization(self) -> FinAbelian:
        total = FinAbelian.trivial()
        for f in self.factors:
            total = total + f.abelianization
        return total

    @property
    def derived_order(self) -> int:
        return prod(f.derived_order for f in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for f in self.factors for p in f.primes}))


Descriptor = Abelian | ExtraSpecial | GeneralizedExtraSpecial | Product


def direct_product(*factors: Descriptor) -> Descriptor:
    """Builds the canonical direct product of the given groups.

    Nested products are flattened, abelian factors merged into one trailing
    factor, and trivial factors dropped. A single surviving factor is returned
    as is.
    """
    flat: list[Descriptor] = []
    abelian = FinAbelian.trivial()
    for factor in factors:
        parts = factor.factors if isinstance(factor, Product) else (factor,)
        for part in parts:
            if isinstance(part, Abelian):
                abelian = abelian + part.group
            else:
                flat.append(part)
    if abelian or not flat:
        flat.append(Abelian(abelian))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))

# endregion Descriptors


@dataclass(frozen=True)
class MultiplierResult:
    """A c-nilpotent multiplier with the rule that produced it.

    ``structure`` is ``None`` when only the order is known. The order is kept
    as ``(p, log_p)`` pairs in ``order_exponents``; :attr:`order` multiplies
    them out on demand.
    """
    structure: FinAbelian | None
    order_exponents: tuple[tuple[int, int], ...]
    provenance: str

    @classmethod
    def full(cls, structure: FinAbelian, provenance: str) -> 'MultiplierResult':
        return cls(structure, structure.order_exponents, provenance)

    @classmethod
    def order_only(cls, exponents: Iterable[tuple[int, int]],
                   provenance: str) -> 'MultiplierResult':
        merged: Counter[int] = Counter()
        for p, k in exponents:
            merged[p] += k
        return cls(None, tuple(sorted((p, k) for p, k in merged.items() if k)), provenance)

    @property
    def is_order_only(self) -> bool:
        return self.structure is None

    @property
    def order(self) -> int:
        return prod(p ** k for p, k in self.order_exponents)

    def log_order(self, p: int) -> int:
        return dict(self.order_exponents).get(p, 0)

    def __str__(self) -> str:
        if self.structure is not None:
            return str(self.structure)
        return f"order {format_power(self.order_exponents)}"

    def to_json(self) -> dict[str, object]:
        return {
            "structure": None if self.structure is None else self.structure.to_json(),
            "log_order": log_order_json(self.order_exponents),
        }


@dataclass(frozen=True)
class CapabilityVerdict:
    capable: bool
    c_capable: bool
    reason: str


def format_power(exponents: Iterable[tuple[int, int]]) -> str:
    """ ``p^k`` products from ``(p, k)`` pairs, e.g. ``3^12`` or ``2^3*5``. """
    text = "*".join(f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(exponents) if k)
    return text or "1"


def format_order(n: int) -> str:
    """ :func:`format_power` of the factorization of ``n``. """
    return format_power(factorint(n).items())


def log_order_json(exponents: Iterable[tuple[int, int]]) -> list[dict[str, int]]:
    return [{"p": p, "exponent": k} for p, k in exponents if k]


# region Multipliers

def _extraspecial_multiplier(g: ExtraSpecial, c: int) -> MultiplierResult:
    p, m = g.p, g.m
    kind = g.variant
    if c == 1:
        if m > 1:
            return MultiplierResult.full(
                FinAbelian.elementary(p, 2 * m * m - m - 1), "schur-extraspecial")
        schur = {
            ExtraSpecialType.EXP_P: FinAbelian.elementary(p, 2),
            ExtraSpecialType.EXP_P2: FinAbelian.trivial(),
            ExtraSpecialType.D8: FinAbelian.elementary(2, 1),
            ExtraSpecialType.Q8: FinAbelian.trivial(),
        }
        return MultiplierResult.full(schur[kind], "schur-extraspecial")

    if m > 1:
        return MultiplierResult.full(
            FinAbelian.elementary(p, witt(c + 1, 2 * m)), "extraspecial-large")
    two = witt(c + 1, 2)
    if kind is ExtraSpecialType.EXP_P:
        return MultiplierResult.full(
            FinAbelian.elementary(p, two + witt(c + 2, 2)), "extraspecial-exponent-p")
    if kind is ExtraSpecialType.EXP_P2:
        return MultiplierResult.full(FinAbelian.elementary(p, two), "extraspecial-exponent-p2")
    if kind is ExtraSpecialType.Q8:
        return MultiplierResult.full(FinAbelian.elementary(2, two), "quaternion")
    return MultiplierResult.full(dihedral_multiplier(c), "dihedral")


def dihedral_multiplier(c: int) -> FinAbelian:
    """ ``Z_4 + Z_2^(χ_{c+1}(2) - 1)``, the multiplier of the dihedral group of order 8 for c >= 2. """
    return FinAbelian([(2, 2)]) + FinAbelian.elementary(2, witt(c + 1, 2) - 1)


def central_product_schur_exponent(m: int, rank: int) -> int:
    """``log_p`` of the Schur multiplier order of ``(E · Z_{p^2}) × Z_p^rank``."""
    core = 2 * m * m + m - 1
    return core + rank * (rank - 1) // 2 + (2 * m + 1) * rank


def _central_multiplier(g: GeneralizedExtraSpecial, c: int) -> MultiplierResult:
    p, m, r = g.p, g.m, g.rank
    if c == 1:
        return MultiplierResult.order_only([(p, central_product_schur_exponent(m, r))],
                                           "central-product-schur")
    core = multiplier_abelian(FinAbelian([(p, 2)]) + FinAbelian.elementary(p, 2 * m - 1), c)
    complement = FinAbelian.elementary(p, r)
    structure = multiplier_direct_product(core, multiplier_abelian(complement, c),
                                          FinAbelian.elementary(p, 2 * m + 1), complement, c)
    return MultiplierResult.full(structure, "central-product")


def _product_multiplier(g: Product, c: int) -> MultiplierResult:
    factors = list(g.factors)
    first = multiplier(factors[0], c)
    structure, exponents = first.structure, list(first.order_exponents)
    ab = factors[0].abelianization
    for factor in factors[1:]:
        nxt = multiplier(factor, c)
        if structure is not None and nxt.structure is not None:
            structure = multiplier_direct_product(structure, nxt.structure, ab,
                                                  factor.abelianization, c)
            exponents = list(structure.order_exponents)
        else:
            correction = gamma(ab, factor.abelianization, c).group
            structure = None
            exponents += [*nxt.order_exponents, *correction.order_exponents]
        ab = ab + factor.abelianization
    if structure is None:
        return MultiplierResult.order_only(exponents, "direct-product")
    return MultiplierResult.full(structure, "direct-product")


def multiplier(g: Descriptor, c: int) -> MultiplierResult:
    """The c-nilpotent multiplier of a recognized group.

    :param g: A group descriptor.
    :param c: The class, at least 1; ``c = 1`` is the Schur multiplier.
    :returns: The structure where known, otherwise the order alone.

    :Example:
        >>> result = multiplier(ExtraSpecial(5, 2, ExtraSpecialType.EXP_P), 2)
        >>> str(result), result.provenance
        ('Z(5)^20', 'extraspecial-large')
    """
    if c < 1:
        raise NotPositiveError("c", c)
    if isinstance(g, Abelian):
        return MultiplierResult.full(multiplier_abelian(g.group, c), "abelian")
    if isinstance(g, ExtraSpecial):
        return _extraspecial_multiplier(g, c)
    if isinstance(g, GeneralizedExtraSpecial):
        if g.center is CenterType.SPLIT:
            return multiplier(g.split_form(), c)
        return _central_multiplier(g, c)
    return _product_multiplier(g, c)

# endregion Multipliers


# region Bounds and capability

def gamma_star_dihedral(n: int, c: int) -> FinAbelian:
    """``γ*_{c+1}`` of the dihedral group of order ``2n``.

    ``Z_n`` for odd ``n``; ``Z_n + Z_2^(χ_{c+1}(2) - 1)`` for even ``n``.
    """
    if n < 2:
        raise TooSmallError("n", n, 2)
    if c < 1:
        raise NotPositiveError("c", c)
    result = FinAbelian.cyclic(n)
    if n % 2 == 0:
        result = result + FinAbelian.elementary(2, witt(c + 1, 2) - 1)
    return result


def order_bound_exponent(n: int, m: int, c: int) -> int:
    """``log_p`` of the largest possible multiplier of a group of order ``p^n`` with ``|G'| = p^m``.

    :Example:
        >>> order_bound_exponent(5, 2, 2)
        20
    """
    if m < 1 or n <= m:
        raise BoundArgumentError(n, m)
    if c < 2:
        raise TooSmallError("c", c, 2)
    return witt(c + 1, n - m) + witt(c + 2, 2) + (m - 1) * (n - m) ** c


def _single_prime(g: Descriptor) -> int:
    primes = g.primes
    if len(primes) != 1 or g.derived_order != primes[0]:
        raise DerivedSubgroupError(str(g))
    return primes[0]


def _normal_parts(g: Descriptor) -> tuple[Descriptor | None, FinAbelian]:
    """Splits ``g`` into its non-abelian factor and its abelian remainder.

    Split generalized extra-special groups are rewritten as ``ES × Z_p^r``
    first. Returns ``(None, ...)`` when there is not exactly one non-abelian factor.
    """
    if isinstance(g, GeneralizedExtraSpecial) and g.center is CenterType.SPLIT:
        g = g.split_form()
    parts = g.factors if isinstance(g, Product) else (g,)
    abelian = FinAbelian.trivial()
    others = []
    for part in parts:
        if isinstance(part, GeneralizedExtraSpecial) and part.center is CenterType.SPLIT:
            inner, extra = _normal_parts(part)
            others.append(inner)
            abelian = abelian + extra
        elif isinstance(part, Abelian):
            abelian = abelian + part.group
        else:
            others.append(part)
    if len(others) != 1:
        return None, abelian
    return others[0], abelian


def _absorb_elementary(g: Descriptor) -> Descriptor:
    """Folds an elementary abelian factor over the same prime into a generalized extra-special one.

    ``GES(p;m;center;r) x Z_p^s`` becomes ``GES(p;m;center;r+s)``; anything
    else is returned unchanged.
    """
    if not isinstance(g, Product):
        return g
    core, abelian = _normal_parts(g)
    if (isinstance(core, GeneralizedExtraSpecial) and abelian.is_elementary
            and abelian.primes in {(), core.primes}):
        return GeneralizedExtraSpecial(core.p, core.m, core.center,
                                       core.rank + abelian.rank(core.p), core.variant)
    return g


def _is_capable_shape(g: Descriptor, p: int, variants: set[ExtraSpecialType]) -> bool:
    core, abelian = _normal_parts(g)
    return (isinstance(core, ExtraSpecial) and core.m == 1 and core.variant in variants
            and abelian.is_elementary and abelian.primes in {(), (p,)})


def attains_order_bound(g: Descriptor, c: int) -> bool:
    """True when ``|M(g)|`` reaches the bound for ``|G'| = p``.

    That happens exactly for ``E1 × Z_p^r`` with ``p`` odd.

    :raises DerivedSubgroupError: if the derived subgroup does not have order p.
    """
    if c < 2:
        raise TooSmallError("c", c, 2)
    p = _single_prime(g)
    return p != 2 and _is_capable_shape(g, p, {ExtraSpecialType.EXP_P})


def capability(g: Descriptor, c: int) -> CapabilityVerdict:
    """Capability and c-capability of extra-special and generalized extra-special groups.

    Both verdicts coincide; they are true exactly for ``E1 × Z_p^r`` and
    ``D8 × Z_2^r`` with ``r >= 0``. An elementary abelian factor over the same
    prime is absorbed into a generalized extra-special factor first.

    :raises ClassNotCoveredError: for groups outside those classes.
    """
    if c < 1:
        raise NotPositiveError("c", c)
    g = _absorb_elementary(g)
    covered = isinstance(g, ExtraSpecial | GeneralizedExtraSpecial)
    if isinstance(g, Product):
        core, abelian = _normal_parts(g)
        covered = (isinstance(core, ExtraSpecial) and abelian.is_elementary
                   and abelian.primes in {(), core.primes})
    if not covered:
        raise ClassNotCoveredError(str(g))
    p = g.primes[0]
    verdict = _is_capable_shape(g, p, {ExtraSpecialType.EXP_P, ExtraSpecialType.D8})
    reason = ("extraspecial-capability" if isinstance(g, ExtraSpecial)
              else "generalized-extraspecial-capability")
    logger.debug("capability of %s at c=%d: %s", g, c, verdict)
    return CapabilityVerdict(verdict, verdict, reason)

# endregion Bounds and capability
