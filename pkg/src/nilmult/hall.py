import itertools
import logging
from collections import Counter
from typing import NamedTuple

from . import limits
from .exceptions import (
    AlphabetMismatchError,
    DuplicateLabelError,
    EnumerationTooLargeError,
    NegativeValueError,
    NotPositiveError,
)
from .witt import witt

logger = logging.getLogger(__name__)


class Letter(NamedTuple):
    """ :meta private: """
    index: int
    label: str


class Alphabet(tuple[Letter, ...]):
    """An ordered alphabet of letters. The position of a letter is its order.

    :Example:
        >>> Alphabet.standard(3).labels
        ('x1', 'x2', 'x3')
        >>> Alphabet(["a", "b"])[1]
        Letter(index=1, label='b')
    """

    def __new__(cls, labels: list[str] | tuple[str, ...]) -> 'Alphabet':
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise DuplicateLabelError(labels)
        return super().__new__(cls, (Letter(i, label) for i, label in enumerate(labels)))

    def __repr__(self) -> str:
        return f"Alphabet({list(self.labels)})"

    @classmethod
    def standard(cls, d: int) -> 'Alphabet':
        """The alphabet ``x1 < x2 < ... < xd``."""
        if d < 0:
            raise NegativeValueError("d", d)
        return cls([f"x{i + 1}" for i in range(d)])

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(letter.label for letter in self)


class BasicCommutator(tuple):
    """A bracketed word over an ordered alphabet.

    A letter is stored as ``(index,)`` and a bracket ``[left, right]`` as
    ``(left, right)``. Construction does not check the basic-commutator
    conditions; use :func:`is_basic` for that. Instances compare by the Hall
    basis order: weight first, then lexicographically on ``(left, right)``.

    :Example:
        >>> ab = Alphabet.standard(2)
        >>> x1, x2 = BasicCommutator.letter(0, ab), BasicCommutator.letter(1, ab)
        >>> str(BasicCommutator.pair(x2, x1))
        '[x2,x1]'
    """

# region Dunder functions

    def __new__(cls, parts: tuple, alphabet: Alphabet) -> 'BasicCommutator':
        self = super().__new__(cls, parts)
        self.alphabet = alphabet
        return self

    def __repr__(self) -> str:
        return f"BasicCommutator({self})"

    def __str__(self) -> str:
        if self.is_letter:
            return self.alphabet[self[0]].label
        return f"[{self.left},{self.right}]"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasicCommutator):
            return NotImplemented
        return self.alphabet == other.alphabet and tuple.__eq__(self, other)

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return tuple.__hash__(self)

    def __lt__(self, other) -> bool:  # type: ignore # noqa: ANN001
        return compare(self, other) < 0

    def __le__(self, other) -> bool:  # type: ignore # noqa: ANN001
        return compare(self, other) <= 0

    def __gt__(self, other) -> bool:  # type: ignore # noqa: ANN001
        return compare(self, other) > 0

    def __ge__(self, other) -> bool:  # type: ignore # noqa: ANN001
        return compare(self, other) >= 0

# endregion Dunder functions

# region Constructors

    @classmethod
    def letter(cls, index: int, alphabet: Alphabet) -> 'BasicCommutator':
        return cls((index,), alphabet)

    @classmethod
    def pair(cls, left: 'BasicCommutator', right: 'BasicCommutator') -> 'BasicCommutator':
        if left.alphabet != right.alphabet:
            raise AlphabetMismatchError()
        return cls((left, right), left.alphabet)

# endregion Constructors

# region Public properties

    @property
    def is_letter(self) -> bool:
        return len(self) == 1

    @property
    def index(self) -> int:
        """ The letter index; only meaningful for letters. """
        return self[0]

    @property
    def left(self) -> 'BasicCommutator':
        return self[0]

    @property
    def right(self) -> 'BasicCommutator':
        return self[1]

    @property
    def weight(self) -> int:
        if not hasattr(self, "_weight"):
            self._weight = 1 if self.is_letter else self.left.weight + self.right.weight
        return self._weight

    @property
    def content(self) -> Counter:
        """ Multiset of letter indices occurring in the commutator. """
        if not hasattr(self, "_content"):
            if self.is_letter:
                self._content = Counter({self[0]: 1})
            else:
                self._content = self.left.content + self.right.content
        return self._content

    @property
    def sort_key(self) -> tuple:
        """ Key realising the basis order; comparable across weights of one alphabet. """
        if not hasattr(self, "_sort_key"):
            if self.is_letter:
                self._sort_key = (1, self[0])
            else:
                self._sort_key = (self.weight, self.left.sort_key, self.right.sort_key)
        return self._sort_key

    @property
    def letters(self) -> list[int]:
        """ Letter indices read left to right. """
        if self.is_letter:
            return [self[0]]
        return self.left.letters + self.right.letters

# endregion Public properties


class HallBasis(tuple[BasicCommutator, ...]):
    """All basic commutators of weight at most ``max_weight`` in basis order.

    Built by :func:`generate`. ``index_of`` maps a commutator to its position.
    """

    def __new__(cls, alphabet: Alphabet, max_weight: int,
                elements: list[BasicCommutator]) -> 'HallBasis':
        self = super().__new__(cls, elements)
        self.alphabet = alphabet
        self.max_weight = max_weight
        self.index_of = {bc: i for i, bc in enumerate(self)}
        self._ranges: dict[int, range] = {}
        start = 0
        for weight in range(1, max_weight + 1):
            end = start
            while end < len(self) and self[end].weight == weight:
                end += 1
            self._ranges[weight] = range(start, end)
            start = end
        return self

    def __repr__(self) -> str:
        return f"HallBasis(d={len(self.alphabet)}, max_weight={self.max_weight}, size={len(self)})"

    @property
    def elements(self) -> tuple[BasicCommutator, ...]:
        return tuple(self)

    def weight_range(self, weight: int) -> range:
        """ Positions of the weight-``weight`` stratum. """
        return self._ranges.get(weight, range(0))

    def stratum(self, weight: int) -> list[BasicCommutator]:
        return [self[i] for i in self.weight_range(weight)]

    def generator(self, index: int) -> BasicCommutator:
        return self[index]


# region Public functions

def predicted_size(d: int, max_weight: int) -> int:
    return sum(witt(n, d) for n in range(1, max_weight + 1))


def generate(d: int | Alphabet, max_weight: int, ceiling: int | None = None) -> HallBasis:
    """Generates the Hall basis on ``d`` letters up to weight ``max_weight``.

    A weight-``n`` bracket ``[L, R]`` is formed from already generated
    commutators with ``L > R`` (so ``L`` has at least the weight of ``R``) and,
    when ``L = [s, t]``, ``R >= t``. Each stratum is then sorted into basis
    order.

    :param d: Letter count, or an explicit :class:`Alphabet`.
    :param max_weight: Largest weight generated.
    :param ceiling: Largest allowed basis size; defaults to
        :func:`nilmult.limits.basis_ceiling`.
    :raises EnumerationTooLargeError: when the Witt prediction exceeds the ceiling.

    :Example:
        >>> [str(bc) for bc in generate(2, 2)]
        ['x1', 'x2', '[x2,x1]']
    """
    alphabet = d if isinstance(d, Alphabet) else Alphabet.standard(d)
    if max_weight < 1:
        raise NotPositiveError("max_weight", max_weight)
    if ceiling is None:
        ceiling = limits.basis_ceiling()
    predicted = predicted_size(len(alphabet), max_weight)
    if predicted > ceiling:
        raise EnumerationTooLargeError(predicted, ceiling)
    logger.debug("generating Hall basis on %d letters to weight %d (%d elements)",
                 len(alphabet), max_weight, predicted)

    strata: dict[int, list[BasicCommutator]] = {
        1: [BasicCommutator.letter(letter.index, alphabet) for letter in alphabet],
    }
    for n in range(2, max_weight + 1):
        stratum = []
        for right_weight in range(1, n // 2 + 1):
            for left in strata[n - right_weight]:
                for right in strata[right_weight]:
                    if not left > right:
                        continue
                    if not left.is_letter and right < left.right:
                        continue
                    stratum.append(BasicCommutator.pair(left, right))
        stratum.sort(key=lambda bc: bc.sort_key)
        strata[n] = stratum

    elements = [bc for n in range(1, max_weight + 1) for bc in strata[n]]
    return HallBasis(alphabet, max_weight, elements)


def compare(a: BasicCommutator, b: BasicCommutator) -> int:
    """Compares two commutators in the basis order.

    :returns: -1, 0 or 1.
    :raises AlphabetMismatchError: if ``a`` and ``b`` use different alphabets.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError()
    ka, kb = a.sort_key, b.sort_key
    return (ka > kb) - (ka < kb)


def is_basic(bc: BasicCommutator) -> bool:
    """Checks the basic-commutator conditions directly on the tree."""
    if bc.is_letter:
        return 0 <= bc.index < len(bc.alphabet)
    left, right = bc.left, bc.right
    if not (is_basic(left) and is_basic(right)):
        return False
    if compare(left, right) <= 0:
        return False
    return left.is_letter or compare(right, left.right) >= 0


def is_mixed(bc: BasicCommutator, split: int) -> bool:
    """True when ``bc`` uses a letter below index ``split`` and one at or above it."""
    indices = bc.content.keys()
    return any(i < split for i in indices) and any(i >= split for i in indices)


def mixed_count(weight: int, d1: int, d2: int) -> int:
    basis = generate(d1 + d2, weight)
    return sum(1 for bc in basis.stratum(weight) if is_mixed(bc, d1))


def brute_force_stratum(d: int, weight: int) -> list[BasicCommutator]:
    """Every bracketing of weight ``weight`` on ``d`` letters, filtered by :func:`is_basic`.

    Exponential; for cross-checking :func:`generate` on small inputs.
    """
    alphabet = Alphabet.standard(d)
    magma: dict[int, list[BasicCommutator]] = {
        1: [BasicCommutator.letter(i, alphabet) for i in range(d)],
    }
    for n in range(2, weight + 1):
        magma[n] = [
            BasicCommutator.pair(left, right)
            for k in range(1, n)
            for left, right in itertools.product(magma[k], magma[n - k])
        ]
    found = [bc for bc in magma[weight] if is_basic(bc)]
    return sorted(found, key=lambda bc: bc.sort_key)


def render(bc: BasicCommutator, *, chain: bool = True) -> str:
    """Renders a commutator, flattening the left spine when ``chain`` is set.

    :Example:
        >>> basis = generate(2, 3)
        >>> render(basis[3])
        '[x2,x1,x1]'
        >>> render(basis[3], chain=False)
        '[[x2,x1],x1]'
    """
    if not chain or bc.is_letter:
        return str(bc)
    parts = []
    node = bc
    while not node.is_letter:
        parts.append(render(node.right))
        node = node.left
    parts.append(str(node))
    return "[" + ",".join(reversed(parts)) + "]"

# endregion Public functions
