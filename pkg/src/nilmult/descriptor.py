"""Text form of group descriptors.

Grammar (whitespace is ignored everywhere)::

    group := term ("x" term)* | "1"
    term  := "Ab(" p ";" e ("," e)* ")"
           | "Zp(" p "," e ")"
           | "ES(" p ";" m ";" variant ")"
           | "GES(" p ";" m ";" ("split" | "central") ";" rank [";" variant] ")"
    variant := "expP" | "expP2" | "D8" | "Q8"

``str()`` of a parsed descriptor is its canonical text, and parsing that text
gives back an equal descriptor.
"""

from .abelian import FinAbelian
from .exceptions import DescriptorSyntaxError, MalformedDescriptorError
from .pgroups import (
    Abelian,
    CenterType,
    Descriptor,
    ExtraSpecial,
    ExtraSpecialType,
    GeneralizedExtraSpecial,
    check_prime,
    direct_product,
)

VARIANTS = {kind.value: kind for kind in ExtraSpecialType}
CENTERS = {kind.value: kind for kind in CenterType}


class _Reader:
    def __init__(self, text: str) -> None:
        kept = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.chars = "".join(ch for _, ch in kept)
        self.offsets = [i for i, _ in kept] + [len(text)]
        self.pos = 0

    @property
    def offset(self) -> int:
        """ Offset in the original text of the current position. """
        return self.offsets[self.pos]

    def at_end(self) -> bool:
        return self.pos >= len(self.chars)

    def peek(self, literal: str) -> bool:
        return self.chars.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            raise DescriptorSyntaxError(f"expected '{literal}'", self.offset)
        self.pos += len(literal)

    def word(self) -> str:
        start = self.pos
        while not self.at_end() and self.chars[self.pos].isalnum():
            self.pos += 1
        if start == self.pos:
            raise DescriptorSyntaxError("expected a name", self.offset)
        return self.chars[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        while not self.at_end() and self.chars[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise DescriptorSyntaxError("expected an integer", self.offset)
        return int(self.chars[start:self.pos])


def _positive(value: int, what: str) -> int:
    if value < 1:
        raise MalformedDescriptorError(f"{what} must be positive", str(value))
    return value


def _abelian(reader: _Reader) -> Abelian:
    reader.expect("Ab(")
    p = reader.integer()
    reader.expect(";")
    exponents = [_positive(reader.integer(), "exponent")]
    while reader.peek(","):
        reader.expect(",")
        exponents.append(_positive(reader.integer(), "exponent"))
    reader.expect(")")
    check_prime(p)
    return Abelian(FinAbelian.from_exponents(p, exponents))


def _cyclic(reader: _Reader) -> Abelian:
    reader.expect("Zp(")
    p = reader.integer()
    reader.expect(",")
    e = _positive(reader.integer(), "exponent")
    reader.expect(")")
    check_prime(p)
    return Abelian(FinAbelian([(p, e)]))


def _variant(reader: _Reader) -> ExtraSpecialType:
    start = reader.offset
    token = reader.word()
    if token not in VARIANTS:
        raise DescriptorSyntaxError(f"unknown variant '{token}'", start)
    return VARIANTS[token]


def _extraspecial(reader: _Reader) -> ExtraSpecial:
    reader.expect("ES(")
    p = reader.integer()
    reader.expect(";")
    m = reader.integer()
    reader.expect(";")
    variant = _variant(reader)
    reader.expect(")")
    return ExtraSpecial(p, m, variant)


def _generalized(reader: _Reader) -> GeneralizedExtraSpecial:
    reader.expect("GES(")
    p = reader.integer()
    reader.expect(";")
    m = reader.integer()
    reader.expect(";")
    start = reader.offset
    token = reader.word()
    if token not in CENTERS:
        raise DescriptorSyntaxError(f"unknown center type '{token}'", start)
    reader.expect(";")
    rank = reader.integer()
    variant = None
    if reader.peek(";"):
        reader.expect(";")
        variant = _variant(reader)
    reader.expect(")")
    return GeneralizedExtraSpecial(p, m, CENTERS[token], rank, variant)


def _term(reader: _Reader) -> Descriptor:
    for prefix, parser in (("Ab(", _abelian), ("Zp(", _cyclic),
                           ("ES(", _extraspecial), ("GES(", _generalized)):
        if reader.peek(prefix):
            return parser(reader)
    raise DescriptorSyntaxError("expected Ab(, Zp(, ES( or GES(", reader.offset)


def parse(text: str) -> Descriptor:
    """Parses a descriptor.

    :raises DescriptorSyntaxError: with the offset of the first bad character.
    :raises MalformedDescriptorError: for well-formed text naming an impossible group.

    :Example:
        >>> str(parse("ES(3;1;expP) x Ab(3;1,1)"))
        'ES(3;1;expP) x Ab(3;1,1)'
    """
    reader = _Reader(text)
    if reader.chars == "1":
        return Abelian(FinAbelian.trivial())
    terms = [_term(reader)]
    while reader.peek("x"):
        reader.expect("x")
        terms.append(_term(reader))
    if not reader.at_end():
        raise DescriptorSyntaxError("unexpected text", reader.offset)
    return direct_product(*terms)
