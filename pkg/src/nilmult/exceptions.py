
# Resource refusals share a base so callers (and the CLI) can catch them as one
# family; everything else derives from the closest builtin.
class ResourceLimitError(RuntimeError):
    """ :meta private: """


class EnumerationTooLargeError(ResourceLimitError):
    def __init__(self, predicted: int, ceiling: int) -> None:
        super().__init__(f"enumeration too large: {predicted} basis elements "
                         f"exceeds ceiling {ceiling}")


class CollectionBlowUpError(ResourceLimitError):
    def __init__(self, terms: int, ceiling: int) -> None:
        super().__init__(f"collection blow-up: {terms} series terms exceeds ceiling {ceiling}")


class PartitionLimitError(ResourceLimitError):
    def __init__(self, n: int, ceiling: int) -> None:
        super().__init__(f"partition enumeration for n={n} exceeds ceiling n<={ceiling}")


class OracleLimitError(ResourceLimitError):
    def __init__(self, c: int, ceiling: int) -> None:
        super().__init__(f"oracle class c={c} exceeds configured maximum {ceiling}")


class NotPositiveError(ValueError):
    def __init__(self, name: str, value: int) -> None:
        super().__init__(f"{name} must be positive, got {value}")


class NegativeValueError(ValueError):
    def __init__(self, name: str, value: int) -> None:
        super().__init__(f"{name} must be non-negative, got {value}")


class DegreeLengthError(ValueError):
    def __init__(self, degrees: int, classes: int) -> None:
        super().__init__(f"got {degrees} degrees for {classes} letter classes")


class InexactDivisionError(ArithmeticError):
    def __init__(self, total: int, n: int) -> None:
        super().__init__(f"Witt sum {total} is not divisible by {n}")


class AlphabetMismatchError(ValueError):
    def __init__(self) -> None:
        super().__init__("basic commutators are built over different alphabets")


class ContextMismatchError(ValueError):
    def __init__(self) -> None:
        super().__init__("words belong to different nilpotent group contexts")


class NotInGammaError(ValueError):
    def __init__(self, lo: int) -> None:
        super().__init__(f"not in gamma_{lo}: word has non-zero exponents below weight {lo}")


class RankMismatchError(ValueError):
    def __init__(self, left: int, right: int) -> None:
        super().__init__(f"lattices have different ambient ranks: {left} and {right}")


class InvalidOrderError(ValueError):
    def __init__(self, order: int) -> None:
        super().__init__(f"cyclic order must be at least 1, got {order}")


class NotDescendingError(ValueError):
    def __init__(self, exponents: tuple[int, ...]) -> None:
        super().__init__(f"exponents must be positive and descending, got {exponents}")


class MalformedDescriptorError(ValueError):
    def __init__(self, message: str, token: str = "") -> None:
        self.token = token
        if token:
            message = f"{message} (at '{token}')"
        super().__init__(message)


class NotPrimeError(MalformedDescriptorError):
    def __init__(self, p: int) -> None:
        super().__init__("not prime", str(p))


class DescriptorSyntaxError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"syntax error at offset {offset}: {message}")


class ClassNotCoveredError(LookupError):
    def __init__(self, group: str) -> None:
        super().__init__(f"class not covered: no capability classification for {group}")


class DerivedSubgroupError(ValueError):
    def __init__(self, group: str) -> None:
        super().__init__(f"derived subgroup of {group} does not have order p")


class BoundArgumentError(ValueError):
    def __init__(self, n: int, m: int) -> None:
        super().__init__(f"bound needs n > m >= 1, got n={n}, m={m}")


class DuplicateLabelError(ValueError):
    def __init__(self, labels: tuple[str, ...]) -> None:
        super().__init__(f"alphabet labels must be unique, got {labels}")


class NotInImageError(ArithmeticError):
    def __init__(self, weight: int) -> None:
        super().__init__(f"series is not the image of a group element (weight {weight} stratum)")


class TooSmallError(ValueError):
    def __init__(self, name: str, value: int, minimum: int) -> None:
        super().__init__(f"{name} must be at least {minimum}, got {value}")
