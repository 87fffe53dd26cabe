"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class TorsionError(Exception):
    code = "error"
    exit_status = 2


class InputError(TorsionError, ValueError):
    """Malformed or out-of-range input."""

    code = "input"
    exit_status = 2


class NotGaloisError(InputError):
    """The requested tame/wild data admits no Galois extension over k((t))."""

    code = "not-galois"


class PrecisionError(TorsionError, ArithmeticError):
    """A quantity could not be determined from the available precision."""

    code = "precision"
    exit_status = 3


class GroupRelationError(TorsionError):
    code = "group-relation"
    exit_status = 2


class ResourceError(TorsionError):
    """Dimension bound exceeded or stabilization not reached."""

    code = "resource"
    exit_status = 3


class StabilizationError(ResourceError):
    code = "no-stabilization"
