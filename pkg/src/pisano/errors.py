"""Exception types raised by the period and field routines."""


class PisanoError(Exception):
    """Base class for every error raised by this package."""


class NotInvertible(PisanoError, ArithmeticError):
    """The residue shares a factor with the modulus."""


class InvalidModulus(PisanoError, ValueError):
    """The modulus is out of range for the requested operation (e.g. 2 or composite where an odd prime is needed)."""


class NoRoot(PisanoError, ValueError):
    """The residue is a quadratic nonresidue."""


class ZeroElement(PisanoError, ZeroDivisionError):
    """Inverse or order requested for the zero element."""


class NormZero(PisanoError, ZeroDivisionError):
    """Nonzero element with zero norm; the quotient ring is not a field here."""


class WrongContext(PisanoError, ValueError):
    """Operation needs a different residue class (or mismatched field contexts)."""


class NotPurelyPeriodic(PisanoError, ValueError):
    """gcd(B, m) != 1: the sequence need not return to (0, 1)."""


class CapExceeded(PisanoError, RuntimeError):
    """Direct iteration ran past m**2 steps. Never expected; indicates a bug."""


class BoundViolation(PisanoError, RuntimeError):
    """A candidate multiple of the period failed to annihilate the companion matrix."""


class MethodDisagreement(PisanoError, RuntimeError):
    """Two independent period algorithms returned different answers."""
