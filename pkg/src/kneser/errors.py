"""Exception hierarchy.

SpecError subclasses signal invalid inputs (bad curve/map specs, out-of-domain
arguments); the CLI maps them to exit code 2.  NumericalGuardError subclasses
signal that an internal numerical consistency guard tripped; exit code 3.
"""


class KneserError(Exception):
    pass


class SpecError(KneserError):
    pass


class NumericalGuardError(KneserError):
    pass


class SelfIntersecting(SpecError):
    """Curve trace self-intersects on the dense polygonal proxy."""


class DegenerateTangent(SpecError):
    """Native parameterization has a (numerically) vanishing derivative."""


class TooFewSamples(SpecError):
    pass


class OutOfRange(SpecError):
    pass


class RadiusOutOfRange(SpecError):
    pass


class OutsideDisk(SpecError):
    pass


class RangeMismatch(SpecError):
    """Boundary correspondence range does not match the curve length."""


class NotWeakHomeomorphism(SpecError):
    """Boundary data is not nondecreasing + periodic-shift compatible."""


class ZeroLowerBound(SpecError):
    pass


class SBelowOne(SpecError):
    pass


class BoundViolated(NumericalGuardError):
    """Chord-projection kernel exceeded its modulus-of-continuity bound."""


class NonDini(NumericalGuardError):
    """Numerical evidence that the Dini integral of a modulus diverges."""


class DegenerateBoundary(NumericalGuardError):
    """Boundary gradient lower bound is zero within tolerance."""


class VanishingDerivative(NumericalGuardError):
    pass
