"""Exception hierarchy shared by every module."""


class EnvelopeError(Exception):
    """Base class for all errors raised by conic_envelope."""


class DegenerateDegree(EnvelopeError, ValueError):
    """Leading coefficient vanishes; the polynomial is not a true cubic."""


class ZeroCoefficient(EnvelopeError, ValueError):
    """Constant term too small to normalise the self-inversive constant."""


class DegenerateFoci(EnvelopeError, ValueError):
    """A focus lies on the unit circle (or is not finite)."""


class PoleProximity(EnvelopeError, ValueError):
    """Evaluation point too close to a pole of the Blaschke product."""


class RootCollision(EnvelopeError):
    """Two roots are closer than the separation tolerance."""


class NonRealWeight(EnvelopeError):
    """A partial-fraction weight has a non-negligible imaginary part."""


class WeightPairDegenerate(EnvelopeError):
    """m_i + m_k vanishes, so the tangency point is at infinity."""


class DegenerateGeometry(EnvelopeError, ValueError):
    """Tangency check preconditions fail (point coincides with a focus or endpoint)."""


class InvalidBracket(EnvelopeError, ValueError):
    """Bisection bracket does not straddle a good/bad transition."""


class BadLambda(EnvelopeError):
    """The parameter does not give three distinct unimodular roots.

    ``reason`` is a :class:`conic_envelope.lambda_scan.LambdaStatus`.
    """

    def __init__(self, reason, theta, detail=""):
        self.reason = reason
        self.theta = theta
        msg = f"bad lambda at theta={theta!r}: {reason.value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotSelfInversive(EnvelopeError, ValueError):
    """Coefficients do not satisfy c_k = mu * conj(c_{3-k}) for any unimodular mu."""
