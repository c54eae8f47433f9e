"""Exception hierarchy.

Every failure a caller may want to act on has its own class. The CLI maps
them onto exit codes through ``EXIT_CODE``:

* 1: verification failure or a proven non-existence (``NoneExists``)
* 2: resource exhaustion (caps, radius, missing blocks)
* 3: bad input
"""

from __future__ import annotations


class AsymcolError(Exception):
    exit_code = 3


# -- input errors ---------------------------------------------------------


class InputError(AsymcolError, ValueError):
    exit_code = 3


class DegreeMismatch(InputError):
    pass


class NotAPermutation(InputError):
    pass


class MalformedHeader(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class SelfLoop(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class UncolouredPoint(InputError):
    def __init__(self, point):
        super().__init__(f"point {point} is not coloured")
        self.point = point


class NotInvariant(InputError):
    """The set is not mapped onto itself by the group."""


class NotFaithful(InputError):
    """Some non-identity element fixes every point of the set."""


class NotRealizable(InputError):
    """No extendable automorphism maps the base set onto the target."""


class OutOfWindow(InputError):
    pass


class NestingViolated(InputError):
    """Blocks are not invariant, or pointwise stabilizers are not nested."""


# -- resource exhaustion --------------------------------------------------


class ResourceError(AsymcolError):
    exit_code = 2


class CapExceeded(ResourceError):
    def __init__(self, cap, what="group enumeration"):
        super().__init__(
            f"{what} exceeded the cap of {cap} elements; "
            "use a structural verifier or raise the cap"
        )
        self.cap = cap


class LimitExceeded(ResourceError):
    pass


class SizeLimitExceeded(ResourceError):
    pass


class RadiusExhausted(ResourceError):
    pass


class NeedMoreBlocks(ResourceError):
    pass


# -- negative results -----------------------------------------------------


class NegativeResult(AsymcolError):
    exit_code = 1


class NoneExists(NegativeResult):
    pass


class ColouringFailed(NegativeResult):
    pass


class VerificationFailed(NegativeResult):
    pass
