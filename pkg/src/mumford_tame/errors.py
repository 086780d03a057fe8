"""Exception hierarchy shared by all modules.

Every error raised by the library derives from :class:`MumfordTameError`,
so callers (CLI, HTTP service) can map failures uniformly.
"""


class MumfordTameError(Exception):
    """Base class for all library errors."""


class PreconditionFailed(MumfordTameError):
    """An operation's stated precondition does not hold for the input."""


class ZeroInput(MumfordTameError):
    """Zero was passed where a nonzero scalar is required."""


class DegeneratePair(MumfordTameError):
    """An involution was requested for a pair of equal points."""


class PoleInsideDisc(MumfordTameError):
    """The image of the disc is a disc complement, not a disc."""


class NotDisjoint(MumfordTameError):
    """Disc distance requested for discs whose closures intersect."""


class DuplicatePoints(MumfordTameError):
    """A point configuration contains a repeated point."""


class PoleHit(MumfordTameError):
    """A product factor hit a pole; carries the offending group word."""

    def __init__(self, word, message="pole hit in product factor"):
        self.word = word
        super().__init__(f"{message}: word={word!r}")


class ConjugateBasePoints(MumfordTameError):
    """The chosen base points are identified by a short group word."""


class InsufficientErrorBound(MumfordTameError):
    """A period approximation lacks the error bound needed for the claim."""


class EvenPrime(MumfordTameError):
    """p = 2 was passed to a construction that requires an odd prime."""


class ConditionFailed(MumfordTameError):
    """A certificate condition failed; carries the condition id and witness."""

    def __init__(self, name, witness=None):
        self.name = name
        self.witness = witness
        super().__init__(f"condition failed: {name} (witness: {witness})")


class DegreeMismatch(MumfordTameError):
    """Local models of different degrees cannot be glued."""


class NonCoprimeModuli(MumfordTameError):
    """CRT gluing requires pairwise coprime moduli."""


class OddInput(MumfordTameError):
    """An even integer is required."""


class NoRouteAvailable(MumfordTameError):
    """Neither the triple route nor the 2g+1-prime route applies."""


class SearchExhausted(MumfordTameError):
    """A prime search hit its cap or a provably empty residue class."""


class NotCoprime(MumfordTameError):
    """gcd(a, q) != 1 where coprimality is required."""


class NotSquarefree(MumfordTameError):
    """A squarefree polynomial is required."""


class InfeasibleSpec(MumfordTameError):
    """The requested factorization type cannot fit the target degree."""


class BadReduction(MumfordTameError):
    """The curve has bad reduction at the requested prime."""


class BudgetExceeded(MumfordTameError):
    """A point count over a field larger than the configured budget."""


class ExcludedPrime(MumfordTameError):
    """Every route for this genus contains the requested prime."""

    def __init__(self, g, p, message=""):
        self.g = g
        self.p = p
        suffix = f" ({message})" if message else ""
        super().__init__(f"p={p} is excluded for genus {g}{suffix}")


class ConsistencyCheckFailed(MumfordTameError):
    """An internal cross-check (e.g. recount vs. charpoly) disagreed."""
