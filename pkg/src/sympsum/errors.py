"""Exception types shared across the package."""


class SympsumError(Exception):
    """Base class for all domain errors."""


class BasisError(SympsumError):
    """A homology class was paired against a lattice it does not belong to."""


class NotExceptionalError(SympsumError):
    """Blow-down was requested along a class that is not an exceptional candidate."""


class BasisChangeNotFound(SympsumError):
    """No integral basis change exhibiting the class as a blow-down direction exists."""


class ContactMismatchError(SympsumError):
    """The contact orders do not sum to the pairing of the class with the hypersurface."""


class MalformedDecompositionError(SympsumError):
    """A level decomposition violates its matching invariants."""


class PreconditionError(SympsumError):
    """An operation was called on data outside its stated domain."""


class SquareMismatch(SympsumError):
    """Fiber-sum compatibility failed: the hypersurface squares do not cancel."""


class GenusMismatch(SympsumError):
    """Fiber-sum compatibility failed: the hypersurface genera disagree."""


class NotASphereCap(SympsumError):
    """The second summand is not one of the four sphere-cap families."""
