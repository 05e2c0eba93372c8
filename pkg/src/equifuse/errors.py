"""Exception types shared across the package."""


class UnsupportedCaseError(ValueError):
    """Raised for inputs outside the implemented family, e.g. odd m or
    products that need structure constants in the twisted sector."""


class InconsistencyError(RuntimeError):
    """Raised when derived structure constants violate a required invariant
    (negative multiplicity, non-commutative table, unbalanced split pair)."""


class ConstructionError(RuntimeError):
    """Raised when assembled modular data fails its defining numerical
    checks, e.g. a block that should be unitary is not."""
