class ConstructionError(RuntimeError):
    """A confidence procedure could not be built for a design."""


class OracleBoundError(ValueError):
    """The exact-arithmetic oracle refuses designs beyond its size bound."""
