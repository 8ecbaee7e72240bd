"""Mixed ladder determinantal ideals: Groebner bases, heights, Hilbert series,
Gorenstein classification and G-biliaison chains over a prime field."""
from .errors import AlreadyLinear, BudgetExceeded, DegenerateLadder, LadderError
from .ladder import Ladder, validate

__version__ = "0.1.0"

__all__ = ["AlreadyLinear", "BudgetExceeded", "DegenerateLadder", "Ladder", "LadderError",
           "validate", "__version__"]
