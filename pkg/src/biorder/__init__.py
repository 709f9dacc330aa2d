"""Non-bi-orderability certificates for knot groups and HNN extensions
from the positive real roots of the Alexander polynomial."""

__version__ = "0.1.0"
