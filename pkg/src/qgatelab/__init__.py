"""Linear-optics heralded gates and Bose-Hubbard lattice registers."""

__version__ = "0.1.0"
