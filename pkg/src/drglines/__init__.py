"""Distance-regular graph parameters, Grassmann graphs, and line extraction."""

__version__ = "0.1.0"
