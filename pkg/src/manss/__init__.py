"""RO(G)-graded modified Adams-Novikov spectral sequence workbench."""

__version__ = "0.1.0"
