"""Discrete Laguerre operators, their evolution kernel and Bernstein-type inequalities
for Jacobi polynomials."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:        # running from a source tree
    __version__ = "0.1.0"
