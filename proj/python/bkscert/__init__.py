"""Machine-checkable uncolorability certificates.

The heavy lifting lives in the compiled extension: exact scalar arithmetic,
derivation rule checking, instance compilation, and the combinatorial
coloring oracle. This package re-exports the main operations:

- generate(seed_axis="all", target=None, max_links=64, precision_bits=256)
- verify(text)
- instance(text)
- color(text, mode="backtracking", pins=())
"""

from ._core import color, format_version, generate, instance, verify

__all__ = ["color", "format_version", "generate", "instance", "verify"]
