"""Numerical toolkit for moduli of curve families, condenser capacities,
dilatation profiles, radial map families, distortion bounds, and the
chordal set function."""

try:
    from ._ringq import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - in-tree usage against a build dir
    from _ringq import *  # noqa: F401,F403

__version__ = "0.1.0"
