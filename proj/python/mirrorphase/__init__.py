"""Open-system dynamics and geometric phase of a two-level atom near a
reflecting plane."""

try:
    from ._mirrorphase import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _mirrorphase import *  # noqa: F401,F403  (in-tree build layout)
