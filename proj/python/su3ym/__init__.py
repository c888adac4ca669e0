"""Truncated SU(3) Yang-Mills lattice gauge theory toolkit."""

try:
    from ._su3ym import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree build: extension sits on PYTHONPATH
    from _su3ym import *  # noqa: F401,F403
