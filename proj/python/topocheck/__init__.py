"""Finite topological models for intuitionistic propositional logic.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

try:
    from ._topocheck import *  # noqa: F401,F403
    from ._topocheck import __version__  # noqa: F401
except ImportError:  # running against a build tree, module not in the package
    from _topocheck import *  # noqa: F401,F403
    from _topocheck import __version__  # noqa: F401
