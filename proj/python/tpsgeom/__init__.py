"""Contact-metric geometry of the thermodynamic phase space.

Thin wrapper around the compiled `_tpsgeom` extension. The extension sits
inside the package in wheel builds and next to it on `PYTHONPATH` in
development builds.
"""

try:
    from ._tpsgeom import *  # noqa: F401,F403
    from . import _tpsgeom as _ext
except ImportError:  # development layout: extension directly on sys.path
    from _tpsgeom import *  # noqa: F401,F403
    import _tpsgeom as _ext

__all__ = [name for name in dir(_ext) if not name.startswith("_")]
__version__ = "0.1.0"
