"""Kernel selection: compiled extension if present, pure Python otherwise."""

from . import _bfs_py

PyGraphCore = _bfs_py.GraphCore

try:
    from ._bfs import GraphCore as CGraphCore

    GraphCore = CGraphCore
    HAVE_C_KERNEL = True
except ImportError:
    CGraphCore = None
    GraphCore = PyGraphCore
    HAVE_C_KERNEL = False

__all__ = ["GraphCore", "PyGraphCore", "CGraphCore", "HAVE_C_KERNEL"]
