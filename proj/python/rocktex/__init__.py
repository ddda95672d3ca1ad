"""Color rock-texture descriptors (LBP color-space fusion on Gabor and DCT planes)."""

from ._rocktex import *  # noqa: F401,F403
from ._rocktex import RocktexError

__all__ = [name for name in dir() if not name.startswith("_")]
