try:
    from ._rwlab import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree build: extension sits on sys.path
    from _rwlab import *  # noqa: F401,F403

from ._version import __version__  # noqa: F401
