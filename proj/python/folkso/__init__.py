"""Folksonomy structure networks with elastic matching."""

try:
    from folkso._folkso import *  # noqa: F401,F403
    from folkso._folkso import __doc__  # noqa: F401
except ImportError:
    # Running against a bare build tree where the extension sits on
    # sys.path outside the package.
    from _folkso import *  # noqa: F401,F403
    from _folkso import __doc__  # noqa: F401
