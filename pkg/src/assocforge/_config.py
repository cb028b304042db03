"""Process-wide switches read from the environment.

ASSOCFORGE_BACKEND          ``numba`` (default when importable) or ``numpy``
ASSOCFORGE_PERM_CONVENTION  ``image`` (default) or ``preimage``
"""

import os

BACKENDS = ("numba", "numpy")
PERM_CONVENTIONS = ("image", "preimage")


def _numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def backend():
    name = os.environ.get("ASSOCFORGE_BACKEND", "").strip().lower()
    if not name:
        return "numba" if _numba_available() else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"ASSOCFORGE_BACKEND must be one of {BACKENDS}, got {name!r}")
    if name == "numba" and not _numba_available():
        raise ValueError("ASSOCFORGE_BACKEND=numba but numba is not installed")
    return name


def perm_convention():
    name = os.environ.get("ASSOCFORGE_PERM_CONVENTION", "image").strip().lower()
    if name not in PERM_CONVENTIONS:
        raise ValueError(
            f"ASSOCFORGE_PERM_CONVENTION must be one of {PERM_CONVENTIONS}, got {name!r}"
        )
    return name
