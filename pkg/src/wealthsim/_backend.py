"""Kernel backend selection.

The package ships the hot loops twice: a compiled Cython extension
(``wealthsim._kernels``) and a pure-Python twin
(``wealthsim._kernels_py``).  Both produce bit-identical results; the
compiled one is just faster.  By default the compiled backend is used
when importable.  Set the environment variable WEALTHSIM_BACKEND to
"compiled" or "python" to force one (forcing "compiled" fails loudly if
the extension is missing), or "auto" for the default behavior.
"""

import os

from .errors import ConfigError

BACKEND_CHOICES = ("auto", "compiled", "python")


def load_kernels(name: str):
    """Return the kernel module for an explicit backend name."""
    if name == "compiled":
        from . import _kernels

        return _kernels
    if name == "python":
        from . import _kernels_py

        return _kernels_py
    raise ConfigError(f"backend must be 'compiled' or 'python', got {name!r}")


def default_backend() -> str:
    """Resolve the default backend name from the environment."""
    choice = os.environ.get("WEALTHSIM_BACKEND", "auto").strip().lower()
    if choice not in BACKEND_CHOICES:
        raise ConfigError(
            f"WEALTHSIM_BACKEND must be one of {BACKEND_CHOICES}, got {choice!r}"
        )
    if choice == "auto":
        try:
            import wealthsim._kernels  # noqa: F401

            return "compiled"
        except ImportError:
            return "python"
    return choice


def resolve_kernels(backend: str | None = None):
    """Return (kernel module, backend name) honoring an optional override."""
    name = default_backend() if backend is None else backend
    return load_kernels(name), name
