"""Backend selection for the Bloch divergence kernels.

Prefers the compiled Cython extension; falls back to the vectorized numpy
implementation when the extension was not built. Both expose the same
functions: bloch_relative_entropy, batch_divergence, scan_centers.
"""

try:
    from . import _kernels_cy as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; pure-python fallback
    from . import _kernels_py as _impl

    BACKEND = "python"

bloch_relative_entropy = _impl.bloch_relative_entropy
batch_divergence = _impl.batch_divergence
scan_centers = _impl.scan_centers

__all__ = ["BACKEND", "bloch_relative_entropy", "batch_divergence", "scan_centers"]
