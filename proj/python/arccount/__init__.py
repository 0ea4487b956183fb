"""Arc and curve counting on one-vertex ribbon surfaces (C++ core bindings)."""

try:
    from . import _core as _c  # installed layout: extension inside the package
except ImportError:
    import _core as _c  # build-tree layout: extension on PYTHONPATH

__version__ = _c.__version__

apply_word = _c.apply_word
canonical_arc = _c.canonical_arc
canonical_curve = _c.canonical_curve
decode_slope = _c.decode_slope
functional_eval = _c.functional_eval
generators = _c.generators
i_arc_curve = _c.i_arc_curve
i_curves = _c.i_curves
i_map = _c.i_map
i_multi = _c.i_multi
info = _c.info
is_simple = _c.is_simple
mlz_count = _c.mlz_count
orbit_counts = _c.orbit_counts
self_intersection = _c.self_intersection

__all__ = [
    "apply_word",
    "canonical_arc",
    "canonical_curve",
    "decode_slope",
    "functional_eval",
    "generators",
    "i_arc_curve",
    "i_curves",
    "i_map",
    "i_multi",
    "info",
    "is_simple",
    "mlz_count",
    "orbit_counts",
    "self_intersection",
]
