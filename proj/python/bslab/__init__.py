"""Baumslag-Solitar boundary laboratory.

Thin Python face over the native core: Britton normal forms in BS(m,n),
the Bass-Serre tree action on R x T(|m|,n), the log-log compressed action
and its tile-angle asymptotics, the suspension action on the visual
boundary, and the graph-of-Z quasi-isometry classifier.
"""

import json as _json

from _bslab import (  # noqa: F401
    BudgetError,
    ParseError,
    alpha,
    ball,
    ball_size,
    compress,
    decompress,
    height,
    invert,
    key_quantity,
    loglog_grid,
    multiply,
    normal_form,
    render_tiling_svg,
    stable_conj,
    theta_ab,
    tile_corners_compressed,
    tile_corners_std,
)
import _bslab as _native

__version__ = "0.1.0"


def normal_form_data(word, m, n):
    """Canonical form as {'a0': ..., 'syllables': [[eps, a], ...]}."""
    return _json.loads(_native.normal_form_json(word, m, n))


def find_n(eps, m, n, a_max=1_000_000, b_max=60):
    """Angle threshold radius sweep; returns the summary dict."""
    return _json.loads(_native.find_n_json(eps, m, n, a_max, b_max))


def nullity_sweep(radius, delta, m, n, a_max=1_000_000, b_max=60):
    """Classify ball translates of the compressed fundamental tile."""
    return _json.loads(_native.nullity_json(radius, delta, m, n, a_max, b_max))


def asymptotic_slope(curve, p, q, m, n, schedule):
    """Slope estimates and residuals of the boundary image curves."""
    return _json.loads(
        _native.asymptotic_slope_json(curve, p, q, m, n, list(schedule))
    )


def gbs_classify(source):
    """Quasi-isometry class of a graph of Z's.

    `source` is either an (mu, mv) pair for a single loop or text in the
    line format: "vertex <id>" / "edge <u> <v> <mu> <mv>".
    """
    if isinstance(source, tuple):
        mu, mv = source
        return _json.loads(_native.gbs_classify_loop_json(mu, mv))
    return _json.loads(_native.gbs_classify_json(source))
