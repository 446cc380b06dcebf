"""Deterministic color assignment for both graph levels.

Cluster base colors come from a splitmix64-seeded palette so that the same
(session seed, cluster index) always yields the same color on every
platform. Gene p-value colors use a white -> orange -> red ramp over
t = clamp(-log10(p) / scale, 0, 1).
"""

import colorsys
import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

NEUTRAL_GENE_COLOR = "#c8c8c8"  # genes with no p-value for the disease

_WHITE = (255, 255, 255)
_ORANGE = (255, 165, 0)
_RED = (255, 0, 0)

# enrichment class -> suggested fill, used by clients that want a default
CLASS_FILLS = {"red": "#e03131", "orange": "#f59f00", "white": "#ffffff"}


def splitmix64(x: int) -> int:
    """One splitmix64 output for input x; stable across platforms."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _unit(x: int) -> float:
    return (x >> 11) * 2.0**-53  # top 53 bits -> [0, 1)


def rgb_hex(rgb: tuple[int, int, int]) -> str:
    r, g, b = rgb
    return f"#{r:02x}{g:02x}{b:02x}"


def cluster_base_color(seed: int, cluster_index: int) -> str:
    """Pseudo-random but reproducible base color for one cluster node."""
    h = _unit(splitmix64((seed & _MASK64) ^ splitmix64(cluster_index + 1)))
    r, g, b = colorsys.hsv_to_rgb(h, 0.62, 0.88)
    return rgb_hex((round(r * 255), round(g * 255), round(b * 255)))


def _lerp(a: tuple[int, int, int], b: tuple[int, int, int], t: float) -> tuple[int, int, int]:
    return tuple(round(a[i] + (b[i] - a[i]) * t) for i in range(3))


def pvalue_color(p: float, scale: float = 8.0) -> str:
    """Continuous significance ramp: p=1 white, p=10**-scale/2 orange, saturating red."""
    t = min(max(-math.log10(p) / scale, 0.0), 1.0)
    if t <= 0.5:
        rgb = _lerp(_WHITE, _ORANGE, t * 2.0)
    else:
        rgb = _lerp(_ORANGE, _RED, (t - 0.5) * 2.0)
    return rgb_hex(rgb)
