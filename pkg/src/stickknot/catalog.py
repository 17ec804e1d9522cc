"""Reference polygons used by the tests, the CLI and the README."""
import numpy as np

#: Seven-stick figure-eight knot whose degree-7 Bezier curve is unknotted.
EXAMPLE_41 = np.array([
    (1.3076, -3.3320, -2.5072),
    (-1.3841, 4.6826, 0.9135),
    (-3.2983, -4.0567, 2.6862),
    (-0.1233, 2.7683, -2.4636),
    (3.9080, -4.5334, 1.2264),
    (-3.9360, -0.4383, -0.9834),
    (3.2182, 4.2961, 2.1125),
])

UNIT_SQUARE = np.array([(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, 0.0), (0.0, 1.0, 0.0)])


def trefoil_sticks(twist_deg: float = 20.0, height: float = 1.0) -> np.ndarray:
    """Six-stick trefoil on the unit cylinder.

    Vertices step 120 degrees around the axis, alternating between
    heights ``+height`` and ``-height``; odd vertices are rotated by
    ``twist_deg`` so that no two sticks meet.
    """
    k = np.arange(6)
    theta = np.radians(120.0 * k + np.where(k % 2, twist_deg, 0.0))
    z = np.where(k % 2, -height, height)
    return np.stack([np.cos(theta), np.sin(theta), z], axis=1)
