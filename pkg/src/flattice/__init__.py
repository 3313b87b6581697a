"""Integer superharmonic odometers on the F-lattice.

Constructs, for every reduced fraction 0 <= n/d <= 1, the two recurrent
integer superharmonic tile odometers (standard and alternate), extends them
periodically to the plane, and verifies superharmonicity, recurrence,
periodic growth, rotation invariance and tiling coverage at desk scale.
"""

from flattice.farey import Frac
from flattice.construct import get_tile_odometer, extend_global

__all__ = ["Frac", "get_tile_odometer", "extend_global"]
__version__ = "0.1.0"
