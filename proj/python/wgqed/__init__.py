"""Single-photon scattering off a V-type emitter in a rectangular waveguide.

Frequencies are in PHz and lengths in micrometres.
"""

from ._wgqed import *  # noqa: F401,F403
from ._wgqed import __doc__  # noqa: F401

__version__ = "0.1.0"
