"""Capacity-achieving discrete inputs and support-size bounds for
amplitude-constrained Gaussian noise channels."""

from ._ampcap import *  # noqa: F401,F403
from ._ampcap import __doc__  # noqa: F401
