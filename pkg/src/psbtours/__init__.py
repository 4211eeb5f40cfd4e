"""Polytope of pyramidal tours with step-backs: encoding, adjacency, skeleton, solver."""
from .errors import *  # noqa: F401,F403
from .tours import (
    OrderMark, Peak, PeakKind, Tour, TourEncoding, classify_peaks, count_psb, decode,
    encode, enumerate_psb, is_psb, random_encoding,
)

__version__ = "0.1.0"
