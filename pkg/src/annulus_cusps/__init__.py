"""Exact invariants of cuspidal plane curve singularities and a census
certifying that an annulus embedded in the affine plane has at most three
singular points."""

__version__ = "0.1.0"
