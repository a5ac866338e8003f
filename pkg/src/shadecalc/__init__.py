"""Invariants of real rational curves in projective 3-space and the
3-sphere: encomplexed writhe, shade numbers, wrapping and linking
numbers, computed through certified generic projections and exact
resultant elimination."""

__version__ = "0.1.0"
