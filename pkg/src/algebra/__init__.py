"""Quaternion arithmetic in complex-pair form."""

from .quaternion import I, J, K, ONE, Quaternion, jmul_left, qconj, qmul

__all__ = ["I", "J", "K", "ONE", "Quaternion", "jmul_left", "qconj", "qmul"]
