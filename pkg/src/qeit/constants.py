"""Physical constants (CODATA 2018) shared by every module.

Kept as plain floats rather than pulled from ``scipy.constants`` so the
values are pinned regardless of the installed SciPy release.
"""

CONSTANTS_VERSION = "CODATA-2018"

HBAR = 1.054571817e-34  # J s
EPSILON_0 = 8.8541878128e-12  # F/m
C_LIGHT = 2.99792458e8  # m/s

TABLE = {
    "hbar": (HBAR, "J s"),
    "epsilon_0": (EPSILON_0, "F/m"),
    "c": (C_LIGHT, "m/s"),
}
