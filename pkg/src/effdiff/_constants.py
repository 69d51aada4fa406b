"""Numeric constants shared by both kernel backends."""

import numpy as np

LANCZOS_G = 7.0
LANCZOS = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
HALF_LOG_2PI = 0.91893853320467274178
SQRT2 = 1.4142135623730951

# above this df, J uses the Gamma(z + 1/2) / Gamma(z) asymptotic series
J_SERIES_MIN_DF = 1000.0

BETA_EPS = 1e-16
BETA_FPMIN = 1e-300
BETA_MAXIT = 20000

NCT_MAXTERMS = 200000
NCT_TAIL = 1e-17

# |ncp| beyond which the confidence-limit search gives up
NCP_CAP = 1e4
