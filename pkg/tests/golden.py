"""Reference values shared by the test modules.

Entry exponent tuples follow the variable order (a01, a11, a02, a12, a03).
"""

from fractions import Fraction

F = Fraction

# counting-matrix entries and anticanonical degrees of the two catalog models
MATRIX_V10 = {
    "deg": 10,
    "a01": F(156),
    "a11": F(10),
    "a02": F(3600),
    "a12": F(380),
    "a03": F(33120),
}
MATRIX_V14 = {
    "deg": 14,
    "a01": F(64),
    "a11": F(5),
    "a02": F(924),
    "a12": F(140),
    "a03": F(5936),
}

ALPHA = {"V10": F(6), "V14": F(4)}

# hyperplane series of the threefolds through q^6, split as (H^0, H^1) parts
SERIES_V10_C0 = (F(1), F(0), F(39), F(220), F(6291, 4), F(8766), F(524413, 12))
SERIES_V10_C1 = (
    F(0),
    F(10),
    F(67, 2),
    F(3200, 9),
    F(89387, 48),
    F(48148, 5),
    F(18179177, 432),
)
SERIES_V14_C0 = (F(1), F(0), F(16), F(52), F(230), F(764), F(41291, 18))
SERIES_V14_C1 = (
    F(0),
    F(5),
    F(31, 4),
    F(1031, 18),
    F(14863, 96),
    F(162613, 360),
    F(896441, 864),
)

# symbolic I-series coefficients as {exponent tuple: coefficient} over the
# entry variables; derived by hand from the divisor and descendant recursions
GOLDEN_C1_1 = {(0, 1, 0, 0, 0): F(1)}
GOLDEN_C0_2 = {(1, 0, 0, 0, 0): F(1, 4)}
GOLDEN_C1_2 = {
    (0, 0, 0, 1, 0): F(1, 8),
    (1, 0, 0, 0, 0): F(-1, 4),
    (0, 2, 0, 0, 0): F(1, 4),
}
GOLDEN_C0_3 = {(0, 0, 1, 0, 0): F(1, 27), (1, 1, 0, 0, 0): F(1, 18)}
GOLDEN_C1_3 = {
    (0, 0, 1, 0, 0): F(-2, 81),
    (0, 1, 0, 1, 0): F(1, 12),
    (1, 1, 0, 0, 0): F(5, 108),
    (0, 3, 0, 0, 0): F(1, 18),
}
GOLDEN_C0_4 = {
    (0, 0, 0, 0, 1): F(1, 256),
    (0, 1, 1, 0, 0): F(7, 576),
    (1, 0, 0, 1, 0): F(1, 128),
    (2, 0, 0, 0, 0): F(1, 64),
    (1, 2, 0, 0, 0): F(1, 96),
}
GOLDEN_C1_4 = {
    (0, 0, 0, 0, 1): F(-1, 256),
    (0, 0, 0, 2, 0): F(1, 256),
    (0, 1, 1, 0, 0): F(17, 1728),
    (2, 0, 0, 0, 0): F(-3, 128),
    (0, 2, 0, 1, 0): F(1, 32),
    (1, 2, 0, 0, 0): F(13, 576),
    (0, 4, 0, 0, 0): F(1, 96),
}

SEVEN_GOLDEN = {
    ("c1", 1): GOLDEN_C1_1,
    ("c0", 2): GOLDEN_C0_2,
    ("c1", 2): GOLDEN_C1_2,
    ("c0", 3): GOLDEN_C0_3,
    ("c1", 3): GOLDEN_C1_3,
    ("c0", 4): GOLDEN_C0_4,
    ("c1", 4): GOLDEN_C1_4,
}


def entry_values(matrix):
    """Evaluation mapping for EntryPolynomial from a matrix dict."""
    return {k: v for k, v in matrix.items() if k != "deg"}
