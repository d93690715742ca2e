"""Shared constants for the triangle classifier."""

# Output records
SCHEMA = 'trilab/1'
JSON_SAFE_INT = 2 ** 53  # larger magnitudes are emitted as decimal strings

# Parallelism (CLI flag > TRILAB_THREADS env > .env > default)
THREADS_ENV = 'TRILAB_THREADS'
DEFAULT_THREADS = 1

# Ehrhart dataset defaults
DEFAULT_CONE_MAX = 8  # cones sigma_c checked for 1 <= c <= this
# (c, b, i) known to fall inside sigma_c: T(0,(3,0),(0,3)) has b = 9, i = 1
KNOWN_CONE_EXCEPTIONS = frozenset({(1, 9, 1)})
BI_CSV_HEADER = ('b', 'i', 'max_w2', 'has_long_edge', 'count')
STRIP_CSV_HEADER = ('l', 'c', 'b', 'i', 'gcd_wl')

# Brute-force oracle search radius for primitive dual vectors
ORACLE_BOUND = 20

# The five vertices of the rational simplex Q in Q^4, as (numerator, denominator) pairs
Q_VERTICES = (
    ((1, 2), (0, 1), (0, 1), (0, 1)),
    ((0, 1), (1, 2), (0, 1), (0, 1)),
    ((0, 1), (0, 1), (1, 2), (0, 1)),
    ((0, 1), (0, 1), (0, 1), (1, 1)),
    ((-1, 1), (-1, 1), (-1, 1), (-1, 1)),
)
