"""
Configuration settings for the groupoid dynamics toolkit
"""
import os

# =============================================================================
# SWEEPS
# =============================================================================
# Subset pairs (M, N) are enumerated exhaustively up to this many points,
# above it a seeded sample is drawn instead.
SWEEP_CUTOFF = int(os.environ.get('GD_SWEEP_CUTOFF', '4'))
SAMPLE_PAIRS = int(os.environ.get('GD_SAMPLE_PAIRS', '64'))

# =============================================================================
# SIZE CAPS
# =============================================================================
MAX_UNITS = 6
MAX_ARROWS = 40
MAX_POINTS = 8
MAX_ORBITS = 6

# invariant sets are unions of orbits, 2**ORBIT_UNION_CAP of them at most
ORBIT_UNION_CAP = 12
ISO_MAX_ARROWS = 12

# spaces with more opens than this are written as minimal neighbourhoods
OPEN_LISTING_CAP = 256

# pullback generation stays small, triples grow quadratically in the fibres
PULLBACK_BASE_ARROWS = 12
PULLBACK_FIBER = 2

# =============================================================================
# GENERATOR FAMILIES
# =============================================================================
GENERATOR_KINDS = [
    'trivial',
    'pair',
    'group',
    'group_bundle',
    'transformation',
    'pullback_of',
    'random_topologized',
]

# cyclic group orders the generators draw from
GROUP_ORDERS = [1, 2, 3, 4, 6]

TOPOLOGIES = ['discrete', 'random_valid']

# =============================================================================
# SUITE
# =============================================================================
DEFAULT_SEED = int(os.environ.get('GD_SEED', '42'))
DEFAULT_COUNT = 100
SUITE_WORKERS = int(os.environ.get('GD_WORKERS', '1'))

# =============================================================================
# LOGGING
# =============================================================================
LOG_LEVEL = os.environ.get('GD_LOG_LEVEL', 'WARNING')

# =============================================================================
# DATA FILES
# =============================================================================
FIXTURES_DIR = 'data/fixtures'
REPORTS_DIR = 'data/reports'
COVERAGE_FILE = 'data/coverage.json'
