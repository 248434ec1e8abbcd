"""Default knobs for the seeded sampling routines."""

DEFAULT_SEED = 12345
ORDERING_SAMPLES = 100_000
