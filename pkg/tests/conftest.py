"""Shared test configuration.

Hypothesis runs derandomized with no deadline: individual examples do
arbitrary-precision arithmetic whose wall time varies too much for the
default per-example deadline, and the acceptance suite should replay
bit-identically from run to run.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "momentquad",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("momentquad")
