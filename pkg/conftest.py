import os

from hypothesis import HealthCheck, settings

settings.register_profile('fast', max_examples=25, deadline=None)
settings.register_profile(
    'thorough',
    max_examples=400,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'fast'))
