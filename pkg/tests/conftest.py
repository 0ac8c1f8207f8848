from functools import lru_cache

from sgsmap import catalog
from sgsmap.exactalg import Ring
from sgsmap.oracle import build_total_space, verify
from sgsmap.sgsmodel import make_spec

# name -> (base reference, fiber dims, assignment)
FIXTURES = {
    "interval": ("disk(1)", (1,), (1, 1)),
    "disk": ("disk(2)", (1,), (1,)),
    "disk_k2": ("disk(2)", (2,), (1,)),
    "annulus": ("sphere_times_interval(2)", (1,), (1, 1)),
    "annulus_k2": ("sphere_times_interval(2)", (2,), (1, 1)),
    "punctured_torus": ("surface(1, 1)", (1,), (1,)),
    "punctured_torus_k2": ("surface(1, 1)", (2,), (1,)),
    "pants": ("surface(0, 3)", (1,), (1, 1, 1)),
    "pants_k2": ("surface(0, 3)", (2,), (1, 1, 1)),
    "s2_interval": ("sphere_times_interval(3)", (1,), (1, 1)),
    "ex22": ("sphere_times_interval(2)", (1, 1), (1, 2)),
    "s1s2s1": ("sphere_times_interval(2)", (1, 1), (1, 1)),
    "ex23": ("sphere_times_interval(3)", (1, 2), (1, 1)),
    "torus_closed": ("torus()", (1,), ()),
}


@lru_cache(maxsize=None)
def spec_for(name):
    base, fiber, assignment = FIXTURES[name]
    return make_spec(catalog.build(base), fiber, assignment, base_name=base)


@lru_cache(maxsize=None)
def model_for(name):
    return build_total_space(spec_for(name))


@lru_cache(maxsize=None)
def report_for(name, coeff=Ring.Z2):
    return verify(spec_for(name), coeff)
