from hypothesis import given, settings, strategies as st

from gradedgeo.geometry import (
    bianchi_first,
    check_metric_compatibility,
    contracted_christoffel_check,
    ricci_scalar,
    ricci_symmetry_check,
    riemann_antisymmetry_check,
    torsion_check,
    validate_metric,
)
from gradedgeo.specfile import parse_spec

from conftest import curvature

DEGREE_ZERO = """
[chart]
n = 2
trunc = 2
base = x
formal = z[1,1], xi1[0,1], xi2[0,1]

[metric]
degree = [0,0]
g[x,x] = 1 + {a}*x^2
g[z,z] = 1 + {b}*x^2
g[xi1,xi2] = 1 + {c}*z^2
g[x,z] = {d}*z
"""

EVEN = """
[chart]
n = 2
trunc = 2
base = x
formal = z[1,1], xi[0,1], eta[1,0]

[metric]
degree = [1,1]
g[x,z] = 1 + {a}*x^2 + {b}*z^2
g[eta,xi] = 1 + {c}*x^2
g[x,x] = {d}*z
"""

ODD = """
[chart]
n = 2
trunc = 2
base = x
formal = z[1,1], xi[0,1], eta[1,0]

[metric]
degree = [0,1]
g[x,xi] = 1 + {a}*x^2
g[z,eta] = 1 + {b}*z^2 + {c}*x
g[x,eta] = {d}*z
"""

small = st.integers(min_value=-2, max_value=2)


def check_levi_civita(text, a, b, c, d):
    m = parse_spec(text.format(a=a, b=b, c=c, d=d)).metric
    assert validate_metric(m).passed
    conn, r, ric = curvature(m)
    assert torsion_check(conn).passed
    assert check_metric_compatibility(m, conn).passed
    assert riemann_antisymmetry_check(r).passed
    assert bianchi_first(r).passed
    assert ricci_symmetry_check(ric).passed
    assert contracted_christoffel_check(m, conn).passed
    return m, ric


@settings(max_examples=10, deadline=None)
@given(small, small, small, small)
def test_random_degree_zero_metrics(a, b, c, d):
    check_levi_civita(DEGREE_ZERO, a, b, c, d)


@settings(max_examples=10, deadline=None)
@given(small, small, small, small)
def test_random_even_metrics(a, b, c, d):
    check_levi_civita(EVEN, a, b, c, d)


@settings(max_examples=10, deadline=None)
@given(small, small, small, small)
def test_random_odd_metrics(a, b, c, d):
    m, ric = check_levi_civita(ODD, a, b, c, d)
    assert ricci_scalar(m, ric).is_zero()
