import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import LAM, X, from_sympy, rand_pair, rand_poly, rand_tuple, to_sympy
from spectral_pairs.errors import DomainError, UnpackableFactorization
from spectral_pairs.pairs import (
    BGType,
    CyclicChain,
    FactoredSection,
    HitchinTuple,
    Stability,
    TwistedPair,
    _pack,
    cayley_hamilton_check,
    chain_capacities,
    chain_stability,
    char_coefficients_det,
    char_coefficients_newton,
    characteristic_polynomial,
    companion,
    cyclic_chain_build,
    grothendieck_constraint,
    nitsure_dimension,
    power_traces,
    slope,
)
from spectral_pairs.ratpoly import Poly
from spectral_pairs.sections import Section, flip_chart

x = Poly.x()
one = Poly.const(1)
seeds = st.integers(0, 2**32 - 1)


# -- construction ---------------------------------------------------------------

def test_bg_must_be_sorted():
    with pytest.raises(ValueError):
        BGType((0, 1))
    assert BGType.sorted([-2, 0, -1]).m == (0, -1, -2)


def test_pair_rejects_negative_twist_entry():
    with pytest.raises(ValueError):
        TwistedPair(1, BGType((0, -3)), ((Poly(), Poly()), (one, Poly())))


def test_pair_rejects_degree_overflow():
    with pytest.raises(ValueError):
        TwistedPair(1, BGType((0,)), ((x**2,),))


def test_hitchin_twists_checked():
    with pytest.raises(ValueError):
        HitchinTuple(2, (Section(2, x), Section(3, x)))


# -- characteristic coefficients ------------------------------------------------

def test_diagonal_pair():
    a = Poly([1, 2])
    p = TwistedPair(1, BGType((0, 0)), ((a, Poly()), (Poly(), a)))
    assert char_coefficients_newton(p).polys == (-2 * a, a * a)


def test_newton_second_coefficient_is_determinant():
    rng = random.Random(7)
    for _ in range(20):
        p = rand_pair(rng, max_r=2)
        if p.rank != 2:
            continue
        tr1, tr2 = power_traces(p)[:2]
        wedge2 = (tr1 * tr1 - tr2) * Fraction(1, 2)
        det = p.phi[0][0] * p.phi[1][1] - p.phi[0][1] * p.phi[1][0]
        assert wedge2 == det == char_coefficients_newton(p).polys[1]


def test_rank_one():
    a = Poly([3, -1])
    p = TwistedPair(1, BGType((2,)), ((a,),))
    assert char_coefficients_det(p).polys == (-a,)
    assert char_coefficients_newton(p).polys == (-a,)
    assert cayley_hamilton_check(p)


def test_nilpotent_lower_triangular():
    p = TwistedPair(2, BGType((0, 0, 0)), (
        (Poly(), Poly(), Poly()),
        (x, Poly(), Poly()),
        (Poly([1, 1]), x**2, Poly()),
    ))
    assert all(s.is_zero() for s in char_coefficients_det(p).s)
    assert all(s.is_zero() for s in char_coefficients_newton(p).s)


def _sympy_charpoly(p: TwistedPair):
    m = sympy.Matrix([[to_sympy(e) for e in row] for row in p.phi])
    cp = sympy.expand((LAM * sympy.eye(p.rank) - m).det(method="berkowitz"))
    return [from_sympy(cp.coeff(LAM, p.rank - i)) for i in range(1, p.rank + 1)]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_both_routes_match_sympy(seed):
    p = rand_pair(random.Random(seed), max_r=4)
    expected = _sympy_charpoly(p)
    assert list(char_coefficients_newton(p).polys) == expected
    assert list(char_coefficients_det(p).polys) == expected


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_newton_equals_det(seed):
    p = rand_pair(random.Random(seed))
    assert char_coefficients_newton(p) == char_coefficients_det(p)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cayley_hamilton(seed):
    assert cayley_hamilton_check(rand_pair(random.Random(seed)))


def test_cayley_hamilton_detects_wrong_coefficients():
    p = TwistedPair(1, BGType((0, 0)), ((x, one), (one, Poly())))
    assert cayley_hamilton_check(p)
    assert characteristic_polynomial(p).coeff(2) == one


def _flipped_pair(p: TwistedPair) -> TwistedPair:
    rows = []
    for i in range(p.rank):
        row = []
        for j in range(p.rank):
            sec = p.section(i, j)
            row.append(flip_chart(sec) if sec is not None else Poly())
        rows.append(tuple(row))
    return TwistedPair(p.t, p.bg, tuple(rows))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_chart_covariance(seed):
    p = rand_pair(random.Random(seed), max_r=4)
    s = char_coefficients_newton(p)
    s_flip = char_coefficients_newton(_flipped_pair(p))
    for a, b in zip(s.s, s_flip.s):
        assert a.rep.degree <= a.k
        assert flip_chart(a) == b.rep


# -- companion -------------------------------------------------------------------

def test_companion_rank_two_display():
    s1, s2 = Poly([1, 1]), Poly([0, 0, 3])
    p = companion(HitchinTuple.from_polys(2, [s1, s2]))
    assert p.bg.m == (0, -2)
    assert p.phi == ((Poly(), -s2), (one, -s1))
    assert char_coefficients_newton(p).polys == (s1, s2)


def test_companion_rank_one():
    s1 = Poly([2, 5])
    p = companion(HitchinTuple.from_polys(1, [s1]))
    assert p.phi == ((-s1,),)


def test_companion_rank_three_by_cofactors():
    h = HitchinTuple.from_polys(1, [Poly([1, 2]), Poly([0, 1, 1]), Poly([5, 0, 0, -1])])
    assert char_coefficients_det(companion(h)) == h


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_companion_round_trip(seed):
    rng = random.Random(seed)
    h = rand_tuple(rng, rng.randint(1, 5), rng.randint(1, 3))
    p = companion(h)
    assert p.bg.m == tuple(-p.t * i for i in range(h.r))
    assert char_coefficients_det(p) == h


# -- bundle numerics -------------------------------------------------------------

@pytest.mark.parametrize("m,t,expected", [
    ((0, -1, -1, -2), 2, True),
    ((0, -3), 2, False),
    ((0, -2, -4, -6), 2, True),
])
def test_grothendieck_examples(m, t, expected):
    assert grothendieck_constraint(BGType(m), t) is expected


@pytest.mark.parametrize("m,expected", [((0, -2), -1), ((1, 1), 1), ((0, -1, -1, -2), -1)])
def test_slope_examples(m, expected):
    assert slope(BGType(m)) == expected


@pytest.mark.parametrize("r,t,expected", [(2, 2, 9), (1, 1, 2), (3, 2, 19)])
def test_nitsure_examples(r, t, expected):
    assert nitsure_dimension(r, t) == expected


@given(st.integers(1, 10), st.integers(1, 10))
def test_nitsure_serre_duality(r, t):
    # h^1(O(t)) = h^0(O(-t-2)) = max(0, -t-1)
    h0_dual = max(0, (-t - 2) + 1)
    assert nitsure_dimension(r, t) == r * r * t + 1 + h0_dual


def test_nitsure_rejects_nonpositive_twist():
    with pytest.raises(DomainError, match="outside the treated cases"):
        nitsure_dimension(2, 0)


# -- cyclic chains ---------------------------------------------------------------

def _brute_pack(sizes, caps):
    for assign in itertools.product(range(len(caps)), repeat=len(sizes)):
        used = [0] * len(caps)
        for size, slot in zip(sizes, assign):
            used[slot] += size
        if all(u <= max(c, 0) for u, c in zip(used, caps)):
            return True
    return False


@settings(max_examples=200)
@given(st.lists(st.integers(1, 4), max_size=5), st.lists(st.integers(-1, 5), min_size=1, max_size=4))
def test_packer_is_complete(sizes, caps):
    where = _pack(sizes, caps)
    assert (where is not None) == _brute_pack(sizes, caps)
    if where is not None:
        used = [0] * len(caps)
        for size, slot in zip(sizes, where):
            used[slot] += size
        assert all(u <= max(c, 0) for u, c in zip(used, caps))


def _check_chain(chain, s):
    assert all(u.degree <= c for u, c in zip(chain.u, chain.capacities))
    prod = one
    for u in chain.u:
        prod = prod * u
    assert prod == s.rep
    det = char_coefficients_det(chain.pair())
    assert all(si.is_zero() for si in det.s[:-1])
    assert -det.s[-1].rep == s.rep


def test_chain_extreme_case():
    s = Section(8, Poly.from_roots([1, 2, 3, 4, 5, 6, 7, 8]))
    chain = cyclic_chain_build(BGType((0, -2, -4, -6)), 2, FactoredSection.split_rational(s))
    assert chain.capacities == [0, 0, 0, 8]
    assert chain.u[:3] == (one, one, one) and chain.u[3] == s.rep
    _check_chain(chain, s)


def test_chain_equal_slots():
    s = Section(8, Poly.from_roots([-3, -2, -1, 0, 1, 2, 3, 4], lead=5))
    chain = cyclic_chain_build(BGType((0, 0, 0, 0)), 2, FactoredSection.split_rational(s))
    assert all(u.degree <= 2 for u in chain.u)
    _check_chain(chain, s)


def test_chain_rank_two_greedy():
    s = Section(4, x * (x - 1) * (x - 2))
    chain = cyclic_chain_build(BGType((0, -1)), 2, FactoredSection.split_rational(s))
    assert chain.capacities == [1, 3]
    assert chain.u[0].degree <= 1
    _check_chain(chain, s)


def test_chain_irreducible_quadratic_blocks():
    s = Section(4, (x**2 + 1) * (x**2 + 2))
    fs = FactoredSection(4, 1, ((x**2 + 1, 1), (x**2 + 2, 1)))
    chain = cyclic_chain_build(BGType((0, 0)), 2, fs)
    _check_chain(chain, s)


def test_chain_unpackable():
    fs = FactoredSection(4, 1, ((x**3 + x + 1, 1), (x - 1, 1)))
    with pytest.raises(UnpackableFactorization, match="unpackable factorization"):
        cyclic_chain_build(BGType((0, 0)), 2, fs)


def test_chain_requires_constraint():
    fs = FactoredSection.split_rational(Section(4, x**2 - 1))
    with pytest.raises(DomainError):
        cyclic_chain_build(BGType((0, -3)), 2, fs)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_chain_build_random(seed):
    rng = random.Random(seed)
    r, t = rng.randint(1, 4), rng.randint(1, 3)
    bg = BGType.sorted([rng.randint(-t, t) for _ in range(r)])
    if not grothendieck_constraint(bg, t):
        return
    roots = [rng.randint(-6, 6) for _ in range(rng.randint(0, t * r))]
    s = Section(t * r, Poly.from_roots(roots, lead=rng.choice([1, -2, 3])))
    fs = FactoredSection.split_rational(s)
    assert fs.section() == s
    _check_chain(cyclic_chain_build(bg, t, fs), s)


def test_chain_capacities_follow_twists():
    bg = BGType((1, 0, -2))
    assert chain_capacities(bg, 2) == [1, 0, 5]


def test_chain_slot_validation():
    with pytest.raises(ValueError):
        CyclicChain(1, BGType((0, -3)), (x, one))


# -- stability ---------------------------------------------------------------

def test_stability_rank_two_generic():
    chain = CyclicChain(2, BGType((0, -2)), (one, Poly.from_roots([1, 2, 3, 4])))
    assert chain_stability(chain) is Stability.STABLE


def test_stability_unstable_when_first_slot_vanishes():
    chain = CyclicChain(2, BGType((0, -2)), (Poly(), Poly.from_roots([1, 2])))
    assert chain_stability(chain) is Stability.UNSTABLE


def test_stability_nilpotent_chain():
    chain = CyclicChain(2, BGType((0, -1)), (x, Poly()))
    # the only invariant line subbundle is O(-1), strictly below mu = -1/2
    assert chain_stability(chain) is Stability.STABLE
    even = CyclicChain(2, BGType((0, -2)), (one, Poly()))
    assert chain_stability(even) is Stability.STABLE
    equal = CyclicChain(1, BGType((0, 0)), (x, Poly()))
    assert chain_stability(equal) is Stability.SEMISTABLE_ONLY


def test_stability_equal_degrees_with_gap():
    chain = CyclicChain(1, BGType((1, 1, 1)), (one, Poly(), x))
    assert chain_stability(chain) is Stability.SEMISTABLE_ONLY


def _chain_choices(t, bg):
    caps = chain_capacities(bg, t)
    options = [[Poly()] + ([x**c] if c >= 0 else []) for c in caps]
    for u in itertools.product(*options):
        yield CyclicChain(t, bg, u)


def test_failed_constraint_forces_instability_or_zero_determinant():
    for r in range(1, 4):
        for m in itertools.combinations_with_replacement(range(4, -5, -1), r):
            bg = BGType(m)
            for t in (1, 2):
                if grothendieck_constraint(bg, t):
                    continue
                for chain in _chain_choices(t, bg):
                    det = char_coefficients_det(chain.pair()).s[-1]
                    assert chain_stability(chain) is Stability.UNSTABLE or det.is_zero()
