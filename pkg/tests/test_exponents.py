import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from weylexp.catalog import CATALOG
from weylexp.errors import Divergent, NeedsResolution, SingularMatrix
from weylexp.exponents import (Derivation, IndexPairSet, apply_substitution, build_index_set,
                               check_bounds, combine_charts, compute_exponents, eigen_law,
                               exponents_from_charts, exponents_from_index_set,
                               exponents_single, exponents_trivial, profile_index_set,
                               reduce_profile)
from weylexp.nsw import nsw_profile
from weylexp.polyalg import Poly

EX64 = IndexPairSet([((3, 0), 3), ((2, 0), 4), ((0, 1), 4), ((1, 0), 5), ((0, 0), 6)])


def profile(name, subst=False):
    return nsw_profile(CATALOG[name].load(with_subst=subst).system)


SYSTEM_CASES = [n for n, c in CATALOG.items() if c.load().system is not None]


class TestReduce:
    def test_kinds(self):
        assert reduce_profile(profile("heisenberg")).kind == "Trivial"
        red = reduce_profile(profile("martinet"))
        assert (red.kind, red.var) == ("Single", 0)
        red = reduce_profile(profile("fractional"))
        assert (red.kind, red.v) == ("Multi", 2)
        assert all(p.nvars == 2 for _, p in red.polys)


class TestClosedForms:
    def test_trivial(self):
        r = exponents_trivial(profile("heisenberg"))
        assert (r.Q0, r.d0, r.derivation) == (4, 0, Derivation.TRIVIAL)
        r = exponents_trivial(profile("euclidean-2"))
        assert (r.Q0, r.d0) == (2, 0)

    @pytest.mark.parametrize("name,expected", [
        ("grushin-2-1", (2, 1)), ("grushin-2-2", (3, 0)), ("martinet", (4, 1))])
    def test_single(self, name, expected):
        r = exponents_single(profile(name), 0)
        assert (r.Q0, r.d0) == expected


class TestIndexSet:
    def test_fractional(self):
        G = build_index_set(reduce_profile(profile("fractional")).polys, 2)
        assert G == EX64
        assert G.b == (0, 0)

    def test_needs_resolution(self):
        with pytest.raises(NeedsResolution) as exc:
            build_index_set(reduce_profile(profile("subst")).polys, 2)
        assert [str(p) for p in exc.value.offending] == ["x1 + x2"]

    def test_direct_monomials(self):
        polys = [(4, Poly.monomial([1], 3)), (5, Poly.const(1, 7))]
        assert build_index_set(polys, 1) == IndexPairSet([((1,), 4), ((0,), 5)], (0,))

    def test_substitution(self):
        polys = reduce_profile(profile("subst")).polys
        out = apply_substitution(polys, 2, [[1, 1], [0, 1]])
        assert [(d, p.normalized()) for d, p in out] == [
            (4, Poly.monomial([1, 0])), (5, Poly.const(2, 1))]

    def test_identity_and_round_trip(self):
        polys = reduce_profile(profile("fractional")).polys
        assert apply_substitution(polys, 2, [[1, 0], [0, 1]]) == polys
        T = [[2, 1], [F(1, 3), 1]]
        Tinv = [[F(3, 5), F(-3, 5)], [F(-1, 5), F(6, 5)]]
        assert apply_substitution(apply_substitution(polys, 2, T), 2, Tinv) == polys

    def test_singular_substitution(self):
        with pytest.raises(SingularMatrix):
            apply_substitution(reduce_profile(profile("subst")).polys, 2, [[1, 1], [1, 1]])


class TestIndexSetEngine:
    def test_fractional_table(self):
        res = exponents_from_index_set(EX64)
        table = {pc.pair: (pc.status, pc.m, pc.d) for pc in res.contributions}
        assert table == {
            ((3, 0), 3): ("Counted", F(2, 3), 0),
            ((2, 0), 4): ("Skipped_NotFullDim", None, None),
            ((0, 1), 4): ("Counted", F(-1, 3), 0),
            ((1, 0), 5): ("Skipped_NotFullDim", None, None),
            ((0, 0), 6): ("Counted", F(-3), 0),
        }
        assert (res.Q0, res.d0) == (F(11, 3), 0)

    def test_after_substitution(self):
        res = exponents_from_index_set(IndexPairSet([((1,), 4), ((0,), 5)]))
        table = {pc.pair: (pc.m, pc.d, pc.rate) for pc in res.contributions}
        assert table == {((1,), 4): (0, 1, 4), ((0,), 5): (-1, 0, 4)}
        assert (res.Q0, res.d0) == (4, 1)

    def test_constant_only(self):
        res = exponents_from_index_set(IndexPairSet([((0,), 5)]))
        assert (res.Q0, res.d0) == (5, 0)

    def test_divergent_chart(self):
        # int_0^1 dx / x diverges for every r
        with pytest.raises(Divergent) as exc:
            exponents_from_index_set(IndexPairSet([((1,), 0)]))
        assert exc.value.pair == ((1,), 0)

    def test_charts_are_combined(self):
        res = exponents_from_charts([IndexPairSet([((1,), 4), ((0,), 5)]),
                                     IndexPairSet([((0,), 4)])])
        assert (res.Q0, res.d0, res.derivation) == (4, 1, Derivation.USER_CHART)


def test_combine_charts():
    assert combine_charts([(F(11, 3), 0), (3, 0)]) == (F(11, 3), 0)
    assert combine_charts([(4, 1), (4, 0)]) == (4, 1)
    assert combine_charts([(5, 0)]) == (5, 0)


def test_eigen_law():
    from weylexp.exponents import ExponentResult
    L = eigen_law(ExponentResult(F(11, 3), 0, Derivation.MONOMIAL_LP))
    assert (L.eigen_exponent, L.eigen_log_power) == (F(6, 11), 0)
    L = eigen_law(ExponentResult(F(2), 1, Derivation.SINGLE))
    assert L.eigen_str() == "lambda_k ~ k^(1) * (ln k)^(-1)"
    L = eigen_law(ExponentResult(F(5), 0, Derivation.TRIVIAL))
    assert L.eigen_str() == "lambda_k ~ k^(2/5)"
    assert L.eigen_exponent * L.counting_exponent == 1


@pytest.mark.parametrize("name", SYSTEM_CASES)
def test_catalog_bounds(name):
    c = CATALOG[name]
    p = profile(name, subst=True)
    res = compute_exponents(p, c.load().subst)
    assert (res.Q0, res.d0) == (c.Q0, c.d0)
    check_bounds(p, res)
    if p.w <= p.Q - 1:
        assert p.n <= max(p.w, p.Q - p.alphaX) <= res.Q0 <= p.Q - 1
        assert res.d0 <= p.v


@pytest.mark.parametrize("name", [n for n in SYSTEM_CASES
                                  if reduce_profile(profile(n)).kind == "Single"])
def test_single_agrees_with_lp(name):
    p = profile(name)
    closed = exponents_single(p, p.degenerate_vars[0])
    lp = exponents_from_index_set(profile_index_set(p))
    assert (closed.Q0, closed.d0) == (lp.Q0, lp.d0)


def catalog_index_sets():
    out = {"subst-chart": CATALOG["subst-chart"].load().charts[0]}
    for name in SYSTEM_CASES:
        c = CATALOG[name]
        out[name] = profile_index_set(profile(name), c.load().subst)
    return out


INDEX_SETS = catalog_index_sets()


@pytest.mark.parametrize("name", sorted(INDEX_SETS))
def test_cover_property(name):
    G = INDEX_SETS[name]
    rng = random.Random(name)
    polys = {p: G.polyhedron(p) for p in G.pairs}
    for _ in range(1000):
        y = [F(rng.randint(0, 60), rng.randint(1, 12)) for _ in range(G.N)]
        assert any(P.contains(y) for P in polys.values())


@settings(max_examples=100)
@given(st.sampled_from(sorted(INDEX_SETS)), st.data())
def test_rescaling_invariance(name, data):
    # constants were already dropped; rescaling the monomials leaves the pairs alone
    G = INDEX_SETS[name]
    polys = [(s, Poly.monomial(a, data.draw(st.integers(1, 9)))) for a, s in G.pairs]
    G2 = build_index_set(polys, G.N)
    assert exponents_from_index_set(G2).Q0 == exponents_from_index_set(G).Q0
