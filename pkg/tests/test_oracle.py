import itertools

import pytest

from cyclechain.chains import ChainSum, Element
from cyclechain.cycles import CycleSum
from cyclechain.oracle import (
    ComponentMultiset,
    Digraph,
    SearchSpace,
    closed_form_product,
    component_keys,
    decompose,
    digraph_from_components,
    digraph_from_element,
    exhaustive_divide,
    mod2,
    oracle_mul,
    product,
    weak_components,
)

from conftest import rand_element

C = CycleSum.single


def L(*ds):
    return ChainSum(ds)


def cm(cycles=None, chains=None):
    return ComponentMultiset(cycles or {}, chains or {})


class TestProduct:
    def test_looped_tree_times_mixed(self):
        # a 4-vertex transformation (3-chain into a loop, plus a branch)
        # times a 2-cycle with a tail plus a 2-chain: 20 vertices falling
        # into one 12-vertex class, two 3-vertex and two 1-vertex classes
        A = Digraph(4, (0, 0, 1, 1))
        B = Digraph(5, (1, 0, 0, None, 3))
        AB = product(A, B)
        assert AB.n == 20
        counts = sorted(component_keys(AB).values())
        assert counts == [1, 2, 2]
        sizes = sorted(len(c) for c in weak_components(AB))
        assert sizes == [1, 1, 3, 3, 12]
        # reduced mod 2, only the 12-vertex class survives
        keys = component_keys(AB)
        odd = {k for k, v in keys.items() if v % 2}
        assert len(odd) == 1

    def test_identity_cycle(self, rng):
        for _ in range(30):
            x = rand_element(rng)
            g = digraph_from_element(x)
            pg = product(Digraph.cycle(1), g)
            assert component_keys(pg) == component_keys(g)

    def test_even_square(self):
        out = decompose(product(Digraph.cycle(2), Digraph.cycle(2)))
        assert out == cm({2: 2})

    def test_size_and_injectivity(self, rng):
        for _ in range(50):
            a = rand_element(rng)
            b = rand_element(rng)
            ga, gb = digraph_from_element(a), digraph_from_element(b)
            gp = product(ga, gb)
            assert gp.n == ga.n * gb.n
            decompose(gp)  # raises if injectivity broke


class TestDecompose:
    def test_disjoint_cycle_and_chain(self):
        g = Digraph.disjoint_union([Digraph.cycle(3), Digraph.chain(2)])
        assert decompose(g) == cm({3: 1}, {2: 1})

    def test_chain_product(self):
        out = decompose(product(Digraph.chain(2), Digraph.chain(3)))
        assert out == cm(chains={2: 2, 1: 2})

    def test_chain_times_cycle(self):
        out = decompose(product(Digraph.chain(2), Digraph.cycle(3)))
        assert out == cm(chains={2: 3})

    def test_non_injective_named(self):
        g = Digraph(3, (2, 2, None))
        with pytest.raises(ValueError) as err:
            decompose(g)
        assert "vertex 2" in str(err.value)

    def test_empty(self):
        assert decompose(Digraph.empty()) == cm()


class TestClosedForm:
    def test_even_cycles(self):
        assert closed_form_product(cm({6: 1}), cm({4: 1})) == cm({12: 2})

    def test_equal_chains(self):
        assert closed_form_product(cm(chains={3: 1}), cm(chains={3: 1})) == cm(
            chains={3: 1, 2: 2, 1: 2}
        )

    def test_chain_one_times_chain(self):
        for d in range(1, 7):
            got = closed_form_product(cm(chains={1: 1}), cm(chains={d: 1}))
            explicit = decompose(product(Digraph.chain(1), Digraph.chain(d)))
            assert got == explicit == cm(chains={1: d})

    def test_matches_explicit_products_exhaustively(self):
        singles = [("C", d) for d in range(1, 13)] + [("L", d) for d in range(1, 13)]
        for (ka, da), (kb, db) in itertools.combinations_with_replacement(singles, 2):
            a = cm({da: 1}) if ka == "C" else cm(chains={da: 1})
            b = cm({db: 1}) if kb == "C" else cm(chains={db: 1})
            got = closed_form_product(a, b)
            explicit = decompose(
                product(digraph_from_components(a), digraph_from_components(b))
            )
            assert got == explicit, (ka, da, kb, db)

    def test_multiplicities_multiply(self):
        got = closed_form_product(cm({2: 2}), cm({2: 3}))
        assert got == cm({2: 12})


class TestMod2:
    def test_even_multiplicity_drops(self):
        assert mod2(cm({2: 2})) == Element.zero()

    def test_odd_multiplicity_stays(self):
        assert mod2(cm(chains={2: 3})) == Element(chains=L(2))

    def test_mixed(self):
        got = mod2(cm({12: 2, 3: 1}, {2: 3, 1: 2}))
        assert got == Element(chains=L(2), cycles=C(3))

    def test_oracle_mul_matches_library(self, rng):
        for _ in range(300):
            a = rand_element(rng)
            b = rand_element(rng)
            assert oracle_mul(a, b) == a * b


class TestExhaustiveDivide:
    def test_identity(self):
        space = SearchSpace(k=3, max_level=0)
        got = exhaustive_divide(Element.one(), Element.from_cycles(C(3)), space)
        assert got == frozenset({Element.from_cycles(C(3))})

    def test_all_solutions_verified(self, rng):
        space = SearchSpace(k=15, max_level=1, max_chain=3)
        for _ in range(20):
            a = rand_element(rng, parts=(1, 3, 5, 15), levels=1, max_chain=3)
            b = rand_element(rng, parts=(1, 3, 5, 15), levels=1, max_chain=3)
            for x in exhaustive_divide(a, b, space):
                assert a * x == b

    def test_finds_constructed_solutions(self, rng):
        space = SearchSpace(k=15, max_level=1, max_chain=3)
        for _ in range(40):
            a = rand_element(rng, parts=(1, 3, 5, 15), levels=1, max_chain=3)
            x = rand_element(rng, parts=(1, 3, 5, 15), levels=1, max_chain=3)
            b = a * x
            assert x in exhaustive_divide(a, b, space)

    def test_window_too_large(self):
        with pytest.raises(ValueError):
            exhaustive_divide(
                Element.one(), Element.one(), SearchSpace(k=1, max_level=30)
            )

    def test_divisor_outside_window(self):
        space = SearchSpace(k=3, max_level=0)
        with pytest.raises(ValueError):
            exhaustive_divide(
                Element.from_cycles(C(7)), Element.one(), space
            )

    def test_target_outside_window_is_empty(self):
        space = SearchSpace(k=3, max_level=0)
        got = exhaustive_divide(
            Element.from_cycles(C(3)), Element.from_cycles(C(7)), space
        )
        assert got == frozenset()
