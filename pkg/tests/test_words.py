from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoidgrowth.catalog import catalog_presentation
from monoidgrowth.presentation import Presentation
from monoidgrowth.words import (
    BudgetExceededError,
    GcdNotUniqueError,
    HorizonExceededError,
    NotADivisorError,
    build_store,
)

from conftest import cached_store


# -- independent closure oracle (no union-find, no store machinery) ------


def oracle_classes(p: Presentation, n: int) -> list[frozenset]:
    """Congruence classes of length-n words via plain BFS flood fill."""
    rules = []
    for lhs, rhs in p.relations:
        rules.append((lhs, rhs))
        rules.append((rhs, lhs))
    todo = set(itertools.product(range(p.rank), repeat=n))
    classes = []
    while todo:
        start = todo.pop()
        comp = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for lhs, rhs in rules:
                m = len(lhs)
                for i in range(n - m + 1):
                    if w[i : i + m] == lhs:
                        w2 = w[:i] + rhs + w[i + m :]
                        if w2 not in comp:
                            comp.add(w2)
                            stack.append(w2)
        todo -= comp
        classes.append(frozenset(comp))
    return classes


def oracle_equal(p: Presentation, u, v) -> bool:
    if len(u) != len(v):
        return False
    for cls in oracle_classes(p, len(u)):
        if u in cls:
            return v in cls
    raise AssertionError


# -- enumeration ----------------------------------------------------------

A2_SPHERES = [1, 2, 4, 7, 12, 20, 33, 54, 88]
A2_BALLS = [1, 3, 7, 14, 26, 46, 79, 133, 221]


def test_a2_sphere_and_ball_sizes(a2_store):
    for n in range(9):
        assert a2_store.sphere_size(n) == A2_SPHERES[n]
        assert a2_store.ball_size(n) == A2_BALLS[n]


def test_a2_against_oracle():
    p = catalog_presentation("A2")
    store = cached_store("A2", 8)
    for n in range(6):
        oracle = oracle_classes(p, n)
        assert store.sphere_size(n) == len(oracle)
        # canonical representative is the lexicographic minimum of its class
        reps = {min(cls) for cls in oracle}
        assert {store.word_of(e) for e in store.sphere_ids(n)} == reps


def test_a2_sphere_recurrence(a2_store):
    c = [a2_store.sphere_size(n) for n in range(9)]
    for n in range(3, 9):
        assert c[n] == 2 * c[n - 1] - c[n - 3]


def test_free_monoid_ball(free2_store):
    assert free2_store.ball_size(2) == 7


def test_free_group_ball_sizes(fg2_store):
    # f(2f-1)^n - 1 over f - 1, here f = 2
    for n in range(6):
        assert fg2_store.ball_size(n) == 2 * 3**n - 1
    assert fg2_store.ball_size(1) == 5


def test_budget_cap():
    with pytest.raises(BudgetExceededError):
        build_store(catalog_presentation("A2"), 12, max_classes=100)


# -- normalize ------------------------------------------------------------


def test_normalize_examples(a2_store):
    p = a2_store.presentation
    assert a2_store.normalize(p.word_from_names("bab")) == p.word_from_names("aba")
    assert a2_store.normalize(p.word_from_names("ab")) == p.word_from_names("ab")
    assert a2_store.normalize(()) == ()


def test_normalize_beyond_horizon(a2_store):
    with pytest.raises(HorizonExceededError):
        a2_store.normalize(tuple([0] * 9))


def test_free_monoid_normalize_is_identity(free2_store):
    for w in itertools.product(range(2), repeat=4):
        assert free2_store.normalize(w) == w


def test_free_group_normalize_reduces(fg2_store):
    p = fg2_store.presentation
    w = p.word_from_names(["a", "A", "b"])
    assert fg2_store.normalize(w) == p.word_from_names(["b"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=0, max_size=5))
def test_normalize_idempotent_and_oracle_consistent(w):
    store = cached_store("A2", 8)
    word = tuple(w)
    canon = store.normalize(word)
    assert store.normalize(canon) == canon
    assert oracle_equal(store.presentation, word, canon)


# -- divisibility ---------------------------------------------------------


def elem(store, names: str) -> int:
    return store.element_of(store.presentation.word_from_names(names))


def test_left_divisors_of_delta(a2_store):
    u = elem(a2_store, "aba")
    expected = {elem(a2_store, w) for w in ("", "a", "b", "ab", "ba", "aba")}
    assert a2_store.left_divisors(u) == expected


def test_left_divisors_single_word_class(a2_store):
    u = elem(a2_store, "ab")
    assert a2_store.left_divisors(u) == {elem(a2_store, w) for w in ("", "a", "ab")}


def test_left_divisors_of_identity(a2_store):
    assert a2_store.left_divisors(0) == {0}


def test_gcd_examples(a2_store):
    assert a2_store.gcd_l({elem(a2_store, "aba"), elem(a2_store, "ab")}) == elem(
        a2_store, "ab"
    )
    assert a2_store.gcd_l({elem(a2_store, "a"), elem(a2_store, "b")}) == 0
    u = elem(a2_store, "ba")
    assert a2_store.gcd_l({u}) == u


def test_gcd_divides_all(a2_store):
    for u, v in [("aba", "abb"), ("ab", "ba"), ("aab", "aba")]:
        ui, vi = elem(a2_store, u), elem(a2_store, v)
        g = a2_store.gcd_l({ui, vi})
        common = a2_store.left_divisors(ui) & a2_store.left_divisors(vi)
        assert g in common
        # every common divisor left-divides the gcd
        assert all(d in a2_store.left_divisors(g) for d in common)


def test_gcd_not_unique_in_free_group(fg2_store):
    with pytest.raises(GcdNotUniqueError):
        fg2_store.gcd_l({elem(fg2_store, "a"), elem(fg2_store, "b")})


def test_left_quotient_examples(a2_store):
    assert a2_store.left_quotient(elem(a2_store, "a"), elem(a2_store, "aba")) == elem(
        a2_store, "ba"
    )
    u = elem(a2_store, "ab")
    assert a2_store.left_quotient(0, u) == u
    # bab = aba, so ab divides it with quotient a
    assert a2_store.left_quotient(elem(a2_store, "ab"), elem(a2_store, "bab")) == elem(
        a2_store, "a"
    )


def test_left_quotient_not_a_divisor(a2_store):
    with pytest.raises(NotADivisorError):
        a2_store.left_quotient(elem(a2_store, "b"), elem(a2_store, "aa"))


def test_common_right_multiple_delta(a2_store):
    a, b = elem(a2_store, "a"), elem(a2_store, "b")
    witness = a2_store.common_right_multiple(a, b, bound=2)
    assert witness == (elem(a2_store, "ab"), elem(a2_store, "ba"))
    left, right = witness
    assert a2_store.mult(left, a) == a2_store.mult(right, b) == elem(a2_store, "aba")


def test_common_right_multiple_absent_in_free_monoid(free2_store):
    assert free2_store.common_right_multiple(1, 2, bound=3) is None


def test_common_right_multiple_trivial(a2_store):
    u = elem(a2_store, "ab")
    assert a2_store.common_right_multiple(u, u, bound=2) == (0, 0)


# -- dead elements and structural invariants -------------------------------


def test_dead_elements_empty(a2_store, free2_store, fg2_store):
    assert a2_store.dead_elements(3) == set()
    assert free2_store.dead_elements(2) == set()
    assert fg2_store.dead_elements(2) == set()


def test_homogeneity_of_products(a2_store):
    ids = [0, 1, 2, elem(a2_store, "ab"), elem(a2_store, "aba")]
    for x in ids:
        for y in ids:
            if a2_store.length(x) + a2_store.length(y) <= a2_store.horizon:
                xy = a2_store.mult(x, y)
                assert a2_store.length(xy) == a2_store.length(x) + a2_store.length(y)


def test_product_table_cancellative(a2_store, b2_store):
    for store in (a2_store, b2_store):
        # right cancellation by a generator: a |-> a*g injective
        for g in range(store.rank):
            seen = {}
            for a in range(len(store.words)):
                t = store.product[a][g]
                if t != -1:
                    assert t not in seen
                    seen[t] = a
        # left cancellation: g |-> a*g injective per a
        for a in range(len(store.words)):
            targets = [t for t in store.product[a] if t != -1]
            assert len(targets) == len(set(targets))
