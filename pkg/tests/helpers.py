"""Shared builders and independent brute-force oracles.

The oracles here use only raw group arithmetic (add/neg/conjugate) so they
stay independent of the cone machinery they are used to check.
"""

from __future__ import annotations

import itertools
import random

from ordsplit.actions import FiniteTableAction
from ordsplit.cones import ExtensionalCone, FullCone, PreorderedGroup
from ordsplit.groups import CayleyGroup, CyclicGroup, DirectProduct, Group
from ordsplit.homs import enumerate_homomorphisms
from ordsplit.verdict import SaturationBudget, Window

SMALL_BUDGET = SaturationBudget(2, 5, Window(3, 6, 3))


def assert_state(verdict, state: str, msg: str = ""):
    assert verdict.state.value == state, f"{msg or 'verdict'}: got {verdict}"


def symmetric_cayley(n: int) -> CayleyGroup:
    perms = sorted(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}

    def comp(p, q):
        return tuple(p[q[i]] for i in range(n))

    table = tuple(tuple(idx[comp(p, q)] for q in perms) for p in perms)
    return CayleyGroup(table, idx[tuple(range(n))])


def klein_four() -> DirectProduct:
    return DirectProduct((CyclicGroup(2), CyclicGroup(2)))


# --- independent oracles --------------------------------------------------------


def oracle_cone_closure(G: Group, seed) -> frozenset:
    """Least subset containing seed and 0, closed under + and conjugation."""
    els = G.elements()
    S = {G.zero()} | set(seed)
    changed = True
    while changed:
        changed = False
        for g in els:
            for x in list(S):
                c = G.conjugate(g, x)
                if c not in S:
                    S.add(c)
                    changed = True
        for a in list(S):
            for b in list(S):
                c = G.add(a, b)
                if c not in S:
                    S.add(c)
                    changed = True
    return frozenset(S)


def oracle_is_closed(G: Group, S: frozenset) -> bool:
    if G.zero() not in S:
        return False
    for a in S:
        for b in S:
            if G.add(a, b) not in S:
                return False
    for g in G.elements():
        for a in S:
            if G.conjugate(g, a) not in S:
                return False
    return True


def oracle_is_compatible_set(carrier, S: frozenset, px: frozenset, pb: frozenset) -> bool:
    """Definitional test: S is a cone making all three structure maps monotone
    and reflecting the fibre order."""
    if not oracle_is_closed(carrier, S):
        return False
    xz = carrier.x_group.zero()
    bz = carrier.b_group.zero()
    for x in px:
        if (x, bz) not in S:
            return False
    for b in pb:
        if (xz, b) not in S:
            return False
    for (x, b) in S:
        if b not in pb:
            return False
        if b == bz and x not in px:
            return False
    return True


def oracle_all_compatible_cones(carrier, px: frozenset, pb: frozenset) -> set[frozenset]:
    """Every definitionally compatible cone, by closed-set search.

    Forced floor: kernel and section images; allowed ceiling: base part
    positive and fibre order reflected over 0.  All closed sets in between
    are exactly the compatible cones.
    """
    xz = carrier.x_group.zero()
    bz = carrier.b_group.zero()
    xs = carrier.x_group.elements()
    floor = {(x, bz) for x in px} | {(xz, b) for b in pb} | {carrier.zero()}
    ceiling = {
        (x, b)
        for x in xs
        for b in pb
        if not (b == bz and x not in px)
    }

    def saturate(S):
        S = set(S)
        changed = True
        while changed:
            changed = False
            for g in carrier.elements():
                for a in list(S):
                    c = carrier.conjugate(g, a)
                    if c not in S:
                        if c not in ceiling:
                            return None
                        S.add(c)
                        changed = True
            for a in list(S):
                for b in list(S):
                    c = carrier.add(a, b)
                    if c not in S:
                        if c not in ceiling:
                            return None
                        S.add(c)
                        changed = True
        return frozenset(S)

    base = saturate(floor)
    results: set[frozenset] = set()
    if base is None:
        return results

    def rec(S):
        if S in results:
            return
        results.add(S)
        for u in sorted(ceiling - S, key=repr):
            T = saturate(S | {u})
            if T is not None:
                rec(T)

    rec(base)
    for S in results:
        assert oracle_is_compatible_set(carrier, S, px, pb)
    return results


def oracle_automorphisms(G: Group) -> int:
    """Count additive bijections by filtering raw permutations (small groups)."""
    els = G.elements()
    count = 0
    for perm in itertools.permutations(els):
        table = dict(zip(els, perm))
        if table[G.zero()] != G.zero():
            continue
        if all(
            table[G.add(a, b)] == G.add(table[a], table[b]) for a in els for b in els
        ):
            count += 1
    return count


# --- random finite corpus -------------------------------------------------------


def _group_zoo():
    return [
        CyclicGroup(2),
        CyclicGroup(3),
        CyclicGroup(4),
        CyclicGroup(5),
        CyclicGroup(6),
        CyclicGroup(8),
        klein_four(),
        symmetric_cayley(3),
    ]


def random_finite_extension(rng: random.Random, max_carrier: int = 64):
    """A random finite split extension with random compatible-looking data."""
    zoo = _group_zoo()
    while True:
        X = rng.choice(zoo)
        B = rng.choice(zoo)
        if X.order() * B.order() <= max_carrier:
            break
    aut = _full_aut_group(X)
    homs = enumerate_homomorphisms(B, aut)
    h = rng.choice(homs)
    table = {b: aut.realize(h.apply(b)) for b in B.elements()}
    action = FiniteTableAction.from_homs(B, X, table)
    px = oracle_cone_closure(X, _random_seed_elements(rng, X))
    pb = oracle_cone_closure(B, _random_seed_elements(rng, B))
    x_pre = PreorderedGroup(X, ExtensionalCone(X, px))
    b_pre = PreorderedGroup(B, ExtensionalCone(B, pb))
    return x_pre, b_pre, action


def _full_aut_group(X: Group):
    from ordsplit.classifiers import FiniteAutGroup

    return FiniteAutGroup(PreorderedGroup(X, FullCone(X)))


def _random_seed_elements(rng: random.Random, G: Group):
    els = [x for x in G.elements() if x != G.zero()]
    k = rng.randint(0, min(2, len(els)))
    return rng.sample(els, k)
