"""
Isomorphism testing for small groupoids
"""
from __future__ import annotations

import logging
from collections import Counter
from itertools import permutations

from config import ISO_MAX_ARROWS
from errors import SizeCapError
from groupoid import Groupoid, pair_groupoid, product_groupoid, validate_functor
from vague import PullbackGroupoid, build_pullback
from verdict import CheckReport

LOG = logging.getLogger(__name__)


def _signature(g: Groupoid) -> tuple:
    """Counts that any isomorphism preserves."""
    hom = Counter((g.rng[xi], g.src[xi]) for xi in g.arrows)
    fibre_sizes = sorted(Counter(hom.values()).items())
    opens = sorted(len(b) for b in g.space.base)
    return g.n, len(g.units), tuple(fibre_sizes), tuple(opens)


def _homeomorphic_on(g: Groupoid, h: Groupoid, table: list[int]) -> bool:
    return all(frozenset(table[q] for q in g.space.base[p]) == h.space.base[table[p]] for p in g.arrows)


def find_isomorphism(g: Groupoid, h: Groupoid) -> list[int] | None:
    """An arrow bijection g → h respecting d, r, mul, inv and the base sets, or None."""
    for gr in (g, h):
        if gr.n > ISO_MAX_ARROWS:
            raise SizeCapError(f"isomorphism search is capped at {ISO_MAX_ARROWS} arrows, got {gr.n}")
    if _signature(g) != _signature(h):
        return None

    units, units2 = g.unit_list, h.unit_list
    others = [xi for xi in g.arrows if xi not in g.units]
    for image in permutations(units2):
        table = [-1] * g.n
        for x, y in zip(units, image):
            table[x] = y
        if not all(h.space.base[table[x]] >= {table[q] for q in g.space.base[x] if q in g.units} for x in units):
            continue
        found = _extend(g, h, table, others, 0, set(image))
        if found is not None:
            LOG.debug("isomorphism %s", found)
            return found
    return None


def _consistent(g: Groupoid, h: Groupoid, table: list[int], xi: int) -> bool:
    eta = table[xi]
    i = table[g.inv[xi]]
    if i >= 0 and h.inv[eta] != i:
        return False
    for (a, b), c in g.mul.items():
        if xi not in (a, b):
            continue
        ta, tb, tc = table[a], table[b], table[c]
        if ta >= 0 and tb >= 0 and tc >= 0 and h.mul.get((ta, tb)) != tc:
            return False
    return True


def _extend(g: Groupoid, h: Groupoid, table: list[int], todo: list[int], k: int, used: set[int]):
    if k == len(todo):
        if validate_functor(g, h, table) is None and _homeomorphic_on(g, h, table):
            return list(table)
        return None
    xi = todo[k]
    want_src, want_rng = table[g.src[xi]], table[g.rng[xi]]
    for eta in h.arrows:
        if eta in used or h.src[eta] != want_src or h.rng[eta] != want_rng:
            continue
        table[xi] = eta
        used.add(eta)
        if _consistent(g, h, table, xi):
            found = _extend(g, h, table, todo, k + 1, used)
            if found is not None:
                return found
        used.discard(eta)
        table[xi] = -1
    return None


def are_isomorphic(g: Groupoid, h: Groupoid) -> bool:
    return find_isomorphism(g, h) is not None


def myex_check(pb: PullbackGroupoid) -> CheckReport:
    """A group pulled back along A → {e} is G × (A × A)."""
    g = pb.base
    report = CheckReport('myex_iso')
    product_size = g.n * pb.aspace.n ** 2
    hyps = {'base is a group': len(g.units) == 1, 'within isomorphism cap': product_size <= ISO_MAX_ARROWS}
    report.gated('pullback_is_product', hyps,
                 lambda: (are_isomorphic(pb.realized, product_groupoid(g, pair_groupoid(pb.aspace))), None))
    return report


def furnal_check(g: Groupoid) -> CheckReport:
    """Pulling back along the identity of the unit space gives Ξ back."""
    report = CheckReport('furnal_iso')
    pb = build_pullback(g, g.unit_list, g.unit_space)
    report.expect('arrow_count', pb.realized.n == g.n, [pb.realized.n, g.n])
    report.gated('pullback_is_original', {'within isomorphism cap': g.n <= ISO_MAX_ARROWS},
                 lambda: (are_isomorphic(pb.realized, g), None))
    return report
