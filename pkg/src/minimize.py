"""
Greedy shrinking of failing action instances
"""
from __future__ import annotations

import logging
from typing import Callable

from action import Action, orbits, subaction
from errors import GroupoidDynamicsError

LOG = logging.getLogger(__name__)


def shrink_action(a: Action, still_fails: Callable[[Action], bool]) -> Action:
    """Drop whole orbits while `still_fails` keeps holding; returns a smallest such subaction.

    Removing an orbit leaves an invariant set, so every candidate is a valid
    action. Candidates that raise are skipped.
    """
    current = a
    changed = True
    while changed and current.n > 1:
        changed = False
        for o in orbits(current):
            keep = current.space.full - o
            if not keep:
                continue
            try:
                candidate = subaction(current, keep)
                failing = still_fails(candidate)
            except GroupoidDynamicsError as e:
                LOG.debug("skipping candidate without orbit %s: %s", sorted(o), e)
                continue
            if failing:
                LOG.debug("dropped orbit %s, %d points left", sorted(o), candidate.n)
                current = candidate
                changed = True
                break
    return current


def minimize_witness(a: Action, check: Callable[[Action], object], clause: str):
    """Shrink `a` while `clause` of `check(a)` stays violated.

    `check` returns a CheckReport. Returns (minimized action, its report).
    """
    def still_fails(candidate: Action) -> bool:
        c = check(candidate).clause(clause)
        return c is not None and c.status.value == 'violated'

    small = shrink_action(a, still_fails)
    return small, check(small)
