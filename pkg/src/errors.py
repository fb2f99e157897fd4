"""
Error types
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Violation:
    """First failing axiom of a validator, with the tuple that breaks it."""
    axiom: str
    witness: Any = None

    def to_dict(self) -> dict:
        return {'axiom': self.axiom, 'witness': _plain(self.witness)}

    def __str__(self) -> str:
        return f"{self.axiom} violated at {self.witness!r}"


def _plain(w):
    if isinstance(w, (set, frozenset)):
        return sorted(_plain(x) for x in w)
    if isinstance(w, (list, tuple)):
        return [_plain(x) for x in w]
    if isinstance(w, dict):
        return {str(k): _plain(v) for k, v in w.items()}
    return w


class GroupoidDynamicsError(Exception):
    """Base class for everything the toolkit raises."""


class UnknownPointError(GroupoidDynamicsError):
    pass


class NotAUnitError(GroupoidDynamicsError):
    pass


class CarrierMismatchError(GroupoidDynamicsError):
    pass


class EndpointMismatchError(GroupoidDynamicsError):
    pass


class NotWideError(GroupoidDynamicsError):
    pass


class NotBundleError(GroupoidDynamicsError):
    pass


class HypothesisError(GroupoidDynamicsError):
    """An operation was called outside its precondition."""


class InvalidInstanceError(GroupoidDynamicsError):
    def __init__(self, what: str, violation: Violation | None = None):
        self.violation = violation
        msg = what if violation is None else f"{what}: {violation}"
        super().__init__(msg)


class SizeCapError(GroupoidDynamicsError):
    pass


class InfeasibleSpecError(GroupoidDynamicsError):
    pass


class KindMismatchError(GroupoidDynamicsError):
    pass


class SerializationError(GroupoidDynamicsError):
    pass
