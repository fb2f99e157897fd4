"""
Three-valued check reports shared by every theorem check
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Mapping

from errors import _plain


class Status(str, Enum):
    HOLDS = 'holds'
    VIOLATED = 'violated'
    NOT_APPLICABLE = 'not_applicable'


class Mode(str, Enum):
    FAITHFUL = 'faithful'
    MODEL_LEVEL = 'model_level'


@dataclass(frozen=True)
class Clause:
    name: str
    status: Status
    witness: Any = None
    hypotheses: tuple[tuple[str, bool], ...] = ()
    mode: Mode = Mode.FAITHFUL

    def to_dict(self) -> dict:
        d = {'name': self.name, 'status': self.status.value, 'mode': self.mode.value}
        if self.hypotheses:
            d['hypotheses'] = [[h, met] for h, met in self.hypotheses]
        if self.witness is not None:
            d['witness'] = _plain(self.witness)
        return d


@dataclass
class CheckReport:
    """Clauses of one check, in evaluation order.

    A clause whose hypotheses are unmet is recorded as not_applicable and is
    never evaluated. Clauses evaluated under a restricted bornology carry
    mode model_level; the harness only fails on faithful violations.
    """
    check: str
    clauses: list[Clause] = field(default_factory=list)
    bornology: dict | None = None

    def expect(self, name: str, ok: bool, witness: Any = None,
               mode: Mode = Mode.FAITHFUL, hypotheses: Iterable[tuple[str, bool]] = ()) -> bool:
        if ok:
            clause = Clause(name, Status.HOLDS, None, tuple(hypotheses), mode)
        else:
            clause = Clause(name, Status.VIOLATED, name if witness is None else witness,
                            tuple(hypotheses), mode)
        self.clauses.append(clause)
        return ok

    def expect_all(self, name: str, items: Iterable[Any], predicate: Callable[[Any], bool],
                   mode: Mode = Mode.FAITHFUL, hypotheses: Iterable[tuple[str, bool]] = ()) -> bool:
        for item in items:
            if not predicate(item):
                return self.expect(name, False, item, mode, hypotheses)
        return self.expect(name, True, mode=mode, hypotheses=hypotheses)

    def skip(self, name: str, hypotheses: Iterable[tuple[str, bool]], mode: Mode = Mode.FAITHFUL):
        self.clauses.append(Clause(name, Status.NOT_APPLICABLE, None, tuple(hypotheses), mode))

    def gated(self, name: str, hypotheses: Mapping[str, bool], evaluate: Callable[[], tuple[bool, Any]],
              mode: Mode = Mode.FAITHFUL) -> bool | None:
        """Evaluate `evaluate` only when every hypothesis is met."""
        hyps = tuple((h, bool(met)) for h, met in hypotheses.items())
        if not all(met for _, met in hyps):
            self.skip(name, hyps, mode)
            return None
        ok, witness = evaluate()
        return self.expect(name, ok, witness, mode, hyps)

    def extend(self, other: 'CheckReport', prefix: str = ''):
        for c in other.clauses:
            self.clauses.append(Clause(prefix + c.name, c.status, c.witness, c.hypotheses, c.mode))

    def select(self, prefix: str) -> 'CheckReport':
        picked = [c for c in self.clauses if c.name == prefix or c.name.startswith(prefix + '.')]
        return CheckReport(prefix, picked, self.bornology)

    @property
    def status(self) -> Status:
        if any(c.status is Status.VIOLATED for c in self.clauses):
            return Status.VIOLATED
        if any(c.status is Status.HOLDS for c in self.clauses):
            return Status.HOLDS
        return Status.NOT_APPLICABLE

    @property
    def mode(self) -> Mode:
        if any(c.mode is Mode.MODEL_LEVEL for c in self.clauses):
            return Mode.MODEL_LEVEL
        return Mode.FAITHFUL

    @property
    def holds(self) -> bool:
        return self.status is not Status.VIOLATED

    def failures(self, faithful_only: bool = False) -> list[Clause]:
        return [c for c in self.clauses if c.status is Status.VIOLATED
                and not (faithful_only and c.mode is Mode.MODEL_LEVEL)]

    def clause(self, name: str) -> Clause | None:
        for c in self.clauses:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        d = {
            'check': self.check,
            'status': self.status.value,
            'mode': self.mode.value,
            'clauses': [c.to_dict() for c in self.clauses],
        }
        if self.bornology is not None:
            d['bornology'] = self.bornology
        return d


def first_failing(items: Iterable[Any], predicate: Callable[[Any], bool]) -> tuple[bool, Any]:
    """(True, None) when every item passes, else (False, first failing item)."""
    for x in items:
        if not predicate(x):
            return False, x
    return True, None
