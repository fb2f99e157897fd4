"""
Theorem verification driver: one entry per theorem, a verdict per instance,
and seeded suites over generated instances
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from action import Action, ActionMorphism, label_sweep, recurrence_set_bundle_formula, self_action_formula_check, \
    translation_openness_check
from actor import (Actor, ActorOfActions, commut_check, enfin_check, image_saturation_check, jnitzel_transport,
                   lemma_constant_check, liema_sweep, miraj_check, saspermam_check, structure_sweep,
                   transflim_check)
from config import DEFAULT_COUNT, DEFAULT_SEED, ISO_MAX_ARROWS, SUITE_WORKERS, SWEEP_CUTOFF
from dynamics import audit_implications, baseline_check, flacara_check
from errors import (GroupoidDynamicsError, HypothesisError, InfeasibleSpecError, KindMismatchError, SizeCapError,
                    _plain)
from fintop import Bornology
from generators import InstanceGenerator
from groupoid import Groupoid, recognize
from init import __version__
from isomorphism import furnal_check, myex_check
from minimize import minimize_witness
from vague import (GVMOfActions, PullbackAction, PullbackGroupoid, VagueBornologies, inzbor_check,
                   prop_caciu_check, prop_rollar_check, pullback_proper_check, saex_identity_check,
                   thm_both_sweep, thm_color_check, transport_profile)
from verdict import CheckReport, Clause, Mode, Status

LOG = logging.getLogger(__name__)


class TheoremId(str, Enum):
    LABEL = 'label'
    INZBOR = 'inzbor'
    BOTH = 'both'
    STIFT = 'stift'
    SECURINTA = 'securinta'
    COLOR = 'color'
    SECINTA = 'secinta'
    GARBANZOS = 'garbanzos'
    GOGONATA = 'gogonata'
    ROLAR = 'rolar'
    ROLLAR = 'rollar'
    CACIU = 'caciu'
    LIEMA = 'liema'
    JNITZEL = 'jnitzel'
    SENTINTA = 'sentinta'
    SENTINTAA = 'sentintaa'
    SIAIA = 'siaia'
    SIAIA2 = 'siaia2'
    TRANSFLIM = 'transflim'
    SASPERMAM = 'saspermam'
    CONSTANT = 'constant'
    MIRAJ = 'miraj'
    IMAGE = 'image'
    STRUCTURE = 'structure'
    ENFIN = 'enfin'
    PROSTIE = 'prostie'
    FLACARA = 'flacara'
    CAOFI = 'caofi'
    JOSER = 'joser'
    VASNATOARE_FORMULA = 'vasnatoare_formula'
    VALTOARE_FORMULA = 'valtoare_formula'
    MYEX_ISO = 'myex_iso'
    SAEX_IDENTITY = 'saex_identity'
    FURNAL_ISO = 'furnal_iso'
    COMMUT = 'commut'
    PRECISELY = 'precisely'

    @classmethod
    def parse(cls, text: str) -> 'TheoremId':
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise KindMismatchError(f"unknown theorem {text!r}") from None


def instance_kind(obj) -> str:
    if isinstance(obj, Groupoid):
        return 'groupoid'
    if isinstance(obj, Action):
        return 'action'
    if isinstance(obj, ActionMorphism):
        return 'action_morphism'
    if isinstance(obj, PullbackGroupoid):
        return 'pullback'
    if isinstance(obj, PullbackAction):
        return 'pullback_action'
    if isinstance(obj, GVMOfActions):
        return 'gvm_action'
    if isinstance(obj, Actor):
        return 'actor'
    if isinstance(obj, ActorOfActions):
        return 'actor_action'
    if isinstance(obj, tuple) and len(obj) == 2:
        return 'composable_pair'
    return type(obj).__name__


@dataclass
class VerifyOptions:
    """Seed for sampled sweeps and optional restricted bornologies.

    `arrows` and `arrows_prime` bound arrows of the source and target
    groupoids, `points` bounds subsets of Σ and `aspace` bounds A.
    Unset bornologies are all-subsets.
    """
    seed: int = 0
    arrows: Bornology | None = None
    arrows_prime: Bornology | None = None
    points: Bornology | None = None
    aspace: Bornology | None = None
    minimize: bool = True

    @property
    def restricted(self) -> bool:
        return any(b is not None and not b.is_all for b in (self.arrows, self.arrows_prime, self.points, self.aspace))


@dataclass
class Verdict:
    theorem: TheoremId
    status: Status
    hypotheses: list[tuple[str, bool]]
    witness: Any = None
    bornology: dict | None = None
    mode: Mode = Mode.FAITHFUL
    exhaustive: bool = True
    clauses: list[Clause] = field(default_factory=list)
    minimized: dict | None = None

    @classmethod
    def from_report(cls, theorem: TheoremId, report: CheckReport, exhaustive: bool = True) -> 'Verdict':
        met: dict[str, bool] = {}
        for c in report.clauses:
            for name, ok in c.hypotheses:
                met[name] = met.get(name, True) and ok
        failed = report.failures()
        witness = {'clause': failed[0].name, 'witness': _plain(failed[0].witness)} if failed else None
        return cls(theorem, report.status, list(met.items()), witness, report.bornology, report.mode,
                   exhaustive, list(report.clauses))

    @property
    def faithful_violation(self) -> bool:
        return any(c.status is Status.VIOLATED and c.mode is Mode.FAITHFUL for c in self.clauses)

    def to_dict(self) -> dict:
        d = {
            'theorem': self.theorem.value,
            'status': self.status.value,
            'mode': self.mode.value,
            'exhaustive': self.exhaustive,
            'hypotheses': [[h, ok] for h, ok in self.hypotheses],
            'clauses': [c.to_dict() for c in self.clauses],
        }
        if self.witness is not None:
            d['witness'] = self.witness
        if self.bornology is not None:
            d['bornology'] = self.bornology
        if self.minimized is not None:
            d['minimized'] = self.minimized
        return d


# =============================================================================
# Checks per theorem
# =============================================================================
def _vague_bornologies(opts: VerifyOptions) -> VagueBornologies:
    return VagueBornologies(arr=opts.arrows, arr2=opts.arrows_prime, a=opts.aspace)


def _actor_of(inst) -> Actor:
    return inst.actor if isinstance(inst, ActorOfActions) else inst


def _miraj(m: ActionMorphism, check: Callable[[ActionMorphism], CheckReport], name: str) -> CheckReport:
    try:
        return check(m)
    except HypothesisError as e:
        LOG.info("%s not applicable: %s", name, e)
        report = CheckReport(name)
        report.skip('round_trips' if name == 'miraj' else 'image_is_saturation',
                    [('unit restriction a homeomorphism', False)])
        return report


def _bundle_formula(a: Action, opts: VerifyOptions) -> CheckReport:
    report = CheckReport('vasnatoare_formula')
    report.gated('fibrewise_union', {'group bundle': recognize(a.gpd).is_group_bundle},
                 lambda: (recurrence_set_bundle_formula(a, opts.seed), None))
    return report


def _self_action_formula(g: Groupoid, opts: VerifyOptions) -> CheckReport:
    report = CheckReport('valtoare_formula')
    report.expect('self_action_formula', self_action_formula_check(g, opts.seed))
    return report


def _saspermam(pair, opts: VerifyOptions) -> CheckReport:
    first, second = pair
    if not (isinstance(first, ActorOfActions) and isinstance(second, ActorOfActions)):
        raise KindMismatchError("saspermam takes a composable pair of algebraic morphisms of actions")
    return saspermam_check(second, first)


@dataclass(frozen=True)
class Entry:
    kinds: tuple[str, ...]
    run: Callable[[Any, VerifyOptions], CheckReport]
    make: Callable[[InstanceGenerator, bool], Any]
    # points swept by (M, N) pairs, None when the check does not sweep
    swept: Callable[[Any], int] | None = None
    bornologies: bool = False


def _gvm_make(gen: InstanceGenerator, steer: bool):
    return gen.gvm_action('equality' if steer else None)


def _actor_make(gen: InstanceGenerator, steer: bool):
    return gen.actor_action('equality' if steer else None)


def _topologized_actor(gen: InstanceGenerator, steer: bool):
    if steer:
        gen.topology = 'random_valid'
    return gen.actor_action('equality' if steer else None).actor


THEOREMS: dict[TheoremId, Entry] = {
    TheoremId.LABEL: Entry(
        ('action_morphism',), lambda m, o: label_sweep(m, o.seed),
        lambda gen, steer: gen.morphism(gen.rng.choice(('identity', 'iso')) if steer else None),
        swept=lambda m: m.source.n),
    TheoremId.INZBOR: Entry(
        ('pullback_action',), lambda pa, o: inzbor_check(pa, o.seed),
        lambda gen, steer: gen.pullback_action(), swept=lambda pa: pa.source.n),
    TheoremId.BOTH: Entry(
        ('gvm_action',), lambda va, o: thm_both_sweep(va, o.seed).select('both'), _gvm_make,
        swept=lambda va: va.theta.n),
    TheoremId.STIFT: Entry(
        ('gvm_action',), lambda va, o: thm_both_sweep(va, o.seed).select('stift'), _gvm_make,
        swept=lambda va: va.theta.n),
    TheoremId.SECURINTA: Entry(
        ('gvm_action',), lambda va, o: transport_profile(va, _vague_bornologies(o)).select('securinta'), _gvm_make),
    TheoremId.COLOR: Entry(('gvm_action',), lambda va, o: thm_color_check(va), _gvm_make),
    TheoremId.SECINTA: Entry(
        ('gvm_action',), lambda va, o: transport_profile(va, _vague_bornologies(o)).select('secinta'), _gvm_make),
    TheoremId.GARBANZOS: Entry(
        ('gvm_action',), lambda va, o: transport_profile(va, _vague_bornologies(o)).select('garbanzos'), _gvm_make),
    TheoremId.GOGONATA: Entry(
        ('gvm_action',), lambda va, o: transport_profile(va, _vague_bornologies(o)).select('gogonata'), _gvm_make,
        bornologies=True),
    TheoremId.ROLAR: Entry(
        ('gvm_action',), lambda va, o: transport_profile(va, _vague_bornologies(o)).select('rolar'), _gvm_make,
        bornologies=True),
    TheoremId.ROLLAR: Entry(
        ('gvm_action',), lambda va, o: prop_rollar_check(va, _vague_bornologies(o)), _gvm_make, bornologies=True),
    TheoremId.CACIU: Entry(
        ('gvm_action',), lambda va, o: prop_caciu_check(va, _vague_bornologies(o)), _gvm_make, bornologies=True),
    TheoremId.LIEMA: Entry(
        ('actor_action',), lambda pa, o: liema_sweep(pa, o.seed), _actor_make, swept=lambda pa: pa.theta.n),
    TheoremId.JNITZEL: Entry(
        ('actor_action',), lambda pa, o: jnitzel_transport(pa, o.arrows, o.arrows_prime).select('jnitzel'),
        _actor_make),
    TheoremId.SENTINTA: Entry(
        ('actor_action',), lambda pa, o: jnitzel_transport(pa, o.arrows, o.arrows_prime).select('sentinta'),
        _actor_make),
    TheoremId.SENTINTAA: Entry(
        ('actor_action',), lambda pa, o: jnitzel_transport(pa, o.arrows, o.arrows_prime).select('sentintaa'),
        _actor_make),
    TheoremId.SIAIA: Entry(
        ('actor_action',), lambda pa, o: jnitzel_transport(pa, o.arrows, o.arrows_prime).select('siaia'),
        _actor_make, bornologies=True),
    TheoremId.SIAIA2: Entry(
        ('actor_action',), lambda pa, o: jnitzel_transport(pa, o.arrows, o.arrows_prime).select('siaia2'),
        _actor_make, bornologies=True),
    TheoremId.TRANSFLIM: Entry(
        ('actor_action',), lambda pa, o: transflim_check(pa, o.arrows, o.arrows_prime), _actor_make,
        bornologies=True),
    TheoremId.SASPERMAM: Entry(
        ('composable_pair',), _saspermam,
        lambda gen, steer: gen.composable_actor_actions()),
    TheoremId.CONSTANT: Entry(
        ('actor_action', 'actor'),
        lambda inst, o: lemma_constant_check(_actor_of(inst), inst if isinstance(inst, ActorOfActions) else None),
        _actor_make),
    TheoremId.MIRAJ: Entry(
        ('action_morphism',), lambda m, o: _miraj(m, miraj_check, 'miraj'),
        lambda gen, steer: gen.morphism()),
    TheoremId.IMAGE: Entry(
        ('action_morphism',), lambda m, o: _miraj(m, image_saturation_check, 'image'),
        lambda gen, steer: gen.morphism()),
    TheoremId.STRUCTURE: Entry(
        ('actor_action', 'actor'),
        lambda inst, o: structure_sweep(_actor_of(inst), inst if isinstance(inst, ActorOfActions) else None),
        _actor_make),
    TheoremId.ENFIN: Entry(
        ('actor', 'actor_action'), lambda inst, o: enfin_check(_actor_of(inst)), _topologized_actor),
    TheoremId.PROSTIE: Entry(('action',), lambda a, o: audit_implications(a), lambda gen, steer: gen.action()),
    TheoremId.FLACARA: Entry(
        ('action',), lambda a, o: flacara_check(a, o.arrows, o.points), lambda gen, steer: gen.action(),
        bornologies=True),
    TheoremId.CAOFI: Entry(
        ('action',), lambda a, o: translation_openness_check(a), lambda gen, steer: gen.action()),
    TheoremId.JOSER: Entry(
        ('pullback',), lambda pb, o: pullback_proper_check(pb, o.aspace, o.points, o.arrows),
        lambda gen, steer: gen.pullback(), bornologies=True),
    TheoremId.VASNATOARE_FORMULA: Entry(
        ('action',), _bundle_formula, lambda gen, steer: gen.bundle_action(), swept=lambda a: a.n),
    TheoremId.VALTOARE_FORMULA: Entry(
        ('groupoid',), _self_action_formula, lambda gen, steer: gen.groupoid(), swept=lambda g: g.n),
    TheoremId.MYEX_ISO: Entry(('pullback',), lambda pb, o: myex_check(pb), lambda gen, steer: gen.group_pullback()),
    TheoremId.SAEX_IDENTITY: Entry(
        ('pullback_action',), lambda pa, o: saex_identity_check(pa),
        lambda gen, steer: gen.pullback_action(canonical=True)),
    TheoremId.FURNAL_ISO: Entry(
        ('groupoid',), lambda g, o: furnal_check(g), lambda gen, steer: gen.small_groupoid(ISO_MAX_ARROWS)),
    TheoremId.COMMUT: Entry(('actor', 'actor_action'), lambda inst, o: commut_check(_actor_of(inst)), _actor_make),
    TheoremId.PRECISELY: Entry(
        ('action',), lambda a, o: baseline_check(a, [o.arrows] if o.arrows is not None else []),
        lambda gen, steer: gen.action(), bornologies=True),
}


# =============================================================================
# Verify
# =============================================================================
def verify(theorem: TheoremId | str, instance, opts: VerifyOptions | None = None) -> Verdict:
    """Run the check of `theorem` on `instance`; deterministic in opts.seed."""
    theorem = TheoremId.parse(theorem) if isinstance(theorem, str) else theorem
    opts = opts or VerifyOptions()
    entry = THEOREMS[theorem]
    kind = instance_kind(instance)
    if kind not in entry.kinds:
        raise KindMismatchError(f"{theorem.value} takes {' or '.join(entry.kinds)}, got {kind}")
    report = entry.run(instance, opts)
    exhaustive = entry.swept is None or entry.swept(instance) <= SWEEP_CUTOFF
    verdict = Verdict.from_report(theorem, report, exhaustive)
    LOG.debug("%s: %s (%s)", theorem.value, verdict.status.value, verdict.mode.value)

    if verdict.faithful_violation and kind == 'action' and opts.minimize and not opts.restricted:
        verdict.minimized = _minimized(theorem, instance, verdict)
    return verdict


def _minimized(theorem: TheoremId, a: Action, verdict: Verdict) -> dict | None:
    clause = next(c.name for c in verdict.clauses if c.status is Status.VIOLATED)
    entry = THEOREMS[theorem]
    try:
        small, report = minimize_witness(a, lambda x: entry.run(x, VerifyOptions(minimize=False)), clause)
    except GroupoidDynamicsError as e:
        LOG.warning("minimization of %s failed: %s", theorem.value, e)
        return None
    failed = report.clause(clause)
    LOG.info("%s witness shrunk from %d to %d points", theorem.value, a.n, small.n)
    return {'clause': clause, 'points': small.n, 'arrows': small.gpd.n,
            'witness': _plain(failed.witness) if failed is not None else None}


# =============================================================================
# Suite
# =============================================================================
def cell_seed(seed: int, theorem: TheoremId, index: int) -> int:
    return random.Random(f"{seed}/{theorem.value}/{index}").getrandbits(64)


def _cell_options(entry: Entry, inst, gen: InstanceGenerator, seed: int, restricted: bool) -> VerifyOptions:
    opts = VerifyOptions(seed=seed)
    if not (restricted and entry.bornologies):
        return opts
    if isinstance(inst, Action):
        opts.arrows = gen.bornology(inst.gpd.space, True)
        opts.points = gen.bornology(inst.space, True)
    elif isinstance(inst, GVMOfActions):
        opts.arrows = gen.bornology(inst.theta.gpd.space, True)
        opts.arrows_prime = gen.bornology(inst.theta2.gpd.space, True)
        opts.aspace = gen.bornology(inst.gvm.pb.aspace, True)
    elif isinstance(inst, ActorOfActions):
        opts.arrows = gen.bornology(inst.theta.gpd.space, True)
        opts.arrows_prime = gen.bornology(inst.theta2.gpd.space, True)
    elif isinstance(inst, PullbackGroupoid):
        opts.arrows = gen.bornology(inst.base.space, True)
        opts.points = gen.bornology(inst.base.unit_space, True)
        opts.aspace = gen.bornology(inst.aspace, True)
    return opts


def run_cell(theorem: TheoremId, index: int, seed: int, restricted_every: int = 4) -> dict:
    """One (theorem, instance) cell; never raises for generator shortfalls."""
    entry = THEOREMS[theorem]
    s = cell_seed(seed, theorem, index)
    gen = InstanceGenerator(s)
    out = {'theorem': theorem.value, 'index': index, 'seed': s}
    try:
        inst = entry.make(gen, index % 2 == 0)
        restricted = restricted_every > 0 and index % restricted_every == restricted_every - 1
        verdict = verify(theorem, inst, _cell_options(entry, inst, gen, s, restricted))
    except (InfeasibleSpecError, SizeCapError) as e:
        LOG.debug("cell %s/%d skipped: %s", theorem.value, index, e)
        out['skipped'] = str(e)
        return out
    except GroupoidDynamicsError as e:
        LOG.error("cell %s/%d failed: %s", theorem.value, index, e)
        out['error'] = f"{type(e).__name__}: {e}"
        return out
    out['verdict'] = verdict.to_dict()
    out['faithful_violation'] = verdict.faithful_violation
    return out


def _run_cell_args(args) -> dict:
    return run_cell(*args)


def run_suite(seed: int = DEFAULT_SEED, count: int = DEFAULT_COUNT, theorems=None,
              workers: int = SUITE_WORKERS) -> dict:
    """Aggregate verdict counts per theorem over `count` generated instances each."""
    if count < 1:
        raise InfeasibleSpecError("count must be at least 1")
    selected = list(TheoremId) if not theorems else [TheoremId.parse(t) if isinstance(t, str) else t
                                                      for t in theorems]
    cells = [(t, i, seed) for t in selected for i in range(count)]
    LOG.info("suite: %d theorems, %d cells, %d workers", len(selected), len(cells), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell_args, cells, chunksize=8))
    else:
        results = [_run_cell_args(c) for c in cells]
    order = {t.value: k for k, t in enumerate(TheoremId)}
    results.sort(key=lambda r: (order[r['theorem']], r['index']))

    summary = {t.value: {'holds': 0, 'violated': 0, 'not_applicable': 0, 'model_level_violated': 0,
                         'skipped': 0, 'errors': 0} for t in selected}
    violations = []
    for r in results:
        row = summary[r['theorem']]
        if 'skipped' in r:
            row['skipped'] += 1
            continue
        if 'error' in r:
            row['errors'] += 1
            violations.append(r)
            continue
        status = r['verdict']['status']
        if r['faithful_violation']:
            row['violated'] += 1
            violations.append(r)
        elif status == Status.VIOLATED.value:
            row['model_level_violated'] += 1
        else:
            row[status] += 1
    return {
        'version': __version__,
        'seed': seed,
        'count': count,
        'theorems': summary,
        'violations': violations,
        'ok': not violations,
    }


# =============================================================================
# Coverage
# =============================================================================
def coverage(catalog: dict) -> dict[str, list[str]]:
    """Theorem → names of catalog fixtures whose kind it takes."""
    return {t.value: sorted(name for name, (kind, _) in catalog.items() if kind in THEOREMS[t].kinds)
            for t in TheoremId}
