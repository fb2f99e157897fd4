#!/usr/bin/env python3
"""
gd: validate, classify and verify finite groupoid dynamics from JSON files
"""
import argparse
import json
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from action import Action, ActionMorphism, compose_morphisms, recurrence_set, validate_action, validate_morphism
from actor import Actor, ActorOfActions, compose_actor_of_actions, validate_actor, validate_actor_of_actions
from config import DEFAULT_COUNT, DEFAULT_SEED, GENERATOR_KINDS, LOG_LEVEL, SUITE_WORKERS, TOPOLOGIES
from data_manager import DataManager
from dynamics import classify, point_classes
from errors import GroupoidDynamicsError, InvalidInstanceError, SerializationError
from fintop import BornologyKind
from fixtures import CATALOG
from generators import GeneratorSpec, generate, generated_bornology
from groupoid import Groupoid, validate_groupoid
from harness import TheoremId, VerifyOptions, coverage, run_suite, verify
from init import __version__
from serialization import Codec, canonical
from vague import (GVMOfActions, PullbackAction, PullbackGroupoid, build_pullback, pullback_structure_check,
                   validate_gvm_action)

LOG = logging.getLogger('gd')

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


def emit(doc):
    print(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=str))


def note(msg):
    print(msg, file=sys.stderr)


def read_json(path):
    try:
        with open(path, 'r', encoding='utf-8') as h:
            return json.load(h)
    except OSError as e:
        raise SerializationError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise SerializationError(f"{path} is not JSON: {e}") from e


def parse_ids(text):
    text = (text or '').strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(',')]
    except ValueError:
        raise SerializationError(f"expected comma-separated ids, got {text!r}") from None


def violation_of(obj):
    if isinstance(obj, Groupoid):
        return validate_groupoid(obj)
    if isinstance(obj, Action):
        return validate_action(obj)
    if isinstance(obj, ActionMorphism):
        return validate_morphism(obj)
    if isinstance(obj, PullbackGroupoid):
        return validate_groupoid(obj.realized)
    if isinstance(obj, PullbackAction):
        return validate_action(obj.realized)
    if isinstance(obj, GVMOfActions):
        return validate_gvm_action(obj)
    if isinstance(obj, Actor):
        return validate_actor(obj)
    if isinstance(obj, ActorOfActions):
        return validate_actor_of_actions(obj)
    if isinstance(obj, tuple):
        return violation_of(obj[0]) or violation_of(obj[1])
    return None


# =========================
# Commands
# =========================
def cmd_validate(args):
    doc = read_json(args.file)
    try:
        v = violation_of(Codec(validate=False).load(doc))
    except InvalidInstanceError as e:
        v = e.violation
        if v is None:
            note(f"❌ {e}")
            emit({'kind': doc.get('kind'), 'valid': False, 'error': str(e)})
            return EXIT_VIOLATED
    emit({'kind': doc.get('kind'), 'valid': v is None, 'violation': v.to_dict() if v else None})
    if v is not None:
        note(f"❌ {doc.get('kind')}: {v}")
        return EXIT_VIOLATED
    note(f"✅ valid {doc.get('kind')}")
    return EXIT_OK


def _action_and_bornology(args):
    a = Codec().expect(read_json(args.file), 'action')
    kind = BornologyKind.parse(args.bornology)
    return a, kind, kind.resolve(a.gpd.space)


def cmd_classify(args):
    a, kind, _ = _action_and_bornology(args)
    emit({'profile': classify(a).to_dict(), 'bornology': kind.to_spec()})
    return EXIT_OK


def cmd_points(args):
    a, kind, b = _action_and_bornology(args)
    emit({'points': point_classes(a, b).to_dict(), 'bornology': kind.to_spec(),
          'mode': 'faithful' if b.is_all else 'model_level'})
    return EXIT_OK


def cmd_recurrence(args):
    a = Codec().expect(read_json(args.file), 'action')
    m, n = parse_ids(args.M), parse_ids(args.N)
    emit({'M': sorted(m), 'N': sorted(n), 'recurrence_set': sorted(recurrence_set(a, m, n))})
    return EXIT_OK


def cmd_pullback(args):
    codec = Codec()
    g = codec.expect(read_json(args.file), 'groupoid')
    pi = codec.expect(read_json(args.pi), 'map')
    units = g.unit_list
    if pi.codomain.n != len(units):
        raise SerializationError(f"pi lands in {pi.codomain.n} points, the groupoid has {len(units)} units")
    pb = build_pullback(g, [units[p] for p in pi.table], pi.domain)
    report = pullback_structure_check(pb, args.seed)
    emit({'pullback': codec.dump(pb), 'groupoid': codec.dump(pb.realized), 'report': report.to_dict()})
    note(f"{'✅' if report.holds else '❌'} pullback with {pb.realized.n} arrows")
    return EXIT_OK if report.holds else EXIT_VIOLATED


def cmd_compose(args):
    codec = Codec()
    kind = 'action_morphism' if args.morphisms else 'actor_action'
    first = codec.expect(read_json(args.first), kind)
    second = codec.expect(read_json(args.second), kind)
    if args.morphisms:
        out = compose_morphisms(second, first)
    else:
        out = compose_actor_of_actions(second, first)
    emit(codec.dump(out))
    note(f"✅ composed {kind}")
    return EXIT_OK


def cmd_verify(args):
    theorem = TheoremId.parse(args.theorem)
    inst = Codec().load(read_json(args.file))
    verdict = verify(theorem, inst, VerifyOptions(seed=args.seed, minimize=not args.no_minimize))
    emit(verdict.to_dict())
    if verdict.faithful_violation:
        note(f"❌ {theorem.value} violated: {verdict.witness}")
        return EXIT_VIOLATED
    note(f"✅ {theorem.value}: {verdict.status.value} ({verdict.mode.value})")
    return EXIT_OK


def cmd_suite(args):
    theorems = [t for t in (args.filter or '').split(',') if t.strip()]
    report = run_suite(args.seed, args.count, theorems, args.workers)
    if args.save:
        report['saved_to'] = DataManager().save_report(report)
    emit(report)
    for name, row in report['theorems'].items():
        note(f"📊 {name}: {row['holds']} holds, {row['violated']} violated, "
             f"{row['not_applicable']} n/a, {row['model_level_violated']} model-level, {row['skipped']} skipped")
    if not report['ok']:
        note(f"❌ {len(report['violations'])} faithful violations or errors")
        return EXIT_VIOLATED
    note("✅ no faithful violations")
    return EXIT_OK


def cmd_generate(args):
    spec = GeneratorSpec(args.kind, args.seed, args.units, args.order, args.points, args.topology,
                         BornologyKind.parse(args.bornology))
    inst = generate(spec)
    codec = Codec()
    if spec.bornology.is_all:
        emit(codec.dump(inst))
    else:
        emit({'instance': codec.dump(inst), 'bornology': codec.dump(generated_bornology(spec, inst))})
    note(f"✅ generated {args.kind} (seed {args.seed})")
    return EXIT_OK


def cmd_corpus(args):
    codec = Codec()
    dm = DataManager() if args.write else None
    names = []
    for name, (kind, builder) in sorted(CATALOG.items()):
        obj = builder()
        doc = codec.dump(obj)
        if canonical(Codec().dump(Codec().load(doc))) != canonical(doc):
            raise SerializationError(f"{name} does not survive a round trip")
        if dm is not None:
            dm.save_instance(name, obj)
        names.append(name)
    cov = coverage(CATALOG)
    if dm is not None:
        dm.write_coverage(cov)
    emit({'fixtures': names, 'coverage': cov})
    note(f"✅ {len(names)} fixtures round-trip" + (", written" if dm else ""))
    return EXIT_OK


# =========================
# Parser
# =========================
def build_parser():
    p = argparse.ArgumentParser(prog='gd', description=__doc__.strip())
    p.add_argument('--version', action='version', version=f"gd {__version__}")
    p.add_argument('-v', '--verbose', action='count', default=0)
    sub = p.add_subparsers(dest='command', required=True)

    s = sub.add_parser('validate', help='run the validator of any instance file')
    s.add_argument('file')
    s.set_defaults(func=cmd_validate)

    for name, func in (('classify', cmd_classify), ('points', cmd_points)):
        s = sub.add_parser(name)
        s.add_argument('file')
        s.add_argument('--bornology', default='all', help="'all' or 'core=<ids>' on the arrows")
        s.set_defaults(func=func)

    s = sub.add_parser('recurrence')
    s.add_argument('file')
    s.add_argument('--M', required=True)
    s.add_argument('--N', required=True)
    s.set_defaults(func=cmd_recurrence)

    s = sub.add_parser('pullback')
    s.add_argument('file')
    s.add_argument('--pi', required=True)
    s.add_argument('--seed', type=int, default=0)
    s.set_defaults(func=cmd_pullback)

    s = sub.add_parser('compose')
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument('--morphisms', action='store_true')
    which.add_argument('--actors', action='store_true')
    s.add_argument('first')
    s.add_argument('second')
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser('verify')
    s.add_argument('--theorem', required=True, choices=[t.value for t in TheoremId], metavar='ID')
    s.add_argument('file')
    s.add_argument('--seed', type=int, default=0)
    s.add_argument('--no-minimize', action='store_true')
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser('suite')
    s.add_argument('--seed', type=int, default=DEFAULT_SEED)
    s.add_argument('--count', type=int, default=DEFAULT_COUNT)
    s.add_argument('--filter', default='')
    s.add_argument('--workers', type=int, default=SUITE_WORKERS)
    s.add_argument('--save', action='store_true')
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser('generate')
    s.add_argument('--kind', required=True, choices=GENERATOR_KINDS)
    s.add_argument('--seed', type=int, default=0)
    s.add_argument('--units', type=int)
    s.add_argument('--order', type=int)
    s.add_argument('--points', type=int)
    s.add_argument('--topology', choices=TOPOLOGIES, default='discrete')
    s.add_argument('--bornology', default='all', help="'all' or 'core=<ids>' on the arrows")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser('corpus', help='export the named fixtures and the coverage map')
    s.add_argument('--write', action='store_true')
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = LOG_LEVEL.upper() if args.verbose == 0 else ('INFO' if args.verbose == 1 else 'DEBUG')
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.func(args)
    except GroupoidDynamicsError as e:
        note(f"⚠️ {type(e).__name__}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
