"""
JSON codec for every instance kind
"""
from __future__ import annotations

import json
import logging
from typing import Any

from action import Action, ActionMorphism, validate_action, validate_morphism
from actor import Actor, ActorOfActions, validate_actor, validate_actor_of_actions
from config import OPEN_LISTING_CAP
from errors import GroupoidDynamicsError, InvalidInstanceError, KindMismatchError, SerializationError
from fintop import Bornology, FiniteSpace, SpaceMap
from groupoid import Groupoid, validate_groupoid
from vague import (GeneralizedVagueMorphism, GVMOfActions, PullbackAction, PullbackGroupoid, build_pullback,
                   build_pullback_action, gvm_from_gamma2, make_gvm_action, validate_gvm_action)

LOG = logging.getLogger(__name__)

KINDS = ('space', 'map', 'bornology', 'groupoid', 'action', 'action_morphism', 'pullback',
         'pullback_action', 'gvm_action', 'actor', 'actor_action', 'composable_pair')


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


class Codec:
    """Dumps instances to JSON documents and loads them back.

    Loading interns groupoids and actions by their canonical text, so
    instances sharing an endpoint in JSON share the object after loading.
    With `validate` unset, loaded instances are built but not checked.
    """

    def __init__(self, validate: bool = True):
        self.validate = validate
        self._interned: dict[tuple[str, str], Any] = {}

    # =========================
    # Dump
    # =========================
    def dump(self, obj) -> dict:
        if isinstance(obj, FiniteSpace):
            return self._dump_space(obj)
        if isinstance(obj, SpaceMap):
            return {'kind': 'map', 'domain': self._dump_space(obj.domain),
                    'codomain': self._dump_space(obj.codomain), 'table': list(obj.table)}
        if isinstance(obj, Bornology):
            return {'kind': 'bornology', 'carrier': self._dump_space(obj.carrier),
                    'core': None if obj.is_all else sorted(obj.core)}
        if isinstance(obj, Groupoid):
            return self._dump_groupoid(obj)
        if isinstance(obj, Action):
            return self._dump_action(obj)
        if isinstance(obj, ActionMorphism):
            return {'kind': 'action_morphism', 'source': self._dump_action(obj.source),
                    'target': self._dump_action(obj.target), 'psi': list(obj.psi), 'f': list(obj.f)}
        if isinstance(obj, PullbackGroupoid):
            return {'kind': 'pullback', 'groupoid': self._dump_groupoid(obj.base),
                    'aspace': self._dump_space(obj.aspace), 'pi': list(obj.pi)}
        if isinstance(obj, PullbackAction):
            return {'kind': 'pullback_action', 'action': self._dump_action(obj.source),
                    'aspace': self._dump_space(obj.pb.aspace), 'pi': list(obj.pb.pi)}
        if isinstance(obj, GVMOfActions):
            return self._dump_gvm_action(obj)
        if isinstance(obj, Actor):
            return self._dump_actor(obj)
        if isinstance(obj, ActorOfActions):
            return {'kind': 'actor_action', 'actor': self._dump_actor(obj.actor), 'g': list(obj.g),
                    'source': self._dump_action(obj.theta), 'target': self._dump_action(obj.theta2)}
        if isinstance(obj, tuple) and len(obj) == 2:
            return {'kind': 'composable_pair', 'first': self.dump(obj[0]), 'second': self.dump(obj[1])}
        raise SerializationError(f"cannot serialize {type(obj).__name__}")

    def dumps(self, obj) -> str:
        return canonical(self.dump(obj))

    def _dump_space(self, s: FiniteSpace) -> dict:
        doc = {'kind': 'space', 'points': list(s.labels)}
        opens = list(s.iter_opens(limit=OPEN_LISTING_CAP + 1))
        if len(opens) <= OPEN_LISTING_CAP:
            doc['opens'] = sorted((sorted(o) for o in opens), key=lambda o: (len(o), o))
        else:
            doc['base'] = [sorted(b) for b in s.base]
        return doc

    def _dump_groupoid(self, g: Groupoid) -> dict:
        return {
            'kind': 'groupoid',
            'space': self._dump_space(g.space),
            'units': sorted(g.units),
            'src': list(g.src),
            'rng': list(g.rng),
            'inv': list(g.inv),
            'mul': sorted([i, j, k] for (i, j), k in g.mul.items()),
        }

    def _dump_action(self, a: Action) -> dict:
        return {
            'kind': 'action',
            'groupoid': self._dump_groupoid(a.gpd),
            'space': self._dump_space(a.space),
            'anchor': list(a.anchor),
            'act': sorted([xi, s, t] for (xi, s), t in a.act.items()),
        }

    def _dump_actor(self, phi: Actor) -> dict:
        doc = {
            'kind': 'actor',
            'source': self._dump_groupoid(phi.source),
            'target': self._dump_groupoid(phi.target),
            'mu': list(phi.mu),
            'diamond': sorted([xi, eta, z] for (xi, eta), z in phi.diamond.items()),
        }
        if phi.relaxed:
            doc['relaxed'] = True
        return doc

    def _dump_gvm_action(self, va: GVMOfActions) -> dict:
        gvm = va.gvm
        pb, pb2 = gvm.pb, gvm.pb2
        return {
            'kind': 'gvm_action',
            'source': self._dump_action(va.theta),
            'target': self._dump_action(va.theta2),
            'aspace': self._dump_space(pb.aspace),
            'aspace_prime': self._dump_space(pb2.aspace),
            'pi': list(pb.pi),
            'pi_prime': list(pb2.pi),
            'gamma': list(gvm.gamma),
            'Gamma': [[list(pb.triples[t]), list(pb2.triples[u])] for t, u in enumerate(gvm.Gamma)],
            'h': list(va.h),
        }

    # =========================
    # Load
    # =========================
    def load(self, doc: dict):
        if not isinstance(doc, dict) or 'kind' not in doc:
            raise SerializationError("expected a JSON object with a 'kind'")
        kind = doc['kind']
        loader = getattr(self, f"_load_{kind}", None)
        if kind not in KINDS or loader is None:
            raise KindMismatchError(f"unknown instance kind {kind!r}")
        try:
            return loader(doc)
        except GroupoidDynamicsError:
            raise
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise SerializationError(f"malformed {kind}: {e!r}") from e

    def loads(self, text: str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SerializationError(f"not JSON: {e}") from e
        return self.load(doc)

    def expect(self, doc: dict, *kinds: str):
        if not isinstance(doc, dict) or doc.get('kind') not in kinds:
            got = doc.get('kind') if isinstance(doc, dict) else type(doc).__name__
            raise KindMismatchError(f"expected {' or '.join(kinds)}, got {got}")
        return self.load(doc)

    def _intern(self, kind: str, doc: dict, build):
        key = (kind, canonical(doc))
        if key not in self._interned:
            self._interned[key] = build()
            LOG.debug("loaded %s, %d interned", kind, len(self._interned))
        return self._interned[key]

    def _check(self, what: str, violation):
        if self.validate and violation is not None:
            raise InvalidInstanceError(what, violation)

    def _load_space(self, doc: dict) -> FiniteSpace:
        labels = doc['points']
        if 'base' in doc:
            return FiniteSpace.from_base(labels, doc['base'])
        full = list(range(len(labels)))
        return FiniteSpace.from_opens(labels, [[], full] + [list(o) for o in doc['opens']])

    def _load_map(self, doc: dict) -> SpaceMap:
        return SpaceMap(self._load_space(doc['domain']), self._load_space(doc['codomain']), tuple(doc['table']))

    def _load_bornology(self, doc: dict) -> Bornology:
        carrier = self._load_space(doc['carrier'])
        if doc.get('core') is None:
            return Bornology.all_subsets(carrier)
        return Bornology.restricted(carrier, doc['core'])

    def _load_groupoid(self, doc: dict) -> Groupoid:
        return self._intern('groupoid', doc, lambda: self._build_groupoid(doc))

    def _build_groupoid(self, doc: dict) -> Groupoid:
        space = self._load_space(doc['space'])
        src, rng = tuple(doc['src']), tuple(doc['rng'])
        mul = {}
        for i, j, k in doc['mul']:
            if src[i] != rng[j]:
                raise SerializationError(f"mul entry {[i, j, k]} is not composable")
            mul[(i, j)] = k
        g = Groupoid(space, frozenset(doc['units']), src, rng, tuple(doc['inv']), mul)
        self._check("groupoid", validate_groupoid(g))
        return g

    def _load_action(self, doc: dict) -> Action:
        return self._intern('action', doc, lambda: self._build_action(doc))

    def _build_action(self, doc: dict) -> Action:
        a = Action(self._load_groupoid(doc['groupoid']), self._load_space(doc['space']), tuple(doc['anchor']),
                   {(xi, s): t for xi, s, t in doc['act']})
        self._check("action", validate_action(a))
        return a

    def _load_action_morphism(self, doc: dict) -> ActionMorphism:
        m = ActionMorphism(self._load_action(doc['source']), self._load_action(doc['target']),
                           tuple(doc['psi']), tuple(doc['f']))
        self._check("action morphism", validate_morphism(m))
        return m

    def _load_pullback(self, doc: dict) -> PullbackGroupoid:
        return build_pullback(self._load_groupoid(doc['groupoid']), doc['pi'], self._load_space(doc['aspace']))

    def _load_pullback_action(self, doc: dict) -> PullbackAction:
        theta = self._load_action(doc['action'])
        return build_pullback_action(theta, build_pullback(theta.gpd, doc['pi'], self._load_space(doc['aspace'])))

    def _load_gvm_action(self, doc: dict) -> GVMOfActions:
        theta, theta2 = self._load_action(doc['source']), self._load_action(doc['target'])
        pb = build_pullback(theta.gpd, doc['pi'], self._load_space(doc['aspace']))
        pb2 = build_pullback(theta2.gpd, doc['pi_prime'], self._load_space(doc['aspace_prime']))
        if 'Gamma' in doc:
            table = {tuple(t): tuple(u) for t, u in doc['Gamma']}
            missing = [t for t in pb.triples if t not in table]
            if missing:
                raise SerializationError(f"Γ misses the triple {list(missing[0])}")
            gvm = GeneralizedVagueMorphism(pb, pb2, tuple(doc['gamma']),
                                           tuple(pb2.index[table[t]] for t in pb.triples))
        else:
            gvm = gvm_from_gamma2(pb, pb2, doc['gamma'], doc['Gamma2'])
        va = make_gvm_action(gvm, theta, theta2, doc['h'])
        self._check("generalized vague morphism", validate_gvm_action(va))
        return va

    def _load_actor(self, doc: dict) -> Actor:
        phi = Actor(self._load_groupoid(doc['source']), self._load_groupoid(doc['target']), tuple(doc['mu']),
                    {(xi, eta): z for xi, eta, z in doc['diamond']}, bool(doc.get('relaxed', False)))
        self._check("actor", validate_actor(phi))
        return phi

    def _load_actor_action(self, doc: dict) -> ActorOfActions:
        pa = ActorOfActions(self._load_actor(doc['actor']), self._load_action(doc['source']),
                            self._load_action(doc['target']), tuple(doc['g']))
        self._check("algebraic morphism of actions", validate_actor_of_actions(pa))
        return pa

    def _load_composable_pair(self, doc: dict) -> tuple:
        return self.load(doc['first']), self.load(doc['second'])


def dumps(obj) -> str:
    return Codec().dumps(obj)


def loads(text: str, validate: bool = True):
    return Codec(validate).loads(text)
