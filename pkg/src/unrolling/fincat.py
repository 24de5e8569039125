from enum import IntEnum

import networkx as nx
import numpy as np

from ._config import lift_size_cap
from .misc import (
    ConeError,
    FunctorError,
    IdentityLawViolation,
    InvalidComposite,
    LawViolation,
    MissingComposite,
    NonAssociative,
    NonFunctorialDiagram,
    NotComposable,
    SizeCapExceeded,
    UnrollingError,
)
from .utils import Frozen, tuple_id


class FinCat(Frozen):
    """
    A :py:class:`FinCat` is a finite category, given by its list of objects,
    its list of arrows and its total composition table.

    Objects and arrows are identified by strings. The composition table is
    stored as a square ``numpy`` array of arrow indexes, ``-1`` marking non
    composable pairs, so that the category laws can be checked in bulk.
    """

    def __init__(self, objects, arrows, identities, compose, check=True):
        """
        Create a new :py:class:`FinCat`.

        ``arrows`` is a list of ``(id, dom, cod)`` or ``(id, name, dom, cod)``
        tuples; ``identities`` maps every object to its identity arrow and
        ``compose`` maps pairs ``(g, f)`` to ``g ∘ f``. Both mappings can also
        be given as lists of tuples.

        The composition table must be defined exactly on composable pairs. When
        ``check`` is ``True`` (the default), the identity and associativity
        laws are verified as well.
        """
        objects = [str(o) for o in objects]
        object_index = _index(objects, "object")

        ids, names, dom, cod = [], [], [], []
        for record in arrows:
            if len(record) == 3:
                arrow, source, target = record
                name = arrow
            elif len(record) == 4:
                arrow, name, source, target = record
            else:
                raise LawViolation(f"invalid arrow record {record!r}")
            for obj in (source, target):
                if obj not in object_index:
                    raise LawViolation(f"arrow '{arrow}' uses unknown object '{obj}'")
            ids.append(str(arrow))
            names.append(str(name))
            dom.append(object_index[source])
            cod.append(object_index[target])
        arrow_index = _index(ids, "arrow")

        identities = dict(identities)
        identity = np.full(len(objects), -1, dtype=np.int64)
        for obj, arrow in identities.items():
            if obj not in object_index:
                raise LawViolation(f"identity given for unknown object '{obj}'")
            if arrow not in arrow_index:
                raise LawViolation(f"unknown identity arrow '{arrow}'")
            i, a = object_index[obj], arrow_index[arrow]
            if dom[a] != i or cod[a] != i:
                raise LawViolation(
                    f"identity '{arrow}' is not an endo-arrow of '{obj}'"
                )
            identity[i] = a
        for i, obj in enumerate(objects):
            if identity[i] < 0:
                raise LawViolation(f"missing identity for object '{obj}'")

        dom = np.array(dom, dtype=np.int64)
        cod = np.array(cod, dtype=np.int64)
        table = np.full((len(ids), len(ids)), -1, dtype=np.int64)
        if isinstance(compose, dict):
            compose = [(g, f, gf) for (g, f), gf in compose.items()]
        for g, f, gf in compose:
            for arrow in (g, f, gf):
                if arrow not in arrow_index:
                    raise InvalidComposite(g, f, f"unknown arrow '{arrow}'")
            gi, fi, gfi = arrow_index[g], arrow_index[f], arrow_index[gf]
            if dom[gi] != cod[fi]:
                raise InvalidComposite(g, f, "the arrows are not composable")
            if dom[gfi] != dom[fi] or cod[gfi] != cod[gi]:
                raise InvalidComposite(g, f, f"'{gf}' has the wrong domain or codomain")
            if table[gi, fi] >= 0 and table[gi, fi] != gfi:
                raise InvalidComposite(g, f, "two different composites are given")
            table[gi, fi] = gfi

        self._setup(objects, ids, names, dom, cod, identity, table)
        self._check_total()
        if check:
            self.validate()

    @classmethod
    def _from_arrays(cls, objects, arrows, names, dom, cod, identity, table):
        """Create a category from already consistent index arrays"""
        category = cls.__new__(cls)
        category._setup(objects, arrows, names, dom, cod, identity, table)
        return category

    def _setup(self, objects, arrows, names, dom, cod, identity, table):
        self._objects = tuple(objects)
        self._arrows = tuple(arrows)
        self._names = tuple(names)
        self._object_index = {o: i for i, o in enumerate(self._objects)}
        self._arrow_index = {a: i for i, a in enumerate(self._arrows)}
        self._dom = np.asarray(dom, dtype=np.int64)
        self._cod = np.asarray(cod, dtype=np.int64)
        self._identity = np.asarray(identity, dtype=np.int64)
        self._table = np.asarray(table, dtype=np.int64)

        homs = {}
        for a in range(len(self._arrows)):
            homs.setdefault((int(self._dom[a]), int(self._cod[a])), []).append(a)
        self._homs = homs
        self._inverse = self._find_inverses()
        self._freeze()

    def _find_inverses(self):
        inverse = np.full(len(self._arrows), -1, dtype=np.int64)
        for f in range(len(self._arrows)):
            x, y = int(self._dom[f]), int(self._cod[f])
            for g in self._homs.get((y, x), []):
                if (
                    self._table[g, f] == self._identity[x]
                    and self._table[f, g] == self._identity[y]
                ):
                    inverse[f] = g
                    break
        return inverse

    def _check_total(self):
        composable = self._dom[:, None] == self._cod[None, :]
        missing = np.argwhere(composable & (self._table < 0))
        if len(missing) != 0:
            g, f = missing[0]
            raise MissingComposite(self._arrows[g], self._arrows[f])

    def validate(self):
        """
        Check the identity and associativity laws of this category, raising
        :py:class:`IdentityLawViolation` or :py:class:`NonAssociative` with
        the offending arrows.
        """
        self._check_total()
        n = len(self._arrows)
        everything = np.arange(n)
        left_ids = self._identity[self._cod]
        right_ids = self._identity[self._dom]
        left = self._table[left_ids, everything]
        right = self._table[everything, right_ids]
        for values, ids in ((left, left_ids), (right, right_ids)):
            bad = np.nonzero(values != everything)[0]
            if len(bad) != 0:
                f = bad[0]
                raise IdentityLawViolation(self._arrows[f], self._arrows[ids[f]])

        table = self._table
        for h in range(n):
            # pairs (g, f) such that h ∘ g and g ∘ f are defined
            gs = np.nonzero(table[h] >= 0)[0]
            if len(gs) == 0:
                continue
            gf = table[gs]
            mask = gf >= 0
            g_idx, f_idx = np.nonzero(mask)
            if len(g_idx) == 0:
                continue
            g_idx = gs[g_idx]
            first = table[h, table[g_idx, f_idx]]
            second = table[table[h, g_idx], f_idx]
            bad = np.nonzero(first != second)[0]
            if len(bad) != 0:
                g, f = g_idx[bad[0]], f_idx[bad[0]]
                raise NonAssociative(self._arrows[h], self._arrows[g], self._arrows[f])
        return self

    @property
    def objects(self):
        """Get the list of objects identifiers of this category"""
        return list(self._objects)

    @property
    def arrows(self):
        """Get the list of arrows identifiers of this category"""
        return list(self._arrows)

    def has_object(self, obj):
        return obj in self._object_index

    def has_arrow(self, arrow):
        return arrow in self._arrow_index

    def name(self, arrow):
        """Get the display name of the given ``arrow``"""
        return self._names[self._a(arrow)]

    def dom(self, arrow):
        """Get the domain of the given ``arrow``"""
        return self._objects[self._dom[self._a(arrow)]]

    def cod(self, arrow):
        """Get the codomain of the given ``arrow``"""
        return self._objects[self._cod[self._a(arrow)]]

    def identity(self, obj):
        """Get the identity arrow of the given ``obj``"""
        return self._arrows[self._identity[self._o(obj)]]

    def is_identity(self, arrow):
        a = self._a(arrow)
        return self._identity[self._dom[a]] == a

    def compose(self, g, f):
        """
        Get the composite ``g ∘ f`` of two arrows, ``f`` being applied first.
        This raises :py:class:`NotComposable` if the codomain of ``f`` is not
        the domain of ``g``.
        """
        gf = self._table[self._a(g), self._a(f)]
        if gf < 0:
            raise NotComposable(g, f)
        return self._arrows[gf]

    def compose_path(self, arrows):
        """
        Compose a path of arrows given in application order. The path must
        not be empty.
        """
        arrows = list(arrows)
        if len(arrows) == 0:
            raise UnrollingError("can not compose an empty path without an object")
        result = arrows[0]
        for arrow in arrows[1:]:
            result = self.compose(arrow, result)
        return result

    def hom(self, x, y):
        """Get the list of arrows from ``x`` to ``y``"""
        return [self._arrows[a] for a in self._homs.get((self._o(x), self._o(y)), [])]

    def inverse(self, arrow):
        """
        Get the inverse of ``arrow`` if it is an isomorphism, and ``None``
        otherwise.
        """
        g = self._inverse[self._a(arrow)]
        return None if g < 0 else self._arrows[g]

    def isomorphisms(self):
        return [self._arrows[a] for a in np.nonzero(self._inverse >= 0)[0]]

    def composable_pairs(self):
        """Get all pairs ``(g, f)`` such that ``g ∘ f`` is defined"""
        g_idx, f_idx = np.nonzero(self._table >= 0)
        return [(self._arrows[g], self._arrows[f]) for g, f in zip(g_idx, f_idx)]

    def _o(self, obj):
        try:
            return self._object_index[obj]
        except KeyError:
            raise UnrollingError(f"unknown object '{obj}' in this category")

    def _a(self, arrow):
        try:
            return self._arrow_index[arrow]
        except KeyError:
            raise UnrollingError(f"unknown arrow '{arrow}' in this category")

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self._objects == other._objects
            and self._arrows == other._arrows
            and self._names == other._names
            and np.array_equal(self._dom, other._dom)
            and np.array_equal(self._cod, other._cod)
            and np.array_equal(self._identity, other._identity)
            and np.array_equal(self._table, other._table)
        )

    def __hash__(self):
        return hash((self._objects, self._arrows))

    def __repr__(self):
        objects, arrows = len(self._objects), len(self._arrows)
        return f"FinCat with {objects} objects and {arrows} arrows"


def _index(values, kind):
    index = {}
    for i, value in enumerate(values):
        if value in index:
            raise LawViolation(f"duplicated {kind} identifier '{value}'")
        index[value] = i
    return index


def validate_category(description):
    """
    Build a :py:class:`FinCat` from a raw description, a mapping with the
    ``objects``, ``arrows``, ``identities`` and ``compose`` entries, checking
    every category law.
    """
    try:
        return FinCat(
            description["objects"],
            description["arrows"],
            description["identities"],
            description["compose"],
            check=True,
        )
    except KeyError as e:
        raise UnrollingError(f"category description is missing {e}")


def opposite(category):
    """
    Get the opposite of a category: arrows keep their identifiers, with
    domain and codomain swapped and the composition order reversed. Taking the
    opposite twice gives back an identical category.
    """
    C = category
    return FinCat._from_arrays(
        C._objects, C._arrows, C._names, C._cod, C._dom, C._identity, C._table.T.copy()
    )


def canonical(category):
    """
    Rename the objects of ``category`` to ``o0, o1, ...`` and its arrows to
    ``a0, a1, ...``, following the sorted order of the current identifiers.
    """
    objects = {o: f"o{i}" for i, o in enumerate(sorted(category.objects))}
    arrows = {a: f"a{i}" for i, a in enumerate(sorted(category.arrows))}
    return rename(category, objects, arrows)


def rename(category, objects, arrows):
    """
    Rename objects and arrows of ``category`` with the ``objects`` and
    ``arrows`` mappings. Identifiers missing from the mappings are kept.
    """
    new_objects = [objects.get(o, o) for o in category._objects]
    new_arrows = [arrows.get(a, a) for a in category._arrows]
    _index(new_objects, "object")
    _index(new_arrows, "arrow")
    C = category
    return FinCat._from_arrays(
        new_objects, new_arrows, new_arrows, C._dom, C._cod, C._identity, C._table
    )


def full_subcategory(category, objects):
    """
    Get the full subcategory of ``category`` on the given ``objects``. Object
    and arrow identifiers are kept.
    """
    keep = set(objects)
    return _subcategory(category, keep, lambda a: True)


def _subcategory(category, keep, predicate):
    C = category
    object_idx = [i for i, o in enumerate(C._objects) if o in keep]
    arrow_idx = [
        a
        for a in range(len(C._arrows))
        if C._objects[C._dom[a]] in keep
        and C._objects[C._cod[a]] in keep
        and (C._identity[C._dom[a]] == a or predicate(C._arrows[a]))
    ]
    new_object = {old: new for new, old in enumerate(object_idx)}
    new_arrow = np.full(len(C._arrows), -1, dtype=np.int64)
    new_arrow[arrow_idx] = np.arange(len(arrow_idx))

    arrow_idx = np.array(arrow_idx, dtype=np.int64)
    table = C._table[np.ix_(arrow_idx, arrow_idx)]
    table = np.where(table >= 0, new_arrow[np.maximum(table, 0)], -1)
    if np.any((C._table[np.ix_(arrow_idx, arrow_idx)] >= 0) & (table < 0)):
        raise UnrollingError("the selected arrows are not closed under composition")

    return FinCat._from_arrays(
        [C._objects[i] for i in object_idx],
        [C._arrows[a] for a in arrow_idx],
        [C._names[a] for a in arrow_idx],
        [new_object[int(C._dom[a])] for a in arrow_idx],
        [new_object[int(C._cod[a])] for a in arrow_idx],
        [new_arrow[C._identity[i]] for i in object_idx],
        table,
    )


def connected_components(category):
    """
    Get the connected components of the undirected graph underlying
    ``category``, as sorted lists of objects, in the order of their first
    object.
    """
    graph = nx.Graph()
    graph.add_nodes_from(category.objects)
    for a in range(len(category._arrows)):
        graph.add_edge(
            category._objects[category._dom[a]], category._objects[category._cod[a]]
        )
    order = {o: i for i, o in enumerate(category.objects)}
    components = [sorted(c, key=order.get) for c in nx.connected_components(graph)]
    return sorted(components, key=lambda c: order[c[0]])


def is_connected(category):
    """Check if ``category`` is non-empty and connected"""
    if len(category.objects) == 0:
        return False
    return len(connected_components(category)) == 1


def is_iso(category, arrow):
    """Check if ``arrow`` has a two-sided inverse in ``category``"""
    return category.inverse(arrow) is not None


def is_gaunt(category):
    """Check that the only isomorphisms of ``category`` are identities"""
    return all(category.is_identity(a) for a in category.isomorphisms())


def terminal(obj="*", arrow=None):
    """Get the category with a single object and a single arrow"""
    arrow = arrow or f"id_{obj}"
    return FinCat([obj], [(arrow, obj, obj)], {obj: arrow}, {(arrow, arrow): arrow})


def discrete(names):
    """Get the discrete category on the given object ``names``"""
    names = list(names)
    arrows = [(f"id_{o}", o, o) for o in names]
    return FinCat(
        names,
        arrows,
        {o: f"id_{o}" for o in names},
        {(f"id_{o}", f"id_{o}"): f"id_{o}" for o in names},
    )


def poset(elements, relation):
    """
    Get the thin category generated by the pairs ``(x, y)`` in ``relation``,
    meaning ``x <= y``. The reflexive and transitive closure is taken; arrows
    are named ``id_x`` and ``x<=y``.
    """
    elements = list(elements)
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from(relation)
    closure = nx.transitive_closure(graph, reflexive=False)

    def arrow(x, y):
        return f"id_{x}" if x == y else f"{x}<={y}"

    pairs = [(x, x) for x in elements]
    pairs += [
        (x, y)
        for x in elements
        for y in elements
        if x != y and closure.has_edge(x, y)
    ]
    arrows = [(arrow(x, y), x, y) for x, y in pairs]
    compose = {}
    for x, y in pairs:
        for y2, z in pairs:
            if y2 == y:
                compose[(arrow(y, z), arrow(x, y))] = arrow(x, z)
    return FinCat(elements, arrows, {x: arrow(x, x) for x in elements}, compose)


def walking_arrow():
    """Get the category with two objects ``a``, ``b`` and one arrow ``f: a → b``"""
    return poset(["a", "b"], [("a", "b")])


def walking_iso():
    """
    Get the category with two objects ``a``, ``b`` and two mutually inverse
    arrows ``f: a → b`` and ``f_inv: b → a``.
    """
    return FinCat(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b"), ("f_inv", "b", "a")],
        {"a": "id_a", "b": "id_b"},
        {
            ("id_a", "id_a"): "id_a",
            ("id_b", "id_b"): "id_b",
            ("f", "id_a"): "f",
            ("id_b", "f"): "f",
            ("f_inv", "id_b"): "f_inv",
            ("id_a", "f_inv"): "f_inv",
            ("f_inv", "f"): "id_a",
            ("f", "f_inv"): "id_b",
        },
    )


def monoid_category(elements, mult, unit, obj="*"):
    """
    Get the one-object category of a finite monoid. ``mult[(x, y)]`` is the
    product ``x·y``, read as the composite ``x ∘ y``.
    """
    elements = list(elements)
    return FinCat(
        [obj],
        [(e, obj, obj) for e in elements],
        {obj: unit},
        {(x, y): mult[(x, y)] for x in elements for y in elements},
    )


class FinFunctor(Frozen):
    """
    A :py:class:`FinFunctor` maps the objects and arrows of a
    :py:class:`FinCat` to the objects and arrows of another one, preserving
    domains, codomains, identities and composition.
    """

    def __init__(self, source, target, objects, arrows, check=True):
        """
        Create a new functor from ``source`` to ``target``, with the
        ``objects`` and ``arrows`` mappings. Identity arrows can be left out of
        ``arrows``, they are then sent to identities. When ``check`` is
        ``True``, the functor laws are verified and a :py:class:`FunctorError`
        is raised if they fail.
        """
        object_map = np.full(len(source._objects), -1, dtype=np.int64)
        for x, y in dict(objects).items():
            object_map[source._o(x)] = target._o(y)
        if np.any(object_map < 0):
            missing = source._objects[int(np.nonzero(object_map < 0)[0][0])]
            raise FunctorError(f"object '{missing}' has no image")

        arrow_map = np.full(len(source._arrows), -1, dtype=np.int64)
        for f, g in dict(arrows).items():
            arrow_map[source._a(f)] = target._a(g)
        ids = source._identity
        unset = ids[arrow_map[ids] < 0]
        arrow_map[unset] = target._identity[object_map[source._dom[unset]]]
        if np.any(arrow_map < 0):
            missing = source._arrows[int(np.nonzero(arrow_map < 0)[0][0])]
            raise FunctorError(f"arrow '{missing}' has no image")

        self._setup(source, target, object_map, arrow_map)
        if check:
            self.validate()

    @classmethod
    def _from_arrays(cls, source, target, object_map, arrow_map):
        functor = cls.__new__(cls)
        functor._setup(source, target, object_map, arrow_map)
        return functor

    def _setup(self, source, target, object_map, arrow_map):
        self.source = source
        self.target = target
        self._objects = np.asarray(object_map, dtype=np.int64)
        self._arrows = np.asarray(arrow_map, dtype=np.int64)
        self._freeze()

    def validate(self):
        """Check the functor laws, raising :py:class:`FunctorError` on failure"""
        A, B = self.source, self.target
        F0, F1 = self._objects, self._arrows
        bad = np.nonzero((B._dom[F1] != F0[A._dom]) | (B._cod[F1] != F0[A._cod]))[0]
        if len(bad) != 0:
            f = A._arrows[bad[0]]
            raise FunctorError(f"the image of '{f}' has the wrong domain or codomain")
        bad = np.nonzero(F1[A._identity] != B._identity[F0])[0]
        if len(bad) != 0:
            raise FunctorError(
                f"the identity of '{A._objects[bad[0]]}' is not sent to an identity"
            )
        g_idx, f_idx = np.nonzero(A._table >= 0)
        image = F1[A._table[g_idx, f_idx]]
        composite = B._table[F1[g_idx], F1[f_idx]]
        bad = np.nonzero(image != composite)[0]
        if len(bad) != 0:
            g, f = A._arrows[g_idx[bad[0]]], A._arrows[f_idx[bad[0]]]
            raise FunctorError(f"the composite of ('{g}', '{f}') is not preserved")
        return self

    def map_object(self, obj):
        return self.target._objects[self._objects[self.source._o(obj)]]

    def map_arrow(self, arrow):
        return self.target._arrows[self._arrows[self.source._a(arrow)]]

    @property
    def object_map(self):
        """Get the object mapping of this functor as a dictionary"""
        return {
            x: self.target._objects[i]
            for x, i in zip(self.source._objects, self._objects)
        }

    @property
    def arrow_map(self):
        """Get the arrow mapping of this functor as a dictionary"""
        return {
            f: self.target._arrows[i] for f, i in zip(self.source._arrows, self._arrows)
        }

    def then(self, other):
        """Get the composite functor ``other ∘ self``"""
        if other.source is not self.target and other.source != self.target:
            raise FunctorError("the functors are not composable")
        return FinFunctor._from_arrays(
            self.source,
            other.target,
            other._objects[self._objects],
            other._arrows[self._arrows],
        )

    def opposite(self):
        """Get the same functor between the opposite categories"""
        return FinFunctor._from_arrays(
            opposite(self.source), opposite(self.target), self._objects, self._arrows
        )

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self._objects, other._objects)
            and np.array_equal(self._arrows, other._arrows)
        )

    def __hash__(self):
        return hash((tuple(self._objects), tuple(self._arrows)))

    def __repr__(self):
        return f"FinFunctor from {self.source!r} to {self.target!r}"


def identity_functor(category):
    n, m = len(category._objects), len(category._arrows)
    return FinFunctor._from_arrays(category, category, np.arange(n), np.arange(m))


def constant_functor(source, target, obj):
    """Get the functor sending everything in ``source`` to ``obj`` in ``target``"""
    i = target._o(obj)
    n, m = len(source._objects), len(source._arrows)
    return FinFunctor._from_arrays(
        source,
        target,
        np.full(n, i, dtype=np.int64),
        np.full(m, target._identity[i], dtype=np.int64),
    )


def inclusion(sub, category):
    """
    Get the inclusion functor of a subcategory sharing its identifiers with
    ``category``.
    """
    objects = np.array([category._o(o) for o in sub._objects], dtype=np.int64)
    arrows = np.array([category._a(a) for a in sub._arrows], dtype=np.int64)
    return FinFunctor._from_arrays(sub, category, objects, arrows)


def is_injective_on_objects(functor):
    return len(np.unique(functor._objects)) == len(functor._objects)


def is_fully_faithful(functor):
    """
    Check that ``functor`` induces a bijection between every hom-set of its
    source and the corresponding hom-set of its target.
    """
    A, B = functor.source, functor.target
    F0, F1 = functor._objects, functor._arrows
    n = len(A._objects)
    for x in range(n):
        for y in range(n):
            images = [F1[a] for a in A._homs.get((x, y), [])]
            expected = B._homs.get((int(F0[x]), int(F0[y])), [])
            if len(set(images)) != len(images) or len(images) != len(expected):
                return False
    return True


def is_essentially_surjective(functor):
    """
    Check that every object of the target is isomorphic to the image of an
    object of the source.
    """
    B = functor.target
    reached = set(int(i) for i in functor._objects)
    for y in range(len(B._objects)):
        if y in reached:
            continue
        if not any(
            B._inverse[a] >= 0
            for x in reached
            for a in B._homs.get((x, y), [])
        ):
            return False
    return True


def is_equivalence(functor):
    """Check that ``functor`` is fully faithful and essentially surjective"""
    return is_fully_faithful(functor) and is_essentially_surjective(functor)


def is_isomorphism(functor):
    """Check that ``functor`` is bijective on objects and arrows"""
    return (
        len(functor.source._objects) == len(functor.target._objects)
        and len(functor.source._arrows) == len(functor.target._arrows)
        and is_injective_on_objects(functor)
        and len(np.unique(functor._arrows)) == len(functor._arrows)
    )


def inverse(functor):
    """Get the inverse of an isomorphism of categories"""
    if not is_isomorphism(functor):
        raise FunctorError("this functor is not an isomorphism of categories")
    objects = np.empty_like(functor._objects)
    objects[functor._objects] = np.arange(len(functor._objects))
    arrows = np.empty_like(functor._arrows)
    arrows[functor._arrows] = np.arange(len(functor._arrows))
    return FinFunctor._from_arrays(functor.target, functor.source, objects, arrows)


class Variance(IntEnum):
    """
    How a diagram reads the arrows of its shape:

    - ``Variance.Plain``: an arrow ``u: a → b`` acts from the value at ``a``
      to the value at ``b``;
    - ``Variance.Opposite``: an arrow ``u: a → b`` acts from the value at
      ``b`` to the value at ``a``, composites are reversed;
    """

    Plain = 0
    Opposite = 1


class FinDiagramShape(Frozen):
    """A finite category used as the shape of a diagram, with its variance"""

    def __init__(self, category, variance=Variance.Plain):
        self.category = category
        self.variance = Variance(variance)
        self._freeze()

    def opposite(self):
        """
        Get the same shape read the other way around. ``shape.opposite()``
        describes the same diagrams as ``shape`` over the opposite category.
        """
        if self.variance == Variance.Opposite:
            other = Variance.Plain
        else:
            other = Variance.Opposite
        return FinDiagramShape(opposite(self.category), other)

    def oriented_arrows(self):
        """
        Get the non identity arrows of the shape as ``(arrow, source, target)``
        with ``source`` and ``target`` the objects the action goes between.
        """
        C = self.category
        result = []
        for a in C.arrows:
            if C.is_identity(a):
                continue
            if self.variance == Variance.Plain:
                result.append((a, C.dom(a), C.cod(a)))
            else:
                result.append((a, C.cod(a), C.dom(a)))
        return result

    def __eq__(self, other):
        if not isinstance(other, FinDiagramShape):
            return NotImplemented
        return self.category == other.category and self.variance == other.variance

    def __hash__(self):
        return hash((self.category, self.variance))

    def __repr__(self):
        return f"FinDiagramShape ({self.variance.name}) on {self.category!r}"


def check_diagram(shape, values, actions):
    """
    Check that ``values`` (a :py:class:`FinCat` per shape object) and
    ``actions`` (a :py:class:`FinFunctor` per shape arrow) form a functor with
    the given ``shape``, raising :py:class:`NonFunctorialDiagram` if not.
    """
    C = shape.category
    for obj in C.objects:
        if obj not in values:
            raise NonFunctorialDiagram(f"missing value at '{obj}'")
    for a in C.arrows:
        if a not in actions:
            raise NonFunctorialDiagram(f"missing action for '{a}'")
        source, target = C.dom(a), C.cod(a)
        if shape.variance == Variance.Opposite:
            source, target = target, source
        action = actions[a]
        if action.source != values[source] or action.target != values[target]:
            raise NonFunctorialDiagram(f"the action of '{a}' has the wrong endpoints")
        if C.is_identity(a) and action != identity_functor(values[source]):
            raise NonFunctorialDiagram(f"the identity '{a}' does not act trivially")
    for g, f in C.composable_pairs():
        gf = C.compose(g, f)
        if shape.variance == Variance.Plain:
            composite = actions[f].then(actions[g])
        else:
            composite = actions[g].then(actions[f])
        if not np.array_equal(composite._arrows, actions[gf]._arrows) or not (
            np.array_equal(composite._objects, actions[gf]._objects)
        ):
            raise NonFunctorialDiagram(f"the composite ('{g}', '{f}') is not preserved")


def _compatible_families(sizes, maps):
    """
    Enumerate the families ``(x_s)`` with ``x_s < sizes[s]`` such that
    ``m[x_s] == x_t`` for every ``(s, t, m)`` in ``maps``, in lexicographic
    order.
    """
    k = len(sizes)
    outgoing = [[] for _ in range(k)]
    for s, t, m in maps:
        outgoing[s].append((t, m))
    # choosing values where many arrows start forces the most values
    order = sorted(range(k), key=lambda s: -len(outgoing[s]))
    assignment = [-1] * k
    results = []

    def assign(s, x, trail):
        stack = [(s, x)]
        while stack:
            s, x = stack.pop()
            if assignment[s] >= 0:
                if assignment[s] != x:
                    return False
                continue
            assignment[s] = x
            trail.append(s)
            for t, m in outgoing[s]:
                stack.append((t, int(m[x])))
        return True

    def search(i):
        if i == k:
            results.append(tuple(assignment))
            return
        s = order[i]
        if assignment[s] >= 0:
            search(i + 1)
            return
        for x in range(sizes[s]):
            trail = []
            if assign(s, x, trail):
                search(i + 1)
            for t in trail:
                assignment[t] = -1

    search(0)
    results.sort()
    return results


class Limit(Frozen):
    """
    The limit of a finite diagram of finite categories, computed
    componentwise. Objects (resp. arrows) of the limit category are the
    compatible families of objects (resp. arrows), ordered lexicographically
    following the shape's object order; their identifiers are the
    parenthesized families.
    """

    def __init__(self, shape, values, actions):
        check_diagram(shape, values, actions)
        self.shape = shape
        self.values = dict(values)
        self.actions = dict(actions)

        points = shape.category.objects
        position = {s: i for i, s in enumerate(points)}
        oriented = shape.oriented_arrows()
        object_maps = [
            (position[s], position[t], actions[a]._objects) for a, s, t in oriented
        ]
        arrow_maps = [
            (position[s], position[t], actions[a]._arrows) for a, s, t in oriented
        ]
        cats = [values[s] for s in points]
        object_sizes = [len(c._objects) for c in cats]
        arrow_sizes = [len(c._arrows) for c in cats]
        object_families = _compatible_families(object_sizes, object_maps)
        arrow_families = _compatible_families(arrow_sizes, arrow_maps)

        object_ids = [
            tuple_id([c._objects[x] for c, x in zip(cats, family)])
            for family in object_families
        ]
        arrow_ids = [
            tuple_id([c._arrows[x] for c, x in zip(cats, family)])
            for family in arrow_families
        ]
        object_lookup = {family: i for i, family in enumerate(object_families)}
        arrow_lookup = {family: i for i, family in enumerate(arrow_families)}

        dom, cod = [], []
        for family in arrow_families:
            pairs = list(zip(cats, family))
            dom.append(object_lookup[tuple(int(c._dom[x]) for c, x in pairs)])
            cod.append(object_lookup[tuple(int(c._cod[x]) for c, x in pairs)])
        identity = [
            arrow_lookup[tuple(int(c._identity[x]) for c, x in zip(cats, family))]
            for family in object_families
        ]

        n = len(arrow_families)
        table = np.full((n, n), -1, dtype=np.int64)
        families = np.array(arrow_families, dtype=np.int64).reshape(n, len(cats))
        dom_array = np.array(dom, dtype=np.int64)
        cod_array = np.array(cod, dtype=np.int64)
        for f in range(n):
            gs = np.nonzero(dom_array == cod_array[f])[0]
            for g in gs:
                composite = tuple(
                    int(c._table[families[g, i], families[f, i]])
                    for i, c in enumerate(cats)
                )
                table[g, f] = arrow_lookup[composite]

        self.category = FinCat._from_arrays(
            object_ids, arrow_ids, arrow_ids, dom, cod, identity, table
        )
        self._object_families = object_families
        self._arrow_families = arrow_families
        self._object_lookup = object_lookup
        self._arrow_lookup = arrow_lookup

        projections = {}
        for i, s in enumerate(points):
            projections[s] = FinFunctor._from_arrays(
                self.category,
                cats[i],
                np.array([f[i] for f in object_families], dtype=np.int64),
                np.array([f[i] for f in arrow_families], dtype=np.int64),
            )
        self.projections = projections
        self._freeze()

    def object_family(self, obj):
        """Get the family of objects, one per shape object, behind ``obj``"""
        family = self._object_families[self.category._o(obj)]
        points = self.shape.category.objects
        return {s: self.values[s]._objects[x] for s, x in zip(points, family)}

    def arrow_family(self, arrow):
        """Get the family of arrows, one per shape object, behind ``arrow``"""
        family = self._arrow_families[self.category._a(arrow)]
        points = self.shape.category.objects
        return {s: self.values[s]._arrows[x] for s, x in zip(points, family)}

    def mediating(self, apex, legs):
        """
        Get the unique functor from ``apex`` to the limit whose composites with
        the projections are the functors in ``legs``. This raises
        :py:class:`ConeError` if the legs do not form a cone.
        """
        points = self.shape.category.objects
        for s in points:
            if s not in legs:
                raise ConeError(f"missing cone leg at '{s}'")
            if legs[s].source != apex or legs[s].target != self.values[s]:
                raise ConeError(f"the cone leg at '{s}' has the wrong endpoints")
        for a, s, t in self.shape.oriented_arrows():
            composite = legs[s].then(self.actions[a])
            if not (
                np.array_equal(composite._objects, legs[t]._objects)
                and np.array_equal(composite._arrows, legs[t]._arrows)
            ):
                raise ConeError(f"the cone does not commute over '{a}'")

        objects = np.array(
            [
                self._object_lookup[tuple(int(legs[s]._objects[x]) for s in points)]
                for x in range(len(apex._objects))
            ],
            dtype=np.int64,
        ).reshape(len(apex._objects))
        arrows = np.array(
            [
                self._arrow_lookup[tuple(int(legs[s]._arrows[f]) for s in points)]
                for f in range(len(apex._arrows))
            ],
            dtype=np.int64,
        ).reshape(len(apex._arrows))
        return FinFunctor._from_arrays(apex, self.category, objects, arrows)

    def __repr__(self):
        return f"Limit over {self.shape!r}: {self.category!r}"


def finite_limit(shape, values, actions):
    """
    Compute the limit of the diagram of categories with the given ``shape``,
    ``values`` and ``actions``. The result is a :py:class:`Limit`, with the
    limit category in ``limit.category`` and the projections in
    ``limit.projections``.
    """
    return Limit(shape, values, actions)


def cones(limit, apex, cap=None):
    """
    Enumerate all cones with the given ``apex`` over the diagram of
    ``limit``, as dictionaries of legs.
    """
    points = limit.shape.category.objects
    candidates = {
        s: list(enumerate_functors(apex, limit.values[s], cap=cap)) for s in points
    }
    oriented = limit.shape.oriented_arrows()
    results = []

    def search(i, legs):
        if i == len(points):
            results.append(dict(legs))
            return
        s = points[i]
        for leg in candidates[s]:
            legs[s] = leg
            if all(
                legs[u].then(limit.actions[a]) == legs[t]
                for a, u, t in oriented
                if u in legs and t in legs
            ):
                search(i + 1, legs)
            del legs[s]

    search(0, {})
    return results


def check_limit(limit, apexes, cap=None):
    """
    Check the universal property of ``limit`` against all the cones with one
    of the given ``apexes``: every cone must factor through exactly one
    functor into the limit category.
    """
    for apex in apexes:
        into_limit = list(enumerate_functors(apex, limit.category, cap=cap))
        factored = set()
        for functor in into_limit:
            projected = [functor.then(p) for p in limit.projections.values()]
            legs = tuple((tuple(leg._objects), tuple(leg._arrows)) for leg in projected)
            if legs in factored:
                return False
            factored.add(legs)
        all_cones = cones(limit, apex, cap=cap)
        if len(all_cones) != len(factored):
            return False
        for legs in all_cones:
            mediating = limit.mediating(apex, legs)
            for s, leg in legs.items():
                if mediating.then(limit.projections[s]) != leg:
                    return False
    return True


class CommaCategory(Frozen):
    """
    The comma category ``F ↓ G`` of two functors with the same target: its
    objects are triples ``(a, b, t: F(a) → G(b))``, its arrows are the pairs
    ``(u, v)`` making the square ``G(v) ∘ t = t' ∘ F(u)`` commute.
    ``pi0`` and ``pi1`` are the two projections.
    """

    def __init__(self, F, G):
        if F.target != G.target:
            raise FunctorError("the functors of a comma category must share a target")
        A, B, C = F.source, G.source, F.target
        triples = []
        for a in A.objects:
            for b in B.objects:
                for t in C.hom(F.map_object(a), G.map_object(b)):
                    triples.append((a, b, t))
        object_ids = [tuple_id(triple) for triple in triples]
        by_endpoints = {}
        for i, (a, b, _) in enumerate(triples):
            by_endpoints.setdefault((a, b), []).append(i)

        records = []
        for u in A.arrows:
            Fu = F.map_arrow(u)
            for v in B.arrows:
                Gv = G.map_arrow(v)
                sources = by_endpoints.get((A.dom(u), B.dom(v)), [])
                targets = by_endpoints.get((A.cod(u), B.cod(v)), [])
                for i in sources:
                    t = triples[i][2]
                    image = C.compose(Gv, t)
                    for j in targets:
                        t2 = triples[j][2]
                        if C.compose(t2, Fu) == image:
                            records.append((u, v, i, j))

        arrow_ids = [
            tuple_id((u, v, triples[i][2], triples[j][2])) for u, v, i, j in records
        ]
        lookup = {(u, v, i): k for k, (u, v, i, _) in enumerate(records)}
        identity = [
            lookup[(A.identity(a), B.identity(b), i)]
            for i, (a, b, _) in enumerate(triples)
        ]
        by_source = {}
        for g, record in enumerate(records):
            by_source.setdefault(record[2], []).append(g)
        n = len(records)
        table = np.full((n, n), -1, dtype=np.int64)
        for f, (u, v, i, j) in enumerate(records):
            for g in by_source.get(j, []):
                u2, v2 = records[g][0], records[g][1]
                table[g, f] = lookup[(A.compose(u2, u), B.compose(v2, v), i)]

        self.category = FinCat._from_arrays(
            object_ids,
            arrow_ids,
            arrow_ids,
            [r[2] for r in records],
            [r[3] for r in records],
            identity,
            table,
        )
        self.F = F
        self.G = G
        self._triples = triples
        self.pi0 = FinFunctor._from_arrays(
            self.category,
            A,
            np.array([A._o(a) for a, _, _ in triples], dtype=np.int64),
            np.array([A._a(r[0]) for r in records], dtype=np.int64),
        )
        self.pi1 = FinFunctor._from_arrays(
            self.category,
            B,
            np.array([B._o(b) for _, b, _ in triples], dtype=np.int64),
            np.array([B._a(r[1]) for r in records], dtype=np.int64),
        )
        self._freeze()

    def triple(self, obj):
        """Get the triple ``(a, b, t)`` behind the object ``obj``"""
        return self._triples[self.category._o(obj)]

    def object_for(self, a, b, t):
        return tuple_id((a, b, t))

    def __repr__(self):
        return f"CommaCategory {self.category!r}"


def comma_category(F, G):
    """
    Build the comma category ``F ↓ G`` of two functors sharing their target.
    """
    return CommaCategory(F, G)


def decorated_category(base, decorations, admissible):
    """
    Build a category whose objects are the ``(obj, *payload)`` tuples in
    ``decorations``, lying over objects of ``base``. Arrows between two
    decorated objects are the arrows ``h`` of ``base`` between the underlying
    objects for which ``admissible(h, payload, payload2)`` holds; composition
    is the composition of ``base``. Admissible arrows must be closed under
    composition and contain the identities.

    Objects identifiers are the parenthesized decorations, and arrows are named
    ``(h,source,target)``. The result is the category and the underlying
    functor to ``base``.
    """
    decorations = [tuple(d) for d in decorations]
    object_ids = [tuple_id(d) for d in decorations]
    records = []
    for i, d in enumerate(decorations):
        for j, d2 in enumerate(decorations):
            for h in base.hom(d[0], d2[0]):
                if admissible(h, d[1:], d2[1:]):
                    records.append((h, i, j))
    lookup = {(h, i, j): k for k, (h, i, j) in enumerate(records)}
    identity = []
    for i, d in enumerate(decorations):
        key = (base.identity(d[0]), i, i)
        if key not in lookup:
            raise UnrollingError(f"the identity of {object_ids[i]} is not admissible")
        identity.append(lookup[key])

    by_source = {}
    for g, record in enumerate(records):
        by_source.setdefault(record[1], []).append(g)
    n = len(records)
    table = np.full((n, n), -1, dtype=np.int64)
    for f, (h, i, j) in enumerate(records):
        for g in by_source.get(j, []):
            h2, j2 = records[g][0], records[g][2]
            key = (base.compose(h2, h), i, j2)
            if key not in lookup:
                raise UnrollingError(
                    "admissible arrows are not closed under composition"
                )
            table[g, f] = lookup[key]

    arrow_ids = [tuple_id((h, object_ids[i], object_ids[j])) for h, i, j in records]
    category = FinCat._from_arrays(
        object_ids,
        arrow_ids,
        arrow_ids,
        [r[1] for r in records],
        [r[2] for r in records],
        identity,
        table,
    )
    underlying = FinFunctor._from_arrays(
        category,
        base,
        np.array([base._o(d[0]) for d in decorations], dtype=np.int64),
        np.array([base._a(r[0]) for r in records], dtype=np.int64),
    )
    return category, underlying


class OverCategory(Frozen):
    """
    The slice of a category over one of its objects. Objects are the arrows
    ``t: a → obj``, arrows from ``t`` to ``t'`` are the ``u`` with
    ``t' ∘ u = t``. When ``proper`` is ``True``, the identity of ``obj`` is
    left out; this is the shape used by matching objects.
    ``forget`` is the functor back to ``category``.
    """

    def __init__(self, category, obj, proper=False):
        C = category
        decorations = []
        for a in C.objects:
            for t in C.hom(a, obj):
                if proper and t == C.identity(obj):
                    continue
                decorations.append((a, t))

        def admissible(u, source, target):
            return C.compose(target[0], u) == source[0]

        self.base = category
        self.obj = obj
        self.category, self.forget = decorated_category(C, decorations, admissible)
        self._arrows = {tuple_id(d): d[1] for d in decorations}
        self._freeze()

    def arrow_of(self, obj):
        """Get the arrow into the base object behind the slice object ``obj``"""
        return self._arrows[obj]

    def object_for(self, arrow):
        return tuple_id((self.base.dom(arrow), arrow))

    def __repr__(self):
        return f"OverCategory over '{self.obj}': {self.category!r}"


def over_category(category, obj, proper=False):
    return OverCategory(category, obj, proper)


def fiber(functor, obj):
    """
    Get the fiber of ``functor`` over ``obj``: the objects sent to ``obj``,
    with the arrows sent to its identity.
    """
    A, B = functor.source, functor.target
    target = B._o(obj)
    keep = {A._objects[i] for i in np.nonzero(functor._objects == target)[0]}
    over = B._identity[target]
    return _subcategory(
        A, keep, lambda a: functor._arrows[A._a(a)] == over
    )


def enumerate_functors(
    source, target, object_candidates=None, arrow_candidates=None, cap=None
):
    """
    Enumerate all functors from ``source`` to ``target``, by backtracking.

    ``object_candidates`` and ``arrow_candidates`` optionally restrict the
    possible images of some objects and arrows to a list of candidates. The
    number of partial assignments explored is bounded by ``cap`` (by default,
    the configured lift size cap), :py:class:`SizeCapExceeded` is raised
    beyond it.
    """
    cap = lift_size_cap(cap)
    A, B = source, target
    object_candidates = object_candidates or {}
    arrow_candidates = arrow_candidates or {}

    object_choices = []
    for x in A.objects:
        if x in object_candidates:
            object_choices.append([B._o(y) for y in object_candidates[x]])
        else:
            object_choices.append(list(range(len(B._objects))))
    identities = set(int(i) for i in A._identity)
    free_arrows = [a for a in range(len(A._arrows)) if a not in identities]
    arrow_choices = {}
    for a in free_arrows:
        name = A._arrows[a]
        if name in arrow_candidates:
            arrow_choices[a] = [B._a(g) for g in arrow_candidates[name]]
        else:
            arrow_choices[a] = None

    # the composable triples to check once an arrow gets its image
    g_idx, f_idx = np.nonzero(A._table >= 0)
    triples = list(zip(g_idx.tolist(), f_idx.tolist(), A._table[g_idx, f_idx].tolist()))
    watch = [[] for _ in range(len(A._arrows))]
    for triple in triples:
        for arrow in set(triple):
            watch[arrow].append(triple)

    # objects in order, each followed by the arrows it completes
    steps = []
    for i in range(len(A._objects)):
        steps.append((True, i))
        for a in free_arrows:
            if max(A._dom[a], A._cod[a]) == i:
                steps.append((False, a))

    objects = [-1] * len(A._objects)
    arrows = [-1] * len(A._arrows)
    explored = [0]

    def consistent(a):
        for g, f, gf in watch[a]:
            if arrows[g] >= 0 and arrows[f] >= 0 and arrows[gf] >= 0:
                if B._table[arrows[g], arrows[f]] != arrows[gf]:
                    return False
        return True

    def tick():
        explored[0] += 1
        if explored[0] > cap:
            raise SizeCapExceeded(explored[0], cap)

    def search(k):
        if k == len(steps):
            yield FinFunctor._from_arrays(
                A,
                B,
                np.array(objects, dtype=np.int64).reshape(len(objects)),
                np.array(arrows, dtype=np.int64).reshape(len(arrows)),
            )
            return
        is_object, i = steps[k]
        if is_object:
            identity = A._identity[i]
            for y in object_choices[i]:
                tick()
                objects[i] = y
                arrows[identity] = B._identity[y]
                if consistent(identity):
                    yield from search(k + 1)
                arrows[identity] = -1
                objects[i] = -1
        else:
            x, y = objects[A._dom[i]], objects[A._cod[i]]
            choices = B._homs.get((x, y), [])
            if arrow_choices[i] is not None:
                allowed = set(arrow_choices[i])
                choices = [g for g in choices if g in allowed]
            for g in choices:
                tick()
                arrows[i] = g
                if consistent(i):
                    yield from search(k + 1)
                arrows[i] = -1

    yield from search(0)
