"""
Deterministic generators for example inputs: finite groups seen as one-object
categories, truncated cube categories, random small categories and the
fixtures exhibiting failures of the checkers.
"""
import itertools

import numpy as np

from .fincat import (
    FinCat,
    FinFunctor,
    discrete,
    enumerate_functors,
    inclusion,
    monoid_category,
    poset,
    terminal,
    walking_arrow,
    walking_iso,
)
from .freecat import AmalgamPresentation
from .misc import NotAGroup, UnrollingError
from .reedy import ReedyStructure, StrictReedyStructure
from .utils import Frozen


class GroupTable(Frozen):
    """
    The multiplication table of a finite group: ``mult[(x, y)]`` is the
    product ``x·y`` of two elements, and ``unit`` the neutral element. The
    group axioms are checked exhaustively, raising :py:class:`NotAGroup`.
    """

    def __init__(self, elements, mult, unit):
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise NotAGroup("the elements are not distinct")
        if unit not in index:
            raise NotAGroup(f"the unit '{unit}' is not an element")
        n = len(elements)
        table = np.full((n, n), -1, dtype=np.int64)
        for x in elements:
            for y in elements:
                z = mult.get((x, y))
                if z not in index:
                    raise NotAGroup(f"the product of '{x}' and '{y}' is not an element")
                table[index[x], index[y]] = index[z]

        e = index[unit]
        everything = np.arange(n)
        left_unit = np.array_equal(table[e], everything)
        if not (left_unit and np.array_equal(table[:, e], everything)):
            raise NotAGroup(f"'{unit}' is not a unit")
        left = table[table[:, :, None], everything[None, None, :]]
        right = table[everything[:, None, None], table[None, :, :]]
        if not np.array_equal(left, right):
            i, j, k = np.argwhere(left != right)[0]
            raise NotAGroup(
                f"the product is not associative on '{elements[i]}', "
                f"'{elements[j]}', '{elements[k]}'"
            )
        for i in range(n):
            if not np.any(table[i] == e):
                raise NotAGroup(f"'{elements[i]}' has no inverse")

        self.elements = elements
        self.mult = {(x, y): mult[(x, y)] for x in elements for y in elements}
        self.unit = unit
        self._freeze()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroupTable with {len(self.elements)} elements"


def cyclic_group(n):
    """Get the table of Z/n, with elements ``e``, ``g``, ``g2``, ..."""
    if n < 1:
        raise NotAGroup("a cyclic group needs at least one element")

    def name(i):
        return "e" if i == 0 else ("g" if i == 1 else f"g{i}")

    elements = [name(i) for i in range(n)]
    mult = {(name(i), name(j)): name((i + j) % n) for i in range(n) for j in range(n)}
    return GroupTable(elements, mult, "e")


def symmetric_group(n=3):
    """
    Get the table of the symmetric group on ``n`` letters. The identity is
    named ``e``, other permutations ``p`` followed by their images, and
    ``x·y`` is the composite ``x ∘ y``.
    """
    perms = list(itertools.permutations(range(n)))
    identity = tuple(range(n))

    def name(perm):
        return "e" if perm == identity else "p" + "".join(str(i) for i in perm)

    mult = {}
    for x in perms:
        for y in perms:
            mult[(name(x), name(y))] = name(tuple(x[y[i]] for i in range(n)))
    return GroupTable([name(p) for p in perms], mult, "e")


def group_category(table, obj="*"):
    """
    Get the one-object category of a group, and the amalgam presentation of
    it over the terminal category, whose identity is sent to the unit.
    """
    G = monoid_category(table.elements, table.mult, table.unit, obj)
    R0 = terminal(obj)
    c = FinFunctor(R0, G, {obj: obj}, {R0.identity(obj): table.unit})
    return G, AmalgamPresentation(G, R0, c)


def group_structures(pres):
    """
    Get the Reedy structures of a group presentation: every element is in
    both classes of the group, and the terminal category is strict.
    """
    G, R0 = pres.R, pres.R0
    S = ReedyStructure(G, {o: 0 for o in G.objects}, G.arrows, G.arrows)
    S0 = StrictReedyStructure(R0, {o: 0 for o in R0.objects}, (), ())
    return S, S0


class Example(Frozen):
    """
    A named example: an amalgam ``presentation`` (or ``None``), the Reedy
    ``structure`` of the presented category and the strict structure
    ``base_structure`` of its R0.
    """

    def __init__(
        self, name, category, structure, presentation=None, base_structure=None
    ):
        self.name = name
        self.category = category
        self.structure = structure
        self.presentation = presentation
        self.base_structure = base_structure
        self._freeze()

    def __repr__(self):
        return f"Example {self.name}: {self.category!r}"


def group_example(name, table):
    G, pres = group_category(table)
    S, S0 = group_structures(pres)
    return Example(name, G, S, pres, S0)


GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "S3": lambda: symmetric_group(3),
}


class CubeSpec(Frozen):
    """
    Parameters of a truncated cube category: dimensions from 0 to
    ``max_dim`` (at most 3), with coordinate permutations when ``symmetries``
    is set, and projections forgetting coordinates when ``degeneracies`` is
    set.
    """

    def __init__(self, max_dim, symmetries=False, degeneracies=False):
        if isinstance(max_dim, bool) or not isinstance(max_dim, int):
            raise UnrollingError("the cube dimension must be an integer")
        if not 0 <= max_dim <= 3:
            raise UnrollingError(
                f"the cube dimension must be between 0 and 3, got {max_dim}"
            )
        self.max_dim = max_dim
        self.symmetries = bool(symmetries)
        self.degeneracies = bool(degeneracies)
        self._freeze()

    def __repr__(self):
        return (
            f"CubeSpec(max_dim={self.max_dim}, symmetries={self.symmetries}, "
            f"degeneracies={self.degeneracies})"
        )


def _cube_object(n):
    return f"[{n}]"


def _cube_arrow(m, n, coords):
    names = ["x" + str(c) if isinstance(c, int) else c for c in coords]
    return f"[{m}]>[{n}]({','.join(names)})"


def _cube_assignments(m, n, spec):
    """
    Every output coordinate of ``[m] → [n]`` is a constant ``"0"`` or ``"1"``
    or a distinct input coordinate.
    """
    choices = ["0", "1"] + list(range(m))
    result = []
    for coords in itertools.product(choices, repeat=n):
        inputs = [c for c in coords if isinstance(c, int)]
        if len(set(inputs)) != len(inputs):
            continue
        if not spec.degeneracies and len(inputs) != m:
            continue
        if not spec.symmetries and inputs != sorted(inputs):
            continue
        result.append(coords)
    return result


def _substitute(g, f):
    # g ∘ f: outputs of g read the outputs of f
    return tuple(c if isinstance(c, str) else f[c] for c in g)


def cube_category(spec):
    """
    Get the truncated cube category described by ``spec`` as an
    :py:class:`Example`. Objects are the dimensions ``[0]`` to ``[max_dim]``,
    the degree is the dimension, plus arrows use every input coordinate and
    minus arrows use no constant.

    With symmetries, the example carries the presentation of the symmetric
    cube category over the monotone one.
    """
    dims = range(spec.max_dim + 1)
    records = {}
    for m in dims:
        for n in dims:
            for coords in _cube_assignments(m, n, spec):
                records[_cube_arrow(m, n, coords)] = (m, n, coords)
    lookup = {(m, n, coords): a for a, (m, n, coords) in records.items()}

    compose = {}
    for f, (l, m, fc) in records.items():
        for g, (m2, n, gc) in records.items():
            if m2 == m:
                compose[(g, f)] = lookup[(l, n, _substitute(gc, fc))]
    category = FinCat(
        [_cube_object(n) for n in dims],
        [(a, _cube_object(m), _cube_object(n)) for a, (m, n, _) in records.items()],
        {_cube_object(n): _cube_arrow(n, n, tuple(range(n))) for n in dims},
        compose,
    )

    degree = {_cube_object(n): n for n in dims}
    plus, minus = set(), set()
    for a, (m, _, coords) in records.items():
        if len([c for c in coords if isinstance(c, int)]) == m:
            plus.add(a)
        if all(isinstance(c, int) for c in coords):
            minus.add(a)

    name = f"cube({spec.max_dim}{', symmetric' if spec.symmetries else ''}" + (
        ", degeneracies)" if spec.degeneracies else ")"
    )
    if not spec.symmetries:
        structure = StrictReedyStructure(category, degree, plus, minus)
        return Example(name, category, structure)

    structure = ReedyStructure(category, degree, plus, minus)
    monotone = cube_category(CubeSpec(spec.max_dim, False, spec.degeneracies))
    c = inclusion(monotone.category, category)
    pres = AmalgamPresentation(category, monotone.category, c)
    return Example(name, category, structure, pres, monotone.structure)


def codiscrete(names):
    """Get the category with exactly one arrow between any two objects"""
    names = list(names)

    def arrow(x, y):
        return f"id_{x}" if x == y else f"{x}>{y}"

    arrows = [(arrow(x, y), x, y) for x in names for y in names]
    compose = {
        (arrow(y, z), arrow(x, y)): arrow(x, z)
        for x in names
        for y in names
        for z in names
    }
    return FinCat(names, arrows, {x: arrow(x, x) for x in names}, compose)


def parallel_pair():
    """Get the category with two parallel arrows ``f, g: a → b``"""
    return FinCat(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {
            ("id_a", "id_a"): "id_a",
            ("id_b", "id_b"): "id_b",
            ("f", "id_a"): "f",
            ("id_b", "f"): "f",
            ("g", "id_a"): "g",
            ("id_b", "g"): "g",
        },
    )


def random_poset(n, rng, density=0.4):
    """Get a random poset on ``p0`` ... ``p{n-1}``, compatible with their order"""
    names = [f"p{i}" for i in range(n)]
    relation = [
        (names[i], names[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return poset(names, relation)


def random_category(rng, max_objects=3):
    """
    Get a random small category: a poset, a codiscrete groupoid, a cyclic
    group, a discrete category or the walking iso.
    """
    kind = int(rng.integers(5))
    n = int(rng.integers(1, max_objects + 1))
    if kind == 0:
        return random_poset(n, rng)
    elif kind == 1:
        return codiscrete([f"o{i}" for i in range(n)])
    elif kind == 2:
        G, _ = group_category(cyclic_group(int(rng.integers(1, 4))))
        return G
    elif kind == 3:
        return discrete([f"o{i}" for i in range(n)])
    else:
        return walking_iso()


def random_functor(rng, source, target, cap=None):
    """Pick a random functor between two small categories, or ``None``"""
    functors = list(enumerate_functors(source, target, cap=cap))
    if len(functors) == 0:
        return None
    return functors[int(rng.integers(len(functors)))]


def gaunt_catalog():
    """
    Get a list of ``(name, category, gaunt)`` for small categories, ``gaunt``
    telling whether their only isomorphisms are identities.
    """
    Z2, _ = group_category(cyclic_group(2))
    Z3, _ = group_category(cyclic_group(3))
    idempotent = monoid_category(
        ["e", "z"],
        {("e", "e"): "e", ("e", "z"): "z", ("z", "e"): "z", ("z", "z"): "z"},
        "e",
    )
    return [
        ("terminal", terminal(), True),
        ("discrete-2", discrete(["a", "b"]), True),
        ("walking-arrow", walking_arrow(), True),
        ("chain-3", poset(["a", "b", "c"], [("a", "b"), ("b", "c")]), True),
        ("span", poset(["a", "b", "c"], [("a", "b"), ("a", "c")]), True),
        (
            "diamond",
            poset(
                ["a", "b", "c", "d"],
                [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
            ),
            True,
        ),
        ("parallel-pair", parallel_pair(), True),
        ("idempotent", idempotent, True),
        ("walking-iso", walking_iso(), False),
        ("codiscrete-3", codiscrete(["a", "b", "c"]), False),
        ("Z2", Z2, False),
        ("Z3", Z3, False),
    ]


def non_dense_inclusion():
    """The discrete category on ``a`` and ``b`` included in the walking iso"""
    A = discrete(["a", "b"])
    return FinFunctor(A, walking_iso(), {"a": "a", "b": "b"}, {})


def non_liftable_presentation():
    """
    Get the presentation of the walking arrow over the discrete category on
    its objects, whose arrow lifts to nothing.
    """
    R = walking_arrow()
    R0 = discrete(["a", "b"])
    c = FinFunctor(R0, R, {"a": "a", "b": "b"}, {})
    return AmalgamPresentation(R, R0, c)


def non_cofibering_functor():
    """
    Get ``(G, SC, SD)``: the functor from the span ``x → z ← y`` collapsing
    ``x`` and ``y`` onto the source of the walking arrow, with its Reedy
    structures. The factorizations of ``a → b`` through ``z`` are disconnected.
    """
    C = poset(["x", "y", "z"], [("x", "z"), ("y", "z")])
    D = walking_arrow()
    G = FinFunctor(
        C, D, {"x": "a", "y": "a", "z": "b"}, {"x<=z": "a<=b", "y<=z": "a<=b"}
    )
    SC = StrictReedyStructure(C, {"x": 0, "y": 0, "z": 1}, C.arrows, ())
    SD = StrictReedyStructure(D, {"a": 0, "b": 1}, D.arrows, ())
    return G, SC, SD


def corrupted_structures():
    """
    Get a list of ``(name, structure)`` of invalid Reedy structures, each
    failing at least one axiom.
    """
    chain = poset(["a", "b"], [("a", "b")])
    Z2, _ = group_category(cyclic_group(2))
    return [
        # the arrow lowers the degree while plus
        ("plus-lowers-degree", ReedyStructure(chain, {"a": 1, "b": 0}, ["a<=b"], [])),
        # the arrow is in no class, it can not be factored
        ("no-factorization", ReedyStructure(chain, {"a": 0, "b": 1}, [], [])),
        # the arrow raises the degree while minus
        ("minus-raises-degree", ReedyStructure(chain, {"a": 0, "b": 1}, [], ["a<=b"])),
        # a non-identity iso in a strict structure
        ("iso-in-strict", StrictReedyStructure(Z2, {"*": 0}, Z2.arrows, Z2.arrows)),
    ]


def random_word(pres, rng, max_len=6):
    """Get a random composable word of arrows of R, in application order"""
    R = pres.R
    obj = R.objects[int(rng.integers(len(R.objects)))]
    letters = []
    for _ in range(int(rng.integers(max_len + 1))):
        outgoing = [a for a in R.arrows if R.dom(a) == obj]
        arrow = outgoing[int(rng.integers(len(outgoing)))]
        letters.append(arrow)
        obj = R.cod(arrow)
    return letters
