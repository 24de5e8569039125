import networkx as nx

from .fincat import (
    CommaCategory,
    FinCat,
    FinDiagramShape,
    FinFunctor,
    OverCategory,
    Variance,
    check_diagram,
    constant_functor,
    decorated_category,
    enumerate_functors,
    finite_limit,
    identity_functor,
    inverse,
    is_equivalence,
    is_injective_on_objects,
    is_isomorphism,
    terminal,
)
from .misc import NoLift, NonFunctorialDiagram, UnrollingError, _warn
from .report import Report
from .utils import Frozen, tuple_id


class Diagram(Frozen):
    """
    A contravariant diagram of finite categories over a finite ``shape``: a
    :py:class:`FinCat` value for every object of the shape, and an action
    ``value(b) → value(a)`` for every arrow ``a → b``. Actions of identities
    can be left out.
    """

    def __init__(self, shape, values, actions=None, check=True):
        values = dict(values)
        actions = dict(actions or {})
        for obj in shape.objects:
            identity = shape.identity(obj)
            if identity not in actions and obj in values:
                actions[identity] = identity_functor(values[obj])
        if check:
            check_diagram(FinDiagramShape(shape, Variance.Opposite), values, actions)
        self.shape = shape
        self.values = values
        self.actions = actions
        self._freeze()

    def value(self, obj):
        return self.values[obj]

    def action(self, arrow):
        return self.actions[arrow]

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.values == other.values
            and self.actions == other.actions
        )

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return f"Diagram over {self.shape!r}"


class DiagramMap(Frozen):
    """
    A natural transformation between two diagrams with the same shape: a
    functor ``source.value(a) → target.value(a)`` for every object ``a``.
    """

    def __init__(self, source, target, components, check=True):
        components = dict(components)
        if check:
            if source.shape != target.shape:
                raise NonFunctorialDiagram("the diagrams have different shapes")
            for obj in source.shape.objects:
                if obj not in components:
                    raise NonFunctorialDiagram(f"missing component at '{obj}'")
                component = components[obj]
                if (
                    component.source != source.values[obj]
                    or component.target != target.values[obj]
                ):
                    raise NonFunctorialDiagram(
                        f"the component at '{obj}' has the wrong endpoints"
                    )
            for arrow in source.shape.arrows:
                a, b = source.shape.dom(arrow), source.shape.cod(arrow)
                first = components[b].then(target.actions[arrow])
                second = source.actions[arrow].then(components[a])
                if first != second:
                    raise NonFunctorialDiagram(f"the map is not natural at '{arrow}'")
        self.source = source
        self.target = target
        self.components = components
        self._freeze()

    @property
    def shape(self):
        return self.source.shape

    def then(self, other):
        """Get the composite ``other ∘ self``"""
        return DiagramMap(
            self.source,
            other.target,
            {o: c.then(other.components[o]) for o, c in self.components.items()},
            check=False,
        )

    def inverse(self):
        """Get the inverse of a pointwise isomorphism"""
        return DiagramMap(
            self.target,
            self.source,
            {o: inverse(c) for o, c in self.components.items()},
            check=False,
        )

    def __eq__(self, other):
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash(self.source)

    def __repr__(self):
        return f"DiagramMap over {self.shape!r}"


def identity_map(X):
    components = {o: identity_functor(c) for o, c in X.values.items()}
    return DiagramMap(X, X, components, False)


def terminal_diagram(shape):
    """Get the diagram with the terminal category everywhere"""
    point = terminal()
    return Diagram(shape, {o: point for o in shape.objects}, {
        a: identity_functor(point) for a in shape.arrows
    })


def terminal_map(X):
    """Get the unique map from ``X`` to the terminal diagram"""
    T = terminal_diagram(X.shape)
    point = T.values[X.shape.objects[0]] if X.shape.objects else terminal()
    return DiagramMap(
        X,
        T,
        {o: constant_functor(c, point, point.objects[0]) for o, c in X.values.items()},
        check=False,
    )


def constant_diagram(shape, category):
    """Get the diagram with the same value everywhere and identity actions"""
    action = identity_functor(category)
    return Diagram(
        shape, {o: category for o in shape.objects}, {a: action for a in shape.arrows}
    )


def group_action_diagram(group, category, action):
    """
    Get the diagram over the one-object category ``group`` acting on
    ``category``; ``action`` maps the elements to endofunctors of
    ``category``. Missing elements act trivially.
    """
    (obj,) = group.objects
    actions = {}
    for g in group.arrows:
        actions[g] = action.get(g, identity_functor(category))
    return Diagram(group, {obj: category}, actions)


def precompose(X, G):
    """
    Restrict the diagram ``X`` along the functor of shapes ``G``, or a diagram
    map if ``X`` is a :py:class:`DiagramMap`.
    """
    if isinstance(X, DiagramMap):
        return DiagramMap(
            precompose(X.source, G),
            precompose(X.target, G),
            {o: X.components[G.map_object(o)] for o in G.source.objects},
            check=False,
        )
    return Diagram(
        G.source,
        {o: X.values[G.map_object(o)] for o in G.source.objects},
        {a: X.actions[G.map_arrow(a)] for a in G.source.arrows},
        check=False,
    )


def restrict_along_p(unrolled, X):
    """Get ``p^*X``: the diagram (or map) ``X`` over R restricted along p"""
    return precompose(X, unrolled.projection)


def is_isofibration(functor):
    """
    Check that every isomorphism ``F(a) ≅ b`` of the target lifts to an
    isomorphism ``a ≅ a'`` of the source.
    """
    A, B = functor.source, functor.target
    lifted = {}
    for psi in A.isomorphisms():
        lifted.setdefault(A.dom(psi), set()).add(functor.map_arrow(psi))
    for a in A.objects:
        Fa = functor.map_object(a)
        for b in B.objects:
            for phi in B.hom(Fa, b):
                if B.inverse(phi) is not None and phi not in lifted.get(a, ()):
                    return False
    return True


def is_anodyne_cat(functor):
    """Check that ``functor`` is an equivalence injective on objects"""
    return is_injective_on_objects(functor) and is_equivalence(functor)


def factorize_cat(functor):
    """
    Factor ``functor: A → B`` through its mapping path category ``E``, whose
    objects are the pairs ``(a, φ: F(a) ≅ b)`` and whose arrows are the arrows
    of A. Returns ``(j, q)`` with ``j: A → E`` anodyne and ``q: E → B`` an
    isofibration, such that ``q ∘ j = functor``.
    """
    A, B = functor.source, functor.target
    decorations = []
    for a in A.objects:
        Fa = functor.map_object(a)
        for b in B.objects:
            for phi in B.hom(Fa, b):
                if B.inverse(phi) is not None:
                    decorations.append((a, phi))
    E, underlying = decorated_category(A, decorations, lambda h, s, t: True)

    j = FinFunctor(
        A,
        E,
        {a: tuple_id((a, B.identity(functor.map_object(a)))) for a in A.objects},
        {
            h: tuple_id(
                (
                    h,
                    tuple_id((A.dom(h), B.identity(functor.map_object(A.dom(h))))),
                    tuple_id((A.cod(h), B.identity(functor.map_object(A.cod(h))))),
                )
            )
            for h in A.arrows
        },
        check=False,
    )
    phis = {tuple_id(d): d[1] for d in decorations}
    objects = {e: B.cod(phi) for e, phi in phis.items()}
    arrows = {}
    for e in E.arrows:
        phi = phis[E.dom(e)]
        phi2 = phis[E.cod(e)]
        Fh = functor.map_arrow(underlying.map_arrow(e))
        arrows[e] = B.compose(B.compose(phi2, Fh), B.inverse(phi))
    q = FinFunctor(E, B, objects, arrows, check=False)
    return j, q


def find_lift(i, q, top, bottom, cap=None):
    """
    Solve the lifting problem of ``i: A → B`` against ``q: X → Y`` for the
    commutative square ``q ∘ top = bottom ∘ i``: get a functor ``L: B → X``
    with ``L ∘ i = top`` and ``q ∘ L = bottom``.

    This raises :py:class:`NoLift` when no such functor exists, and
    :py:class:`SizeCapExceeded` when the search is too large.
    """
    if top.then(q) != i.then(bottom):
        raise UnrollingError("the lifting square does not commute")
    B, X = i.target, q.source
    over_objects, over_arrows = {}, {}
    for x in X.objects:
        over_objects.setdefault(q.map_object(x), []).append(x)
    for f in X.arrows:
        over_arrows.setdefault(q.map_arrow(f), []).append(f)

    objects = {b: list(over_objects.get(bottom.map_object(b), [])) for b in B.objects}
    arrows = {g: list(over_arrows.get(bottom.map_arrow(g), [])) for g in B.arrows}
    for a in i.source.objects:
        b, x = i.map_object(a), top.map_object(a)
        objects[b] = [x] if x in objects[b] else []
    for f in i.source.arrows:
        g, h = i.map_arrow(f), top.map_arrow(f)
        arrows[g] = [h] if h in arrows[g] else []

    for lift in enumerate_functors(B, X, objects, arrows, cap=cap):
        return lift
    raise NoLift("no diagonal filler for this lifting square")


def retract_demo(i, cap=None):
    """
    Exhibit an anodyne functor ``i: A → B`` as a retract of the anodyne part
    ``j`` of its factorization ``i = q ∘ j``, by lifting ``i`` against ``q``.
    Returns ``(j, q, r)`` with ``r ∘ i = j`` and ``q ∘ r = id``.
    """
    j, q = factorize_cat(i)
    r = find_lift(i, q, j, identity_functor(i.target), cap=cap)
    return j, q, r


def _cospan():
    return FinCat(
        ["0", "1", "2"],
        [
            ("id_0", "0", "0"),
            ("id_1", "1", "1"),
            ("id_2", "2", "2"),
            ("l", "0", "2"),
            ("r", "1", "2"),
        ],
        {"0": "id_0", "1": "id_1", "2": "id_2"},
        {
            ("id_0", "id_0"): "id_0",
            ("id_1", "id_1"): "id_1",
            ("id_2", "id_2"): "id_2",
            ("l", "id_0"): "l",
            ("id_2", "l"): "l",
            ("r", "id_1"): "r",
            ("id_2", "r"): "r",
        },
    )


def pullback(F, G):
    """
    Get the pullback of ``F: A → C`` and ``G: B → C`` as a :py:class:`Limit`
    over the cospan ``0 → 2 ← 1``, with ``A`` at ``0`` and ``B`` at ``1``.
    """
    shape = FinDiagramShape(_cospan(), Variance.Plain)
    values = {"0": F.source, "1": G.source, "2": F.target}
    actions = {
        "id_0": identity_functor(F.source),
        "id_1": identity_functor(G.source),
        "id_2": identity_functor(F.target),
        "l": F,
        "r": G,
    }
    return finite_limit(shape, values, actions)


def _pullback_legs(P, first, second):
    """Get the legs of a cone over a pullback from its first two legs"""
    return {"0": first, "1": second, "2": first.then(P.actions["l"])}


def _matching_limit(over, values, actions):
    S = over.category
    forget = over.forget
    return finite_limit(
        FinDiagramShape(S, Variance.Opposite),
        {o: values[forget.map_object(o)] for o in S.objects},
        {a: actions[forget.map_arrow(a)] for a in S.arrows},
    )


def _matching_map(over, limit, values, actions, obj):
    legs = {o: actions[over.arrow_of(o)] for o in over.category.objects}
    return limit.mediating(values[obj], legs)


class MatchingObject(Frozen):
    """
    The matching object of a diagram at ``obj``: the limit of its values over
    the non-identity arrows into ``obj``, with the matching ``map`` from the
    value at ``obj``.
    """

    def __init__(self, X, obj):
        self.slice = OverCategory(X.shape, obj, proper=True)
        self.limit = _matching_limit(self.slice, X.values, X.actions)
        self.category = self.limit.category
        self.map = _matching_map(self.slice, self.limit, X.values, X.actions, obj)
        self._freeze()

    def __repr__(self):
        return f"MatchingObject {self.category!r}"


def matching_object(X, obj):
    return MatchingObject(X, obj)


class RelativeMatching(Frozen):
    """
    The relative matching map of a diagram map ``m: X → Y`` at ``obj``: the
    functor from ``X(obj)`` to the pullback of ``M X → M Y ← Y(obj)``.
    """

    def __init__(self, m, obj, slice=None):
        X, Y = m.source, m.target
        over = slice or OverCategory(X.shape, obj, proper=True)
        MX = _matching_limit(over, X.values, X.actions)
        MY = _matching_limit(over, Y.values, Y.actions)
        Mm = MY.mediating(
            MX.category,
            {
                o: MX.projections[o].then(m.components[over.forget.map_object(o)])
                for o in over.category.objects
            },
        )
        matching_Y = _matching_map(over, MY, Y.values, Y.actions, obj)
        P = pullback(Mm, matching_Y)
        matching_X = _matching_map(over, MX, X.values, X.actions, obj)
        self.slice = over
        self.source_limit = MX
        self.target_limit = MY
        self.pullback = P
        self.map = P.mediating(
            X.values[obj], _pullback_legs(P, matching_X, m.components[obj])
        )
        self._freeze()


def relative_matching(m, obj):
    return RelativeMatching(m, obj)


def is_reedy_fibration(m):
    """
    Check that every relative matching map of ``m`` is an isofibration. The
    shape of ``m`` should be a direct category.
    """
    return all(is_isofibration(RelativeMatching(m, o).map) for o in m.shape.objects)


def is_reedy_fibrant(X):
    return is_reedy_fibration(terminal_map(X))


def is_p_fibration(unrolled, m):
    """Check that ``p^*m`` is a Reedy fibration"""
    return is_reedy_fibration(restrict_along_p(unrolled, m))


def is_p_fibrant(unrolled, X):
    return is_reedy_fibrant(restrict_along_p(unrolled, X))


def _direct_order(shape):
    graph = nx.DiGraph()
    graph.add_nodes_from(shape.objects)
    for a in shape.arrows:
        if not shape.is_identity(a):
            if shape.dom(a) == shape.cod(a):
                raise UnrollingError(f"the shape has a non-identity endo-arrow '{a}'")
            graph.add_edge(shape.dom(a), shape.cod(a))
    position = {o: i for i, o in enumerate(shape.objects)}
    try:
        return list(nx.lexicographical_topological_sort(graph, key=position.get))
    except nx.NetworkXUnfeasible:
        raise UnrollingError("the shape is not a direct category")


def reedy_factorize(m):
    """
    Factor a map ``m: X → Y`` of diagrams over a direct shape as a pointwise
    anodyne map ``j: X → W`` followed by a Reedy fibration ``q: W → Y``, by
    induction along the shape. Returns ``(j, q)``.

    ``X`` and ``Y`` should be Reedy fibrant, a warning is emitted when they
    are not.
    """
    X, Y = m.source, m.target
    shape = m.shape
    for name, diagram in (("source", X), ("target", Y)):
        if not is_reedy_fibrant(diagram):
            _warn(f"the {name} of this map is not Reedy fibrant")

    values, actions = {}, {}
    j, q = {}, {}
    for obj in _direct_order(shape):
        over = OverCategory(shape, obj, proper=True)
        MW = _matching_limit(over, values, actions)
        MY = _matching_limit(over, Y.values, Y.actions)
        Mq = MY.mediating(
            MW.category,
            {
                o: MW.projections[o].then(q[over.forget.map_object(o)])
                for o in over.category.objects
            },
        )
        P = pullback(Mq, _matching_map(over, MY, Y.values, Y.actions, obj))
        into_MW = MW.mediating(
            X.values[obj],
            {
                o: X.actions[over.arrow_of(o)].then(j[over.forget.map_object(o)])
                for o in over.category.objects
            },
        )
        comparison = P.mediating(
            X.values[obj], _pullback_legs(P, into_MW, m.components[obj])
        )
        j_obj, q_obj = factorize_cat(comparison)
        E = j_obj.target
        values[obj] = E
        actions[shape.identity(obj)] = identity_functor(E)
        to_MW = q_obj.then(P.projections["0"])
        for o in over.category.objects:
            actions[over.arrow_of(o)] = to_MW.then(MW.projections[o])
        j[obj] = j_obj
        q[obj] = q_obj.then(P.projections["1"])

    W = Diagram(shape, values, actions)
    return DiagramMap(X, W, j), DiagramMap(W, Y, q)


class KanExtension(Diagram):
    """
    The right Kan extension ``p_*S`` of a diagram over the unrolled category,
    computed pointwise: its value at ``r`` is the limit of ``S`` over the
    comma category of the ``(Z, φ: p(Z) → r)``. ``limits`` and ``commas``
    keep these limits and comma categories.
    """

    def __init__(self, unrolled, S):
        R = unrolled.presentation.R
        p = unrolled.projection
        point = terminal()
        commas, limits = {}, {}
        for r in R.objects:
            comma = CommaCategory(p, constant_functor(point, R, r))
            J = comma.category
            limits[r] = finite_limit(
                FinDiagramShape(J, Variance.Opposite),
                {o: S.values[comma.pi0.map_object(o)] for o in J.objects},
                {a: S.actions[comma.pi0.map_arrow(a)] for a in J.arrows},
            )
            commas[r] = comma

        actions = {}
        for rho in R.arrows:
            r, r2 = R.dom(rho), R.cod(rho)
            legs = {}
            for o in commas[r].category.objects:
                Z, star, phi = commas[r].triple(o)
                moved = commas[r2].object_for(Z, star, R.compose(rho, phi))
                legs[o] = limits[r2].projections[moved]
            actions[rho] = limits[r].mediating(limits[r2].category, legs)

        self.unrolled = unrolled
        self.diagram = S
        self.commas = commas
        self.limits = limits
        values = {r: limits[r].category for r in R.objects}
        super().__init__(R, values, actions, check=False)


def ran_along_p(unrolled, S):
    """Get the right Kan extension ``p_*S`` of a diagram over the unrolled category"""
    return KanExtension(unrolled, S)


def ran_map_along_p(unrolled, m, source=None, target=None):
    """
    Get ``p_*m`` for a map ``m`` of diagrams over the unrolled category.
    Already computed extensions of the endpoints can be given.
    """
    source = source or KanExtension(unrolled, m.source)
    target = target or KanExtension(unrolled, m.target)
    components = {}
    for r, limit in source.limits.items():
        comma = source.commas[r]
        legs = {
            o: limit.projections[o].then(m.components[comma.pi0.map_object(o)])
            for o in comma.category.objects
        }
        components[r] = target.limits[r].mediating(limit.category, legs)
    return DiagramMap(source, target, components, check=False)


def unit_map(unrolled, X, extension=None):
    """
    Get the comparison ``η: X → p_*p^*X``, sending ``x`` in ``X(r)`` to the
    family of the ``X(φ)(x)`` for ``φ: p(Z) → r``.
    """
    extension = extension or KanExtension(unrolled, restrict_along_p(unrolled, X))
    components = {}
    for r, limit in extension.limits.items():
        comma = extension.commas[r]
        legs = {
            o: X.actions[comma.triple(o)[2]] for o in comma.category.objects
        }
        components[r] = limit.mediating(X.values[r], legs)
    return DiagramMap(X, extension, components, check=False)


def unit_iso(unrolled, X, extension=None):
    """
    Get the comparison ``η: X → p_*p^*X`` and check it is a pointwise
    isomorphism of categories.
    """
    eta = unit_map(unrolled, X, extension)
    for r, component in eta.components.items():
        if not is_isomorphism(component):
            raise UnrollingError(f"the unit is not an isomorphism at '{r}'")
    return eta


class TribeClasses(Frozen):
    """
    The tribe classes of each component of a diagram map: isofibration,
    equivalence, and injectivity on objects. ``pointwise_fibration`` and
    ``pointwise_anodyne`` aggregate them.
    """

    def __init__(self, m):
        components = {}
        for obj, F in m.components.items():
            components[obj] = {
                "isofibration": is_isofibration(F),
                "equivalence": is_equivalence(F),
                "injective-on-objects": is_injective_on_objects(F),
            }
        self.components = components
        self._freeze()

    @property
    def pointwise_fibration(self):
        return all(c["isofibration"] for c in self.components.values())

    @property
    def pointwise_anodyne(self):
        return all(
            c["equivalence"] and c["injective-on-objects"]
            for c in self.components.values()
        )

    def to_report(self, title="tribe classes"):
        report = Report(title)
        for name in ("isofibration", "equivalence", "injective-on-objects"):
            bad = [o for o, c in self.components.items() if not c[name]]
            report.add(f"pointwise-{name}", len(bad) == 0, bad)
        return report


def tribe_classes(m):
    return TribeClasses(m)


def is_pointwise_anodyne(m):
    return all(is_anodyne_cat(c) for c in m.components.values())


def tribe_factorize(unrolled, m):
    """
    Factor a map ``m: X → Y`` of diagrams over R as a pointwise anodyne map
    followed by a p-fibration: ``p^*m`` is factored over the unrolled
    category, the factors are pushed back with ``p_*``, and the endpoints are
    corrected with the isomorphisms ``X ≅ p_*p^*X``. Returns ``(J, Q)`` with
    ``Q ∘ J = m``.
    """
    X, Y = m.source, m.target
    pm = restrict_along_p(unrolled, m)
    j, q = reedy_factorize(pm)
    KX = KanExtension(unrolled, pm.source)
    KW = KanExtension(unrolled, j.target)
    KY = KanExtension(unrolled, pm.target)
    eta_X = unit_iso(unrolled, X, KX)
    eta_Y = unit_iso(unrolled, Y, KY)
    J = eta_X.then(ran_map_along_p(unrolled, j, KX, KW))
    Q = ran_map_along_p(unrolled, q, KW, KY).then(eta_Y.inverse())
    return J, Q


def check_tribe_factorization(unrolled, m, J, Q):
    """Check the classes and the composite of a tribe factorization of ``m``"""
    report = Report("tribe factorization")
    report.add("first-pointwise-anodyne", is_pointwise_anodyne(J))
    report.add("second-p-fibration", is_p_fibration(unrolled, Q))
    composite = J.then(Q)
    bad = [o for o in m.shape.objects if composite.components[o] != m.components[o]]
    report.add("composite", len(bad) == 0, bad, "the factors compose back to the map")
    report.add("middle-p-fibrant", is_p_fibrant(unrolled, J.target))
    return report


def _reedy_lift(i, q, top, bottom, cap=None):
    """Lift a pointwise anodyne map against a Reedy fibration, along the shape"""
    shape = i.shape
    A, B, X = i.source, i.target, q.source
    lift = {}
    for obj in _direct_order(shape):
        relative = RelativeMatching(q, obj)
        over = relative.slice
        MX, P = relative.source_limit, relative.pullback
        into_MX = MX.mediating(
            B.values[obj],
            {
                o: B.actions[over.arrow_of(o)].then(lift[over.forget.map_object(o)])
                for o in over.category.objects
            },
        )
        square_bottom = P.mediating(
            B.values[obj], _pullback_legs(P, into_MX, bottom.components[obj])
        )
        lift[obj] = find_lift(
            i.components[obj],
            relative.map,
            top.components[obj],
            square_bottom,
            cap=cap,
        )
    return DiagramMap(B, X, lift)


def tribe_lift(unrolled, i, q, top, bottom, cap=None):
    """
    Solve a lifting problem of a pointwise anodyne map ``i: A → B`` against a
    p-fibration ``q: X → Y`` of diagrams over R, for the commutative square
    ``q ∘ top = bottom ∘ i``. The problem is restricted along p, solved over
    the unrolled category, and pushed back along p. Returns ``L: B → X``.
    """
    pi, pq = restrict_along_p(unrolled, i), restrict_along_p(unrolled, q)
    ptop, pbottom = restrict_along_p(unrolled, top), restrict_along_p(unrolled, bottom)
    L = _reedy_lift(pi, pq, ptop, pbottom, cap=cap)
    KB = KanExtension(unrolled, L.source)
    KX = KanExtension(unrolled, L.target)
    eta_B = unit_iso(unrolled, i.target, KB)
    eta_X = unit_iso(unrolled, q.source, KX)
    return eta_B.then(ran_map_along_p(unrolled, L, KB, KX)).then(eta_X.inverse())


def check_fiber_degrees(unrolled, comma, structure, base_structure):
    """
    Check that the fibers of the second projection of ``p ↓ p`` are finite,
    with degrees of their first components bounded by ``deg(p(α)) + 1``.
    """
    report = Report("fiber degrees")
    p = unrolled.projection
    bad = []
    for alpha in unrolled.category.objects:
        bound = base_structure.degree[p.map_object(alpha)] + 1
        for obj in comma.category.objects:
            Z, Z2, _ = comma.triple(obj)
            if Z2 == alpha and structure.degree[Z] > bound:
                bad.append(f"{obj} over {alpha}")
    report.add("degree-bound", len(bad) == 0, bad, "degrees at most deg(p(α)) + 1")
    return report


def check_p_fibrant(unrolled, X):
    """
    Check that ``X`` is p-fibrant, one verdict per object of the unrolled
    category: its relative matching map must be an isofibration.
    """
    report = Report("p-fibrancy")
    m = terminal_map(restrict_along_p(unrolled, X))
    for obj in m.shape.objects:
        passed = is_isofibration(RelativeMatching(m, obj).map)
        report.add(f"matching-{obj}", passed, [] if passed else [obj])
    return report
