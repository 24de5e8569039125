import unittest

from _utils import remove_warnings

import unrolling
from unrolling.cattribe import (
    Diagram,
    DiagramMap,
    KanExtension,
    MatchingObject,
    RelativeMatching,
    TribeClasses,
    check_fiber_degrees,
    check_p_fibrant,
    check_tribe_factorization,
    constant_diagram,
    factorize_cat,
    find_lift,
    group_action_diagram,
    identity_map,
    is_anodyne_cat,
    is_isofibration,
    is_p_fibrant,
    is_p_fibration,
    is_pointwise_anodyne,
    is_reedy_fibrant,
    is_reedy_fibration,
    precompose,
    pullback,
    ran_along_p,
    ran_map_along_p,
    reedy_factorize,
    relative_matching,
    restrict_along_p,
    retract_demo,
    terminal_map,
    tribe_classes,
    tribe_factorize,
    tribe_lift,
    unit_iso,
    unit_map,
)
from unrolling.factcheck import check_cofibering
from unrolling.fincat import (
    CommaCategory,
    FinFunctor,
    constant_functor,
    discrete,
    identity_functor,
    inclusion,
    is_isomorphism,
    terminal,
    walking_arrow,
    walking_iso,
)
from unrolling.misc import NoLift, NonFunctorialDiagram, UnrollingError
from unrolling.reedy import (
    StrictReedyStructure,
    comma_reedy_structure,
    induce_DR_structure,
)
from unrolling.unroll import UnrolledCategory
from unrolling.zoo import GROUPS, group_example, non_cofibering_functor


def _group(name):
    return group_example(name, GROUPS[name]())


def _swap():
    x = discrete(["u", "v"])
    return x, FinFunctor(x, x, {"u": "v", "v": "u"}, {"id_u": "id_v", "id_v": "id_u"})


def _point_in_iso():
    """The object a of the walking iso, as an anodyne functor"""
    point = terminal("a", "id_a")
    return FinFunctor(point, walking_iso(), {"a": "a"}, {})


def _arrow_diagram(value_a, value_b, action):
    """A diagram over the walking arrow, acting from ``b`` to ``a``"""
    return Diagram(walking_arrow(), {"a": value_a, "b": value_b}, {"a<=b": action})


class TestDiagrams(unittest.TestCase):
    def test_constant(self):
        G = _group("Z2").category
        X = constant_diagram(G, walking_arrow())
        self.assertEqual(X.value("*"), walking_arrow())
        self.assertEqual(X.action("g"), identity_functor(walking_arrow()))

    def test_group_action(self):
        G = _group("Z2").category
        x, swap = _swap()
        X = group_action_diagram(G, x, {"g": swap})
        self.assertEqual(X.action("g"), swap)
        self.assertEqual(X.action("e"), identity_functor(x))

    def test_not_functorial(self):
        G = _group("Z3").category
        y = discrete(["u", "v", "w"])
        rotation = FinFunctor(
            y,
            y,
            {"u": "v", "v": "w", "w": "u"},
            {"id_u": "id_v", "id_v": "id_w", "id_w": "id_u"},
        )
        self.assertRaises(
            NonFunctorialDiagram, group_action_diagram, G, y, {"g": rotation}
        )
        rotation2 = rotation.then(rotation)
        X = group_action_diagram(G, y, {"g": rotation, "g2": rotation2})
        self.assertEqual(X.action("g2"), rotation2)

    def test_maps(self):
        G = _group("Z2").category
        x, swap = _swap()
        X = group_action_diagram(G, x, {"g": swap})
        Y = constant_diagram(G, x)
        self.assertRaises(
            NonFunctorialDiagram, DiagramMap, X, Y, {"*": identity_functor(x)}
        )
        self.assertRaises(NonFunctorialDiagram, DiagramMap, X, X, {})

        m = DiagramMap(X, X, {"*": swap})
        self.assertEqual(m.then(m), identity_map(X))
        self.assertEqual(m.inverse(), m)

        t = terminal_map(X)
        self.assertEqual(t.target.value("*").objects, ["*"])
        self.assertEqual(t.shape, G)


class TestCategoryClasses(unittest.TestCase):
    def test_isofibrations(self):
        self.assertTrue(is_isofibration(identity_functor(walking_iso())))
        to_point = constant_functor(walking_arrow(), terminal(), "*")
        self.assertTrue(is_isofibration(to_point))
        self.assertFalse(is_isofibration(_point_in_iso()))

    def test_anodyne(self):
        self.assertTrue(is_anodyne_cat(_point_in_iso()))
        to_point = constant_functor(walking_iso(), terminal(), "*")
        self.assertFalse(is_anodyne_cat(to_point))

    def test_factorize(self):
        for F in [
            constant_functor(walking_arrow(), terminal(), "*"),
            _point_in_iso(),
            inclusion(discrete(["a", "b"]), walking_iso()),
        ]:
            j, q = factorize_cat(F)
            self.assertEqual(j.then(q), F)
            self.assertTrue(is_anodyne_cat(j))
            self.assertTrue(is_isofibration(q))

    def test_lift(self):
        i = _point_in_iso()
        q = constant_functor(walking_iso(), terminal(), "*")
        top = i
        bottom = q
        L = find_lift(i, q, top, bottom)
        self.assertEqual(i.then(L), top)
        self.assertEqual(L.then(q), bottom)

    def test_no_lift(self):
        A = discrete(["a", "b"])
        i = inclusion(A, walking_arrow())
        q = constant_functor(A, terminal(), "*")
        bottom = constant_functor(walking_arrow(), terminal(), "*")
        self.assertRaises(NoLift, find_lift, i, q, identity_functor(A), bottom)

        # the square must commute
        q = identity_functor(A)
        bottom = constant_functor(walking_arrow(), A, "a")
        with self.assertRaises(UnrollingError) as context:
            find_lift(i, q, identity_functor(A), bottom)
        self.assertNotIsInstance(context.exception, NoLift)

    def test_retract(self):
        i = _point_in_iso()
        j, q, r = retract_demo(i)
        self.assertEqual(i.then(r), j)
        self.assertEqual(r.then(q), identity_functor(walking_iso()))

    def test_pullback(self):
        C = walking_arrow()
        P = pullback(constant_functor(C, terminal(), "*"), identity_functor(terminal()))
        self.assertEqual(len(P.category.objects), 2)
        self.assertEqual(len(P.category.arrows), 3)
        self.assertTrue(is_isomorphism(P.projections["0"]))

    def test_anodyne_pullback(self):
        j = _point_in_iso()
        _, s = factorize_cat(j)
        self.assertTrue(is_isofibration(s))
        for along in (identity_functor(j.target), s):
            P = pullback(j, along)
            self.assertTrue(is_anodyne_cat(P.projections["1"]))

    def test_isomorphisms(self):
        iso = walking_iso()
        flip = FinFunctor(iso, iso, {"a": "b", "b": "a"}, {"f": "f_inv", "f_inv": "f"})
        self.assertTrue(is_isomorphism(flip))
        self.assertTrue(is_isofibration(flip))
        _, swap = _swap()
        self.assertTrue(is_isofibration(swap))


class TestReedyDiagrams(unittest.TestCase):
    def test_matching_objects(self):
        C = walking_arrow()
        X = _arrow_diagram(terminal(), C, constant_functor(C, terminal(), "*"))
        at_b = MatchingObject(X, "b")
        self.assertEqual(len(at_b.category.objects), 1)
        self.assertEqual(at_b.map.source, C)

        at_a = MatchingObject(X, "a")
        self.assertEqual(len(at_a.slice.category.objects), 0)
        self.assertEqual(len(at_a.category.objects), 1)
        self.assertEqual(len(at_a.category.arrows), 1)

    def test_fibrancy(self):
        C = walking_arrow()
        X = _arrow_diagram(terminal(), C, constant_functor(C, terminal(), "*"))
        self.assertTrue(is_reedy_fibrant(X))

        Y = _arrow_diagram(walking_iso(), terminal("a", "id_a"), _point_in_iso())
        self.assertFalse(is_reedy_fibrant(Y))
        relative = RelativeMatching(terminal_map(Y), "b")
        self.assertFalse(is_isofibration(relative.map))
        self.assertEqual(
            relative_matching(terminal_map(Y), "b").map.target, relative.map.target
        )

    def test_factorize(self):
        C = walking_arrow()
        X = _arrow_diagram(terminal(), C, constant_functor(C, terminal(), "*"))
        m = terminal_map(X)
        j, q = reedy_factorize(m)
        composite = j.then(q)
        for obj in ("a", "b"):
            self.assertEqual(composite.components[obj], m.components[obj])
        self.assertTrue(is_pointwise_anodyne(j))
        self.assertTrue(is_reedy_fibration(q))
        self.assertTrue(is_reedy_fibrant(j.target))

    def test_factorize_warnings(self):
        messages = []
        unrolling.set_warnings_callback(messages.append)
        try:
            Y = _arrow_diagram(walking_iso(), terminal("a", "id_a"), _point_in_iso())
            j, q = reedy_factorize(terminal_map(Y))
        finally:
            unrolling.misc._set_default_warning_callback()
        self.assertEqual(messages, ["the source of this map is not Reedy fibrant"])
        self.assertTrue(is_reedy_fibration(q))

    def test_tribe_classes(self):
        C = walking_arrow()
        X = _arrow_diagram(terminal(), C, constant_functor(C, terminal(), "*"))
        classes = TribeClasses(terminal_map(X))
        self.assertTrue(classes.pointwise_fibration)
        self.assertFalse(classes.pointwise_anodyne)
        report = classes.to_report()
        self.assertFalse(report.verdict("pointwise-equivalence").passed)
        injective = report.verdict("pointwise-injective-on-objects")
        self.assertEqual(injective.witnesses, ["b"])
        self.assertEqual(tribe_classes(terminal_map(X)).components, classes.components)

    def test_precompose_cofibering(self):
        C, point = walking_arrow(), terminal()
        G = constant_functor(C, point, "*")
        SC = StrictReedyStructure(C, {"a": 0, "b": 1}, C.arrows, ())
        SD = StrictReedyStructure(point, {"*": 0}, point.arrows, ())
        self.assertTrue(check_cofibering(G, SC, SD).passed)

        q = terminal_map(Diagram(point, {"*": walking_iso()}))
        self.assertTrue(is_reedy_fibration(q))
        restricted = precompose(q, G)
        self.assertEqual(restricted.shape, C)
        self.assertEqual(restricted.source.value("b"), walking_iso())
        self.assertTrue(is_reedy_fibration(restricted))

    def test_precompose_non_cofibering(self):
        G, SC, SD = non_cofibering_functor()
        self.assertFalse(check_cofibering(G, SC, SD).passed)

        iso = walking_iso()
        X = _arrow_diagram(iso, iso, identity_functor(iso))
        q = terminal_map(X)
        self.assertTrue(is_reedy_fibration(q))

        # the matching map at z is the diagonal of the walking iso
        restricted = precompose(q, G)
        self.assertFalse(is_isofibration(RelativeMatching(restricted, "z").map))
        self.assertFalse(is_reedy_fibration(restricted))


class TestUnrolledDiagrams(unittest.TestCase):
    def setUp(self):
        self.example = _group("Z2")
        self.unrolled = UnrolledCategory(self.example.presentation)

    def test_restriction(self):
        X = constant_diagram(self.example.category, walking_arrow())
        pX = restrict_along_p(self.unrolled, X)
        self.assertEqual(pX.shape, self.unrolled.category)
        self.assertEqual(pX.value("g"), walking_arrow())

    def test_unit_iso(self):
        x, swap = _swap()
        X = group_action_diagram(self.example.category, x, {"g": swap})
        extension = KanExtension(self.unrolled, restrict_along_p(self.unrolled, X))
        self.assertEqual(len(extension.value("*").objects), 2)
        computed = ran_along_p(self.unrolled, restrict_along_p(self.unrolled, X))
        self.assertEqual(computed.value("*"), extension.value("*"))

        eta = unit_iso(self.unrolled, X, extension)
        self.assertTrue(is_isomorphism(eta.components["*"]))
        self.assertEqual(eta, unit_map(self.unrolled, X, extension))

        # the action of g on the extension is the swap, through the unit
        action = extension.action("g")
        component = eta.components["*"]
        self.assertEqual(component.then(action), swap.then(component))

    def test_kan_extension_of_maps(self):
        U = self.unrolled
        x, swap = _swap()
        X = group_action_diagram(self.example.category, x, {"g": swap})
        m = DiagramMap(X, X, {"*": swap})
        pm = restrict_along_p(U, m)
        extended = ran_map_along_p(U, pm)
        eta = unit_iso(U, X, extended.source)
        self.assertEqual(
            eta.then(extended).components["*"],
            m.then(unit_iso(U, X, extended.target)).components["*"],
        )

    def test_p_fibrancy(self):
        G = self.example.category
        arrow = constant_diagram(G, walking_arrow())
        self.assertTrue(is_p_fibrant(self.unrolled, arrow))
        self.assertTrue(is_p_fibration(self.unrolled, terminal_map(arrow)))
        report = check_p_fibrant(self.unrolled, arrow)
        self.assertTrue(report.passed)
        self.assertEqual(
            sorted(v.name for v in report.verdicts), ["matching-g", "matching-id_*"]
        )

        iso = constant_diagram(G, walking_iso())
        self.assertFalse(is_p_fibrant(self.unrolled, iso))
        self.assertFalse(check_p_fibrant(self.unrolled, iso).passed)

    def test_ran_of_fibrations(self):
        U = self.unrolled
        X = constant_diagram(self.example.category, walking_arrow())
        pm = restrict_along_p(U, terminal_map(X))
        self.assertTrue(is_reedy_fibration(pm))
        self.assertTrue(is_p_fibration(U, ran_map_along_p(U, pm)))

        _, q = reedy_factorize(pm)
        self.assertTrue(is_reedy_fibration(q))
        extended = ran_map_along_p(U, q)
        self.assertEqual(extended.shape, self.example.category)
        self.assertTrue(is_p_fibration(U, extended))

    def test_tribe_factorization(self):
        U = self.unrolled
        m = terminal_map(constant_diagram(self.example.category, walking_arrow()))
        J, Q = tribe_factorize(U, m)
        report = check_tribe_factorization(U, m, J, Q)
        self.assertTrue(report.passed, report.to_text())

        L = tribe_lift(U, J, Q, J, Q)
        self.assertEqual(J.then(L).components["*"], J.components["*"])
        self.assertEqual(L.then(Q).components["*"], Q.components["*"])

    def test_fiber_degrees(self):
        U = self.unrolled
        S = induce_DR_structure(U, self.example.structure, self.example.base_structure)
        comma = CommaCategory(U.projection, U.projection)
        report = check_fiber_degrees(U, comma, S, self.example.structure)
        self.assertTrue(report.passed)
        SC = comma_reedy_structure(comma, S, S)
        self.assertEqual(SC.base, comma.category)

    def test_shapes_must_be_direct(self):
        with remove_warnings:
            X = constant_diagram(self.example.category, walking_arrow())
            self.assertRaises(UnrollingError, reedy_factorize, terminal_map(X))


if __name__ == "__main__":
    unittest.main()
