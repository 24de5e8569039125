import unittest

from unrolling.fincat import (
    CommaCategory,
    FinCat,
    FinDiagramShape,
    FinFunctor,
    OverCategory,
    Variance,
    canonical,
    check_limit,
    comma_category,
    connected_components,
    constant_functor,
    discrete,
    enumerate_functors,
    fiber,
    finite_limit,
    full_subcategory,
    identity_functor,
    inverse,
    is_equivalence,
    is_fully_faithful,
    is_connected,
    is_gaunt,
    is_iso,
    is_isomorphism,
    monoid_category,
    opposite,
    over_category,
    poset,
    rename,
    terminal,
    validate_category,
    walking_arrow,
    walking_iso,
)
from unrolling.misc import (
    ConeError,
    FunctorError,
    IdentityLawViolation,
    InvalidComposite,
    MissingComposite,
    NonAssociative,
    NotComposable,
    SizeCapExceeded,
    UnrollingError,
)


def _arrow_without_composites():
    return FinCat(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b", ("f", "id_a"): "f"},
    )


def _swap():
    C = walking_iso()
    return FinFunctor(C, C, {"a": "b", "b": "a"}, {"f": "f_inv", "f_inv": "f"})


class TestFinCat(unittest.TestCase):
    def test_repr(self):
        self.assertEqual(
            walking_arrow().__repr__(), "FinCat with 2 objects and 3 arrows"
        )

    def test_walking_arrow(self):
        C = walking_arrow()
        self.assertEqual(C.objects, ["a", "b"])
        self.assertEqual(C.arrows, ["id_a", "id_b", "a<=b"])
        self.assertEqual(C.dom("a<=b"), "a")
        self.assertEqual(C.cod("a<=b"), "b")
        self.assertEqual(C.identity("b"), "id_b")
        self.assertTrue(C.is_identity("id_a"))
        self.assertFalse(C.is_identity("a<=b"))

        self.assertEqual(C.compose("a<=b", "id_a"), "a<=b")
        self.assertEqual(C.compose("id_b", "a<=b"), "a<=b")
        self.assertRaises(NotComposable, C.compose, "id_a", "a<=b")

        self.assertEqual(C.hom("a", "b"), ["a<=b"])
        self.assertEqual(C.hom("b", "a"), [])

    def test_poset(self):
        C = poset(["x", "y", "z"], [("x", "y"), ("y", "z")])
        self.assertEqual(len(C.arrows), 6)
        self.assertEqual(C.compose("y<=z", "x<=y"), "x<=z")
        self.assertEqual(C.compose_path(["x<=y", "y<=z"]), "x<=z")
        self.assertRaises(UnrollingError, C.compose_path, [])

    def test_unknown_identifiers(self):
        C = walking_arrow()
        self.assertRaises(UnrollingError, C.hom, "a", "nope")
        self.assertRaises(UnrollingError, C.dom, "nope")

    def test_missing_composite(self):
        with self.assertRaises(MissingComposite) as context:
            _arrow_without_composites()
        self.assertEqual(context.exception.g, "id_b")
        self.assertEqual(context.exception.f, "f")

    def test_invalid_composite(self):
        self.assertRaises(
            InvalidComposite,
            FinCat,
            ["a", "b"],
            [("id_a", "a", "a"), ("id_b", "b", "b")],
            {"a": "id_a", "b": "id_b"},
            {
                ("id_a", "id_a"): "id_a",
                ("id_b", "id_b"): "id_b",
                ("id_a", "id_b"): "id_a",
            },
        )

    def test_identity_law(self):
        mult = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "x"}
        self.assertRaises(IdentityLawViolation, monoid_category, ["e", "x"], mult, "x")

    def test_associativity(self):
        mult = {
            ("e", "e"): "e",
            ("e", "a"): "a",
            ("e", "b"): "b",
            ("a", "e"): "a",
            ("b", "e"): "b",
            ("a", "a"): "a",
            ("a", "b"): "b",
            ("b", "a"): "a",
            ("b", "b"): "a",
        }
        self.assertRaises(NonAssociative, monoid_category, ["e", "a", "b"], mult, "e")

    def test_opposite(self):
        C = walking_arrow()
        op = opposite(C)
        self.assertEqual(op.dom("a<=b"), "b")
        self.assertEqual(op.cod("a<=b"), "a")
        self.assertEqual(opposite(op), C)

    def test_isomorphisms(self):
        C = walking_iso()
        self.assertEqual(C.inverse("f"), "f_inv")
        self.assertEqual(C.inverse("id_a"), "id_a")
        self.assertEqual(sorted(C.isomorphisms()), ["f", "f_inv", "id_a", "id_b"])
        self.assertFalse(is_gaunt(C))

        self.assertEqual(walking_arrow().inverse("a<=b"), None)
        self.assertTrue(is_gaunt(walking_arrow()))

    def test_connected_components(self):
        self.assertEqual(connected_components(discrete(["x", "y"])), [["x"], ["y"]])
        self.assertEqual(connected_components(walking_arrow()), [["a", "b"]])
        self.assertFalse(is_connected(discrete(["x", "y"])))
        self.assertTrue(is_connected(walking_arrow()))
        self.assertTrue(is_iso(walking_iso(), "f"))
        self.assertFalse(is_iso(walking_arrow(), "a<=b"))

    def test_validate(self):
        description = {
            "objects": ["a", "b"],
            "arrows": [("id_a", "a", "a"), ("id_b", "b", "b"), ("a<=b", "a", "b")],
            "identities": {"a": "id_a", "b": "id_b"},
            "compose": {
                ("id_a", "id_a"): "id_a",
                ("id_b", "id_b"): "id_b",
                ("a<=b", "id_a"): "a<=b",
                ("id_b", "a<=b"): "a<=b",
            },
        }
        self.assertEqual(validate_category(description), walking_arrow())

        del description["compose"][("id_b", "a<=b")]
        self.assertRaises(MissingComposite, validate_category, description)
        del description["compose"]
        with self.assertRaises(UnrollingError) as cm:
            validate_category(description)
        self.assertEqual(
            str(cm.exception), "category description is missing 'compose'"
        )

    def test_renaming(self):
        C = canonical(walking_arrow())
        self.assertEqual(C.objects, ["o0", "o1"])
        self.assertEqual(C.arrows, ["a1", "a2", "a0"])
        self.assertEqual(C.dom("a0"), "o0")
        self.assertEqual(C.compose("a0", "a1"), "a0")

        C = rename(walking_arrow(), {"a": "x"}, {"a<=b": "f"})
        self.assertEqual(C.objects, ["x", "b"])
        self.assertEqual(C.hom("x", "b"), ["f"])
        self.assertRaises(UnrollingError, rename, walking_arrow(), {"a": "b"}, {})

    def test_full_subcategory(self):
        C = poset(["x", "y", "z"], [("x", "y"), ("y", "z")])
        sub = full_subcategory(C, ["x", "z"])
        self.assertEqual(sub.objects, ["x", "z"])
        self.assertEqual(sub.arrows, ["id_x", "id_z", "x<=z"])
        self.assertEqual(sub.compose("x<=z", "id_x"), "x<=z")

    def test_frozen(self):
        C = walking_arrow()
        with self.assertRaises(TypeError):
            C.foo = 3


class TestFinFunctor(unittest.TestCase):
    def test_functor(self):
        C = walking_arrow()
        F = FinFunctor(C, terminal(), {"a": "*", "b": "*"}, {"a<=b": "id_*"})
        self.assertEqual(F.map_object("b"), "*")
        self.assertEqual(F.map_arrow("id_a"), "id_*")
        self.assertEqual(F.object_map, {"a": "*", "b": "*"})
        self.assertEqual(identity_functor(C).then(F), F)
        self.assertEqual(F, constant_functor(C, terminal(), "*"))

    def test_errors(self):
        C = walking_arrow()
        self.assertRaises(
            FunctorError, FinFunctor, terminal(), C, {"*": "a"}, {"id_*": "a<=b"}
        )
        self.assertRaises(FunctorError, FinFunctor, C, terminal(), {"a": "*"}, {})

        F = identity_functor(C)
        G = identity_functor(terminal())
        self.assertRaises(FunctorError, F.then, G)

    def test_isomorphism(self):
        swap = _swap()
        self.assertTrue(is_isomorphism(swap))
        self.assertEqual(swap.then(swap), identity_functor(walking_iso()))
        self.assertEqual(inverse(swap), swap)

        F = constant_functor(walking_iso(), terminal(), "*")
        self.assertFalse(is_isomorphism(F))
        self.assertRaises(FunctorError, inverse, F)

    def test_equivalence(self):
        F = constant_functor(walking_iso(), terminal(), "*")
        self.assertTrue(is_fully_faithful(F))
        self.assertTrue(is_equivalence(F))

        G = constant_functor(walking_arrow(), terminal(), "*")
        self.assertFalse(is_fully_faithful(G))
        self.assertFalse(is_equivalence(G))

    def test_enumerate_functors(self):
        C = walking_arrow()
        self.assertEqual(len(list(enumerate_functors(C, C))), 3)
        self.assertEqual(len(list(enumerate_functors(walking_iso(), C))), 2)
        restricted = enumerate_functors(C, C, object_candidates={"a": ["b"]})
        self.assertEqual(len(list(restricted)), 1)

        with self.assertRaises(SizeCapExceeded):
            list(enumerate_functors(C, C, cap=1))


class TestLimits(unittest.TestCase):
    def test_product(self):
        C = walking_arrow()
        pair = discrete(["0", "1"])
        limit = finite_limit(
            FinDiagramShape(pair),
            {"0": C, "1": C},
            {"id_0": identity_functor(C), "id_1": identity_functor(C)},
        )
        self.assertEqual(limit.category.objects, ["(a,a)", "(a,b)", "(b,a)", "(b,b)"])
        self.assertEqual(len(limit.category.arrows), 9)
        self.assertEqual(limit.projections["1"].map_object("(a,b)"), "b")
        self.assertEqual(limit.object_family("(b,a)"), {"0": "b", "1": "a"})

        diagonal = limit.mediating(
            C, {"0": identity_functor(C), "1": identity_functor(C)}
        )
        self.assertEqual(diagonal.map_object("b"), "(b,b)")
        self.assertTrue(check_limit(limit, [C, discrete(["x", "y"])]))

        self.assertRaises(ConeError, limit.mediating, C, {"0": identity_functor(C)})

    def test_opposite_variance(self):
        C = walking_arrow()
        point = terminal()
        F = constant_functor(C, point, "*")
        shape = FinDiagramShape(C, Variance.Opposite)
        values = {"a": point, "b": C}
        actions = {
            "id_a": identity_functor(point),
            "id_b": identity_functor(C),
            "a<=b": F,
        }
        limit = finite_limit(shape, values, actions)
        self.assertEqual(len(limit.category.objects), 2)
        self.assertEqual(len(limit.category.arrows), 3)

        # the action must go from the value at b to the value at a
        plain = FinDiagramShape(C, Variance.Plain)
        self.assertRaises(UnrollingError, finite_limit, plain, values, actions)

    def test_shape_opposite(self):
        shape = FinDiagramShape(walking_arrow(), Variance.Opposite)
        other = shape.opposite()
        self.assertEqual(other.variance, Variance.Plain)
        self.assertEqual(other.oriented_arrows(), [("a<=b", "b", "a")])
        self.assertEqual(other.opposite(), shape)


class TestCommaCategories(unittest.TestCase):
    def test_arrow_category(self):
        C = walking_arrow()
        comma = CommaCategory(identity_functor(C), identity_functor(C))
        self.assertEqual(len(comma.category.objects), 3)
        other = comma_category(identity_functor(C), identity_functor(C))
        self.assertEqual(other.category, comma.category)
        self.assertEqual(len(comma.category.arrows), 6)

        obj = comma.object_for("a", "b", "a<=b")
        self.assertEqual(comma.triple(obj), ("a", "b", "a<=b"))
        self.assertEqual(comma.pi0.map_object(obj), "a")
        self.assertEqual(comma.pi1.map_object(obj), "b")

    def test_fiber(self):
        C = walking_arrow()
        comma = CommaCategory(identity_functor(C), identity_functor(C))
        over_a = fiber(comma.pi0, "a")
        self.assertEqual(len(over_a.objects), 2)
        self.assertEqual(len(over_a.arrows), 3)

    def test_over_category(self):
        C = walking_arrow()
        over = OverCategory(C, "b")
        self.assertEqual(len(over.category.objects), 2)
        self.assertEqual(len(over.category.arrows), 3)
        obj = over.object_for("a<=b")
        self.assertEqual(over.arrow_of(obj), "a<=b")
        self.assertEqual(over.forget.map_object(obj), "a")

        proper = OverCategory(C, "b", proper=True)
        self.assertEqual(proper.category.objects, [obj])
        self.assertEqual(over_category(C, "b").category, over.category)


if __name__ == "__main__":
    unittest.main()
