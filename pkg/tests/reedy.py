import unittest

from unrolling.fincat import CommaCategory, walking_arrow
from unrolling.misc import NegativeDegree, StructureViolation, UnrollingError
from unrolling.reedy import (
    ReedyStructure,
    StrictReedyStructure,
    check_generalized_direct,
    check_generalized_reedy,
    check_lifting_condition,
    check_strict,
    check_unique_factorization,
    comma_reedy_structure,
    find_arrow_lift,
    induce_DR_structure,
    is_reedy_functor,
    reedy_factor_DR,
)
from unrolling.unroll import UnrolledCategory
from unrolling.zoo import (
    GROUPS,
    CubeSpec,
    corrupted_structures,
    cube_category,
    group_example,
    non_cofibering_functor,
    non_liftable_presentation,
)


def _group(name):
    return group_example(name, GROUPS[name]())


def _arrow_structure():
    C = walking_arrow()
    return StrictReedyStructure(C, {"a": 0, "b": 1}, C.arrows, ())


class TestReedyStructure(unittest.TestCase):
    def test_classes(self):
        S = _arrow_structure()
        self.assertTrue(S.is_plus("a<=b"))
        self.assertFalse(S.is_minus("a<=b"))
        self.assertTrue(S.is_minus("id_b"))
        self.assertEqual(S.factor("a<=b"), [("id_a", "a<=b")])

        op = S.opposite()
        self.assertIsInstance(op, StrictReedyStructure)
        self.assertTrue(op.is_minus("a<=b"))
        self.assertFalse(op.is_plus("a<=b"))

    def test_unknown_arrow(self):
        C = walking_arrow()
        self.assertRaises(UnrollingError, ReedyStructure, C, {}, ["nope"], [])

    def test_strict(self):
        S = _arrow_structure()
        self.assertTrue(check_strict(S).passed)
        self.assertTrue(check_strict(S.opposite()).passed)
        self.assertTrue(check_unique_factorization(S).passed)
        self.assertTrue(check_generalized_direct(S).passed)

    def test_groups(self):
        S = _group("S3").structure
        self.assertTrue(check_generalized_reedy(S).passed)
        self.assertTrue(check_generalized_direct(S).passed)

        report = check_strict(S)
        self.assertFalse(report.passed)
        self.assertFalse(report.verdict("only-identity-isos").passed)
        self.assertFalse(report.verdict("unique-factorization").passed)

    def test_corrupted(self):
        expected = {
            "plus-lowers-degree": "plus-raises-degree",
            "no-factorization": "factorization",
            "minus-raises-degree": "minus-lowers-degree",
        }
        for name, S in corrupted_structures():
            if name == "iso-in-strict":
                self.assertTrue(check_generalized_reedy(S).passed)
                report = check_strict(S)
                self.assertFalse(report.verdict("only-identity-isos").passed)
            else:
                report = check_generalized_reedy(S)
                self.assertFalse(report.passed, name)
                self.assertFalse(report.verdict(expected[name]).passed, name)
                self.assertEqual(report.verdict(expected[name]).witnesses, ["a<=b"])

    def test_missing_degrees(self):
        C = walking_arrow()
        report = check_generalized_reedy(ReedyStructure(C, {"a": 0}, C.arrows, ()))
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict("degrees").witnesses, ["b"])


class TestLifting(unittest.TestCase):
    def test_groups(self):
        example = _group("Z2")
        k, w, w2 = find_arrow_lift(example.presentation, "g")
        self.assertEqual(k, "id_*")
        self.assertEqual(w, "e")
        self.assertEqual(w2, "g")

        report = check_lifting_condition(example.presentation, example.base_structure)
        self.assertTrue(report.passed)

    def test_cube(self):
        example = cube_category(CubeSpec(2, symmetries=True))
        report = check_lifting_condition(example.presentation, example.base_structure)
        self.assertTrue(report.passed)

    def test_degenerate_cube(self):
        example = cube_category(CubeSpec(1, symmetries=True, degeneracies=True))
        report = check_lifting_condition(example.presentation, example.base_structure)
        self.assertTrue(report.passed)
        self.assertTrue(report.verdict("every-arrow-lifts").passed)

    def test_failure(self):
        pres = non_liftable_presentation()
        self.assertEqual(find_arrow_lift(pres, "a<=b"), None)
        report = check_lifting_condition(pres)
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict("every-arrow-lifts").witnesses, ["a<=b"])


class TestInducedStructure(unittest.TestCase):
    def test_z2(self):
        example = _group("Z2")
        U = UnrolledCategory(example.presentation)
        S = induce_DR_structure(U, example.structure, example.base_structure)
        self.assertEqual(S.degree, {"id_*": 0, "g": 1})
        self.assertEqual(
            S.plus - {"(id_*,id_*,id_*,id_*)", "(id_*,id_*,g,g)"},
            {"(id_*,g,id_*,g)", "(g,id_*,id_*,g)"},
        )
        self.assertEqual(S.minus, {"(id_*,id_*,id_*,id_*)", "(id_*,id_*,g,g)"})

        minus, plus = reedy_factor_DR(U, "(id_*,g,id_*,g)", example.base_structure)
        self.assertEqual(minus, "(id_*,id_*,id_*,id_*)")
        self.assertEqual(plus, "(id_*,g,id_*,g)")

    def test_cube(self):
        example = cube_category(CubeSpec(2, symmetries=True))
        U = UnrolledCategory(example.presentation)
        S = induce_DR_structure(U, example.structure, example.base_structure)
        self.assertTrue(check_strict(S).passed)
        for arrow in U.category.arrows:
            factors = reedy_factor_DR(U, arrow, example.base_structure)
            self.assertEqual(S.factor(arrow), [factors])

    def test_violation(self):
        example = cube_category(CubeSpec(2, symmetries=True))
        U = UnrolledCategory(example.presentation)
        R0 = example.presentation.R0
        empty = StrictReedyStructure(R0, example.base_structure.degree, (), ())
        self.assertRaises(
            StructureViolation, induce_DR_structure, U, example.structure, empty
        )

    def test_negative_degree(self):
        example = cube_category(CubeSpec(1, symmetries=True, degeneracies=True))
        U = UnrolledCategory(example.presentation)
        with self.assertRaises(NegativeDegree) as context:
            induce_DR_structure(U, example.structure, example.base_structure)
        self.assertEqual(context.exception.obj, "[1]>[0]()")
        self.assertEqual(context.exception.value, -1)
        self.assertEqual(
            str(context.exception), "object '[1]>[0]()' gets the negative degree -1"
        )


class TestReedyFunctors(unittest.TestCase):
    def test_reedy_functor(self):
        G, SC, SD = non_cofibering_functor()
        self.assertTrue(is_reedy_functor(G, SC, SD).passed)
        self.assertFalse(is_reedy_functor(G, SC, SD.opposite()).passed)

    def test_comma_structure(self):
        example = _group("Z2")
        U = UnrolledCategory(example.presentation)
        S = induce_DR_structure(U, example.structure, example.base_structure)
        comma = CommaCategory(U.projection, U.projection)
        SC = comma_reedy_structure(comma, S, S)
        for obj in comma.category.objects:
            a, b, _ = comma.triple(obj)
            self.assertEqual(SC.degree[obj], S.degree[a] + S.degree[b])
        self.assertTrue(is_reedy_functor(comma.pi0, SC, S).passed)


if __name__ == "__main__":
    unittest.main()
