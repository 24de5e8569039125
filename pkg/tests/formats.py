import os
import shutil
import tempfile
import unittest

from unrolling import DocumentFile, MemoryDocument
from unrolling.cattribe import Diagram
from unrolling.fincat import constant_functor, terminal, walking_arrow
from unrolling.formats import read, write
from unrolling.misc import FormatError
from unrolling.unroll import UnrolledCategory
from unrolling.zoo import Example, cyclic_group, group_category, group_example

EXPECTED_FUNCTOR = """source collapse.source.cat
target collapse.target.cat
map-objects
a *
b *
map-arrows
id_a id_*
id_b id_*
a<=b id_*
"""


def get_data_path(data):
    root = os.path.dirname(__file__)
    return os.path.join(root, "data", data)


def _collapse():
    return constant_functor(walking_arrow(), terminal(), "*")


class TestDocumentFile(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_repr(self):
        path = get_data_path("point.cat")
        with DocumentFile(path) as document:
            self.assertEqual(repr(document), f"DocumentFile('{path}', 'r', 'Category')")
            self.assertEqual(document.path, path)
            self.assertEqual(document.format, "Category")

    def test_errors(self):
        self.assertRaises(FormatError, DocumentFile, get_data_path("not-here.cat"))
        self.assertRaises(FormatError, DocumentFile, get_data_path("swap.unknown"))
        self.assertRaises(FormatError, DocumentFile, get_data_path("point.cat"), "a")

        document = DocumentFile(get_data_path("point.cat"))
        self.assertRaises(FormatError, document.write, terminal())
        document.close()
        self.assertRaises(FormatError, document.read)
        self.assertRaises(FormatError, document.close)

    def test_read(self):
        self.assertEqual(read(get_data_path("walking-arrow.cat")), walking_arrow())
        self.assertEqual(read(get_data_path("collapse.fun")), _collapse())

        # the format can be given explicitly
        with DocumentFile(get_data_path("point.cat"), "r", "Category") as document:
            self.assertEqual(document.read(), terminal())

    def test_presentation(self):
        example = read(get_data_path("z2.pres"))
        self.assertIsInstance(example, Example)
        G, _ = group_category(cyclic_group(2))
        self.assertEqual(example.category, G)
        self.assertEqual(example.presentation.c.map_arrow("id_*"), "e")
        self.assertEqual(example.structure.degree, {"*": 0})
        self.assertEqual(example.base_structure, None)

        U = UnrolledCategory(example.presentation)
        self.assertEqual(U.category.objects, ["id_*", "g"])

    def test_diagram(self):
        diagram = read(get_data_path("swap.diag"))
        self.assertIsInstance(diagram, Diagram)
        self.assertEqual(diagram.action("g").map_object("u"), "v")
        self.assertEqual(diagram.action("e").map_object("u"), "u")

    def test_write(self):
        path = os.path.join(self.directory, "functor.fun")
        write(path, _collapse())
        self.assertEqual(
            sorted(os.listdir(self.directory)),
            ["functor.fun", "functor.source.cat", "functor.target.cat"],
        )
        self.assertEqual(read(path), _collapse())

        path = os.path.join(self.directory, "swap.diag")
        diagram = read(get_data_path("swap.diag"))
        write(path, diagram)
        self.assertEqual(read(path), diagram)

    def test_write_presentation(self):
        example = group_example("Z2", cyclic_group(2))
        path = os.path.join(self.directory, "z2.pres")
        with DocumentFile(path, "w") as document:
            document.write(example)

        self.assertTrue(os.path.isfile(os.path.join(self.directory, "z2.reedy0.reedy")))
        copy = read(path)
        self.assertEqual(copy.presentation.c, example.presentation.c)
        self.assertEqual(copy.base_structure.degree, {"*": 0})
        self.assertEqual(copy.structure.plus, example.structure.plus)


class TestMemoryDocument(unittest.TestCase):
    def test_read(self):
        documents = {}
        for name in ("walking-arrow.cat", "point.cat"):
            with open(get_data_path(name), encoding="utf8") as fd:
                documents[name] = fd.read()
        with open(get_data_path("collapse.fun"), encoding="utf8") as fd:
            text = fd.read()

        document = MemoryDocument(text, "r", "Functor", documents)
        self.assertEqual(document.read(), _collapse())
        self.assertEqual(repr(document), "MemoryDocument('r', 'Functor')")

    def test_write(self):
        document = MemoryDocument(mode="w", format="Functor")
        document.write(_collapse(), stem="collapse")
        self.assertEqual(document.buffer(), EXPECTED_FUNCTOR)
        self.assertEqual(
            sorted(document.documents), ["collapse.source.cat", "collapse.target.cat"]
        )

        copy = MemoryDocument(document.buffer(), "r", "Functor", document.documents)
        self.assertEqual(copy.read(), _collapse())

    def test_errors(self):
        self.assertRaises(FormatError, MemoryDocument, "")
        self.assertRaises(FormatError, MemoryDocument, 3, "r", "Category")
        self.assertRaises(FormatError, MemoryDocument, "", "r", "XYZ")

        document = MemoryDocument("", "w", "Category")
        self.assertRaises(FormatError, document.read)
        self.assertRaises(FormatError, document.write, _collapse())
        document.close()
        self.assertRaises(FormatError, document.write, terminal())

        self.assertRaises(FormatError, MemoryDocument("", "r", "Category").buffer)

    def test_malformed(self):
        def read_text(text, format, **documents):
            return MemoryDocument(text, "r", format, documents).read()

        with self.assertRaises(FormatError) as context:
            read_text("color red\nobjects\na\n", "Category")
        self.assertEqual(
            str(context.exception), "line 1: invalid header 'color red' for Category"
        )

        with self.assertRaises(FormatError) as context:
            read_text("source point.cat\nmap-objects\n", "Functor")
        self.assertEqual(str(context.exception), "missing 'target' header for Functor")

        self.assertRaises(
            FormatError, read_text, "objects\na\narrows\nid_a a\n", "Category"
        )
        self.assertRaises(
            FormatError,
            read_text,
            "objects\na\narrows\nid_a a a\nidentities\na id_a\ncompose\nid_a id_a\n",
            "Category",
        )

        with open(get_data_path("point.cat"), encoding="utf8") as fd:
            point = fd.read()
        with self.assertRaises(FormatError) as context:
            documents = {"point.cat": point}
            read_text("category point.cat\ndegrees\n* zero\n", "Reedy", **documents)
        self.assertTrue(str(context.exception).startswith("invalid Reedy document"))

        with self.assertRaises(FormatError) as context:
            read_text("category point.fun\n", "Reedy", **{"point.fun": point})
        self.assertEqual(
            str(context.exception), "'point.fun' is not a Category document"
        )

        with self.assertRaises(FormatError) as context:
            read_text("category not-here.cat\n", "Reedy")
        self.assertEqual(
            str(context.exception), "referenced document 'not-here.cat' does not exist"
        )


if __name__ == "__main__":
    unittest.main()
