import os
import shutil
import tempfile
import unittest
import warnings

import unrolling
from unrolling._config import hom_bound, lift_size_cap
from unrolling.cattribe import Diagram, reedy_factorize, terminal_map
from unrolling.fincat import FinFunctor, terminal, walking_arrow, walking_iso
from unrolling.misc import ConfigurationError, UnrollingWarning

NOT_FIBRANT = "the source of this map is not Reedy fibrant"


def _factorize_non_fibrant():
    point = terminal("a", "id_a")
    action = FinFunctor(point, walking_iso(), {"a": "a"}, {})
    X = Diagram(walking_arrow(), {"a": walking_iso(), "b": point}, {"a<=b": action})
    reedy_factorize(terminal_map(X))


class TestVersion(unittest.TestCase):
    def test_version(self):
        self.assertEqual(unrolling.__version__, "0.1.0")


LAST_MESSAGE = ""


class TestWarnings(unittest.TestCase):
    def test_warning(self):
        def callback(message):
            global LAST_MESSAGE
            LAST_MESSAGE = message

        unrolling.set_warnings_callback(callback)
        _factorize_non_fibrant()
        self.assertEqual(LAST_MESSAGE, NOT_FIBRANT)

        unrolling.misc._set_default_warning_callback()

    def test_warning_with_exception(self):
        def callback(message):
            global LAST_MESSAGE
            LAST_MESSAGE = message
            raise Exception("test exception in callback")

        unrolling.set_warnings_callback(callback)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            _factorize_non_fibrant()

        self.assertEqual(LAST_MESSAGE, NOT_FIBRANT)
        self.assertEqual(
            str(caught[0].message),
            "exception raised in warning callback: test exception in callback",
        )
        unrolling.misc._set_default_warning_callback()

    def test_default(self):
        unrolling.misc._set_default_warning_callback()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            _factorize_non_fibrant()
        self.assertEqual(len(caught), 1)
        self.assertIs(caught[0].category, UnrollingWarning)
        self.assertEqual(str(caught[0].message), NOT_FIBRANT)


class TestFormatList(unittest.TestCase):
    def test_format_list(self):
        formats = unrolling.formats_list()
        self.assertEqual(
            [f.name for f in formats],
            ["Category", "Functor", "Reedy", "Presentation", "Diagram"],
        )

        functor = formats[1]
        self.assertEqual(functor.extension, ".fun")
        self.assertEqual(functor.description, "functor between two finite categories")
        self.assertEqual(functor.sections, ["map-objects", "map-arrows"])
        self.assertEqual(functor.headers, ["source", "target"])
        self.assertIn("name      = Functor", repr(functor))


class TestGuessFormat(unittest.TestCase):
    def test_guess_format(self):
        self.assertEqual(unrolling.guess_format("test.cat"), "Category")
        self.assertEqual(unrolling.guess_format("dir/z2.pres"), "Presentation")
        self.assertEqual(unrolling.guess_format("test.diag"), "Diagram")
        self.assertEqual(unrolling.guess_format("test.cat.gz"), "")
        self.assertEqual(unrolling.guess_format("noextension"), "")


class TestConfiguration(unittest.TestCase):
    def setUp(self):
        self.cwd = os.getcwd()
        self.directory = tempfile.mkdtemp()
        variables = ("HOM_BOUND", "LIFT_SIZE_CAP")
        self.environ = {k: os.environ.pop(k, None) for k in variables}
        os.chdir(self.directory)
        unrolling.reset_configuration()

    def tearDown(self):
        os.chdir(self.cwd)
        shutil.rmtree(self.directory)
        for key, value in self.environ.items():
            os.environ.pop(key, None)
            if value is not None:
                os.environ[key] = value
        unrolling.reset_configuration()

    def _write(self, name, content):
        path = os.path.join(self.directory, name)
        with open(path, "w") as fd:
            fd.write(content)
        return path

    def test_defaults(self):
        self.assertEqual(hom_bound(), 2)
        self.assertEqual(lift_size_cap(), 200_000)
        self.assertEqual(hom_bound(5), 5)
        self.assertRaises(ConfigurationError, hom_bound, -1)
        self.assertRaises(ConfigurationError, lift_size_cap, "12")

    def test_rc_file(self):
        self._write(".unrollingrc", "[bounds]\nhom_bound = 3\n")
        unrolling.reset_configuration()
        self.assertEqual(hom_bound(), 3)
        self.assertEqual(lift_size_cap(), 200_000)

        os.environ["HOM_BOUND"] = "4"
        unrolling.reset_configuration()
        self.assertEqual(hom_bound(), 4)

    def test_add_configuration(self):
        content = "[bounds]\nlift_size_cap = 10\nhom_bound = 1\n"
        path = self._write("other.toml", content)
        os.environ["HOM_BOUND"] = "6"
        unrolling.add_configuration(path)
        self.assertEqual(lift_size_cap(), 10)
        self.assertEqual(hom_bound(), 6)

        self.assertRaises(
            ConfigurationError, unrolling.add_configuration, "not-here.toml"
        )

    def test_errors(self):
        path = self._write("bad.toml", "[bounds\n")
        self.assertRaises(ConfigurationError, unrolling.add_configuration, path)

        path = self._write("unknown.toml", "[bounds]\ncolor = 3\n")
        self.assertRaises(ConfigurationError, unrolling.add_configuration, path)

        path = self._write("negative.toml", "[bounds]\nhom_bound = -2\n")
        self.assertRaises(ConfigurationError, unrolling.add_configuration, path)

        path = self._write("table.toml", "bounds = 3\n")
        self.assertRaises(ConfigurationError, unrolling.add_configuration, path)

        os.environ["LIFT_SIZE_CAP"] = "many"
        unrolling.reset_configuration()
        self.assertRaises(ConfigurationError, lift_size_cap)


if __name__ == "__main__":
    unittest.main()
