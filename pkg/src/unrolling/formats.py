import os

from .cattribe import Diagram
from .fincat import FinCat, FinFunctor
from .freecat import AmalgamPresentation
from .misc import FormatError, formats_list, guess_format
from .reedy import ReedyStructure
from .zoo import Example

_EXTENSIONS = {metadata.name: metadata.extension for metadata in formats_list()}
_SECTIONS = {metadata.name: metadata.sections for metadata in formats_list()}
_HEADERS = {metadata.name: metadata.headers for metadata in formats_list()}


def _parse(text, format):
    """
    Split a document into its ``key value`` headers and its sections, as
    lists of whitespace separated records.
    """
    headers, sections = {}, {}
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1 and tokens[0] in _SECTIONS[format]:
            current = sections.setdefault(tokens[0], [])
        elif current is None:
            if len(tokens) != 2 or tokens[0] not in _HEADERS[format]:
                raise FormatError(
                    f"line {number}: invalid header '{line}' for {format}"
                )
            headers[tokens[0]] = tokens[1]
        else:
            current.append(tokens)
    for key in _HEADERS[format]:
        if key not in headers and key not in ("reedy", "reedy0"):
            raise FormatError(f"missing '{key}' header for {format}")
    return headers, sections


def _pairs(records, section):
    result = {}
    for record in records:
        if len(record) != 2:
            raise FormatError(f"expected two fields in '{section}', got {record}")
        result[record[0]] = record[1]
    return result


def _flat(records):
    return [token for record in records for token in record]


class _Reader:
    """Build objects from document texts, loading referenced documents once"""

    def __init__(self, directory, documents=None):
        self.directory = directory
        self.documents = documents or {}
        self._loaded = {}

    def load(self, reference, format):
        if reference in self._loaded:
            return self._loaded[reference]
        if reference in self.documents:
            text = self.documents[reference]
        else:
            path = os.path.join(self.directory, reference)
            if not os.path.isfile(path):
                raise FormatError(f"referenced document '{reference}' does not exist")
            with open(path, encoding="utf8") as fd:
                text = fd.read()
        if guess_format(reference) != format:
            raise FormatError(f"'{reference}' is not a {format} document")
        value = self.read(text, format)
        self._loaded[reference] = value
        return value

    def read(self, text, format):
        headers, sections = _parse(text, format)
        try:
            return getattr(self, "_read_" + format.lower())(headers, sections)
        except (KeyError, ValueError) as e:
            raise FormatError(f"invalid {format} document: {e}")

    def _read_category(self, headers, sections):
        objects = _flat(sections.get("objects", []))
        arrows = []
        for record in sections.get("arrows", []):
            if len(record) == 3:
                arrows.append(tuple(record))
            elif len(record) == 4:
                arrows.append((record[0], record[3], record[1], record[2]))
            else:
                raise FormatError(f"invalid arrow record {record}")
        identities = _pairs(sections.get("identities", []), "identities")
        compose = []
        for record in sections.get("compose", []):
            if len(record) != 3:
                raise FormatError(f"invalid composition record {record}")
            compose.append(tuple(record))
        return FinCat(objects, arrows, identities, compose)

    def _read_functor(self, headers, sections):
        source = self.load(headers["source"], "Category")
        target = self.load(headers["target"], "Category")
        return FinFunctor(
            source,
            target,
            _pairs(sections.get("map-objects", []), "map-objects"),
            _pairs(sections.get("map-arrows", []), "map-arrows"),
        )

    def _read_reedy(self, headers, sections):
        category = self.load(headers["category"], "Category")
        degrees = _pairs(sections.get("degrees", []), "degrees")
        degrees = {k: int(v) for k, v in degrees.items()}
        return ReedyStructure(
            category,
            degrees,
            _flat(sections.get("plus", [])),
            _flat(sections.get("minus", [])),
        )

    def _read_presentation(self, headers, sections):
        R = self.load(headers["R"], "Category")
        R0 = self.load(headers["R0"], "Category")
        c = self.load(headers["c"], "Functor")
        if c.source != R0 or c.target != R:
            raise FormatError("c must go from R0 to R")
        # share the categories with c
        pres = AmalgamPresentation(c.target, c.source, c)
        S = S0 = None
        if "reedy" in headers:
            S = self.load(headers["reedy"], "Reedy")
        if "reedy0" in headers:
            S0 = self.load(headers["reedy0"], "Reedy")
        return Example(headers["R"], pres.R, S, pres, S0)

    def _read_diagram(self, headers, sections):
        shape = self.load(headers["shape"], "Category")
        values = {
            obj: self.load(path, "Category")
            for obj, path in _pairs(sections.get("values", []), "values").items()
        }
        actions = {
            arrow: self.load(path, "Functor")
            for arrow, path in _pairs(sections.get("actions", []), "actions").items()
        }
        return Diagram(shape, values, actions)


def _format_of(value):
    if isinstance(value, FinCat):
        return "Category"
    elif isinstance(value, FinFunctor):
        return "Functor"
    elif isinstance(value, ReedyStructure):
        return "Reedy"
    elif isinstance(value, (Example, AmalgamPresentation)):
        return "Presentation"
    elif isinstance(value, Diagram):
        return "Diagram"
    raise FormatError(f"can not write {value!r} to a document")


class _Writer:
    """
    Render objects to document texts. Referenced objects are rendered as
    sibling documents named after the main one, and rendered only once.
    """

    def __init__(self, stem):
        self.stem = stem
        self.documents = {}
        self._written = {}

    def reference(self, key, value):
        if id(value) in self._written:
            return self._written[id(value)]
        format = _format_of(value)
        name = f"{self.stem}.{key}{_EXTENSIONS[format]}"
        self._written[id(value)] = name
        self.documents[name] = self.render(value, format)
        return name

    def render(self, value, format):
        return getattr(self, "_render_" + format.lower())(value)

    def _render_category(self, category):
        lines = ["objects"]
        lines += list(category.objects)
        lines.append("arrows")
        for a in category.arrows:
            record = [a, category.dom(a), category.cod(a)]
            if category.name(a) != a:
                record.append(category.name(a))
            lines.append(" ".join(record))
        lines.append("identities")
        lines += [f"{o} {category.identity(o)}" for o in category.objects]
        lines.append("compose")
        entries = sorted(
            (g, f, category.compose(g, f)) for g, f in category.composable_pairs()
        )
        lines += [" ".join(entry) for entry in entries]
        return "\n".join(lines) + "\n"

    def _render_functor(self, functor):
        lines = [
            f"source {self.reference('source', functor.source)}",
            f"target {self.reference('target', functor.target)}",
            "map-objects",
        ]
        lines += [f"{x} {y}" for x, y in functor.object_map.items()]
        lines.append("map-arrows")
        lines += [f"{f} {g}" for f, g in functor.arrow_map.items()]
        return "\n".join(lines) + "\n"

    def _render_reedy(self, structure):
        lines = [f"category {self.reference('category', structure.base)}", "degrees"]
        lines += [f"{o} {structure.degree[o]}" for o in structure.base.objects]
        lines.append("plus")
        lines += sorted(structure.plus)
        lines.append("minus")
        lines += sorted(structure.minus)
        return "\n".join(lines) + "\n"

    def _render_presentation(self, value):
        if isinstance(value, AmalgamPresentation):
            value = Example("", value.R, None, value)
        pres = value.presentation
        lines = [
            f"R {self.reference('R', pres.R)}",
            f"R0 {self.reference('R0', pres.R0)}",
            f"c {self.reference('c', pres.c)}",
        ]
        if value.structure is not None:
            lines.append(f"reedy {self.reference('reedy', value.structure)}")
        if value.base_structure is not None:
            lines.append(f"reedy0 {self.reference('reedy0', value.base_structure)}")
        return "\n".join(lines) + "\n"

    def _render_diagram(self, diagram):
        shape = diagram.shape
        lines = [f"shape {self.reference('shape', shape)}", "values"]
        for i, obj in enumerate(shape.objects):
            lines.append(f"{obj} {self.reference(f'value{i}', diagram.values[obj])}")
        lines.append("actions")
        for i, arrow in enumerate(shape.arrows):
            if shape.is_identity(arrow):
                continue
            reference = self.reference(f"action{i}", diagram.actions[arrow])
            lines.append(f"{arrow} {reference}")
        return "\n".join(lines) + "\n"


class BaseDocument:
    def __init__(self, mode, format):
        if mode not in ("r", "w"):
            raise FormatError(f"invalid mode '{mode}' for a document")
        if format not in _EXTENSIONS:
            raise FormatError(f"unknown document format '{format}'")
        self._mode = mode
        self._format = format
        self.__closed = False

    def _check_opened(self, mode):
        if self.__closed:
            raise FormatError(f"Can not use a closed {self.__class__.__name__}")
        if self._mode != mode:
            raise FormatError(f"this document is not opened with mode '{mode}'")

    @property
    def format(self):
        return self._format

    def __enter__(self):
        if self.__closed:
            raise FormatError(f"Can not use a closed {self.__class__.__name__}")
        return self

    def __exit__(self, *args):
        self.close()

    def close(self):
        """Close this document. Closing twice is an error."""
        if self.__closed:
            raise FormatError(f"Can not use a closed {self.__class__.__name__}")
        self.__closed = True


class DocumentFile(BaseDocument):
    """
    A :py:class:`DocumentFile` reads or writes one of the documents listed
    by :py:func:`formats_list` on disk.

    When writing, the documents referenced by the main one (the categories of
    a functor, ...) are written next to it, named after it:
    ``functor.fun`` refers to ``functor.source.cat`` and
    ``functor.target.cat``.
    """

    def __init__(self, path, mode="r", format=""):
        """
        Open the document at ``path`` with the given ``mode`` (``'r'`` for
        read, ``'w'`` for write). If ``format`` is the empty string, it is
        guessed from the extension of ``path``.
        """
        format = format or guess_format(path)
        if not format:
            raise FormatError(f"can not guess the format of '{path}'")
        super().__init__(mode, format)
        if mode == "r" and not os.path.isfile(path):
            raise FormatError(f"no document at '{path}'")
        self._path = path

    @property
    def path(self):
        return self._path

    def read(self):
        """Read the object in this document"""
        self._check_opened("r")
        with open(self._path, encoding="utf8") as fd:
            text = fd.read()
        reader = _Reader(os.path.dirname(os.path.abspath(self._path)))
        return reader.read(text, self._format)

    def write(self, value):
        """Write ``value`` and every object it references"""
        self._check_opened("w")
        if _format_of(value) != self._format:
            raise FormatError(f"can not write {value!r} as a {self._format} document")
        directory, name = os.path.split(os.path.abspath(self._path))
        writer = _Writer(os.path.splitext(name)[0])
        text = writer.render(value, self._format)
        for reference, content in writer.documents.items():
            with open(os.path.join(directory, reference), "w", encoding="utf8") as fd:
                fd.write(content)
        with open(self._path, "w", encoding="utf8") as fd:
            fd.write(text)

    def __repr__(self):
        return f"DocumentFile('{self._path}', '{self._mode}', '{self._format}')"


class MemoryDocument(BaseDocument):
    """
    A :py:class:`MemoryDocument` reads or writes a document held in memory.
    Referenced documents are looked up in ``documents`` (a dictionary from
    reference to text) and then on disk, relative to the working directory.
    """

    def __init__(self, data="", mode="r", format="", documents=None):
        """
        The ``format`` parameter is always required.

        When writing, ``data`` is ignored; use :py:func:`buffer` to get the
        written text, and :py:attr:`documents` for the referenced documents.
        """
        if not format:
            raise FormatError("'format' is required when creating a MemoryDocument")
        super().__init__(mode, format)
        if mode == "r" and not isinstance(data, str):
            raise FormatError("the 'data' parameter must be a string")
        self._data = data if mode == "r" else ""
        self.documents = dict(documents or {})

    def read(self):
        self._check_opened("r")
        return _Reader(os.getcwd(), self.documents).read(self._data, self._format)

    def write(self, value, stem="document"):
        self._check_opened("w")
        if _format_of(value) != self._format:
            raise FormatError(f"can not write {value!r} as a {self._format} document")
        writer = _Writer(stem)
        self._data = writer.render(value, self._format)
        self.documents.update(writer.documents)

    def buffer(self):
        """Get the text written to this document"""
        if self._mode != "w":
            raise FormatError("only documents opened in write mode have a buffer")
        return self._data

    def __repr__(self):
        return f"MemoryDocument('{self._mode}', '{self._format}')"


def read(path, format=""):
    """Read the object in the document at ``path``"""
    with DocumentFile(path, "r", format) as document:
        return document.read()


def write(path, value, format=""):
    """Write ``value`` to a document at ``path``"""
    with DocumentFile(path, "w", format) as document:
        document.write(value)
