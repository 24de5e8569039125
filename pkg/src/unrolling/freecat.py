import numpy as np

from .fincat import FinCat, is_injective_on_objects
from .misc import (
    BoundExceeded,
    FunctorError,
    NotComposable,
    PresentationInvalid,
    UnrollingError,
)
from .utils import Frozen


class Quiver(Frozen):
    """A directed multigraph, with ``edges`` given as ``(id, src, dst)``"""

    def __init__(self, nodes, edges):
        self.nodes = tuple(nodes)
        known = set(self.nodes)
        edges = tuple(tuple(e) for e in edges)
        for edge, src, dst in edges:
            if src not in known or dst not in known:
                raise PresentationInvalid(f"edge '{edge}' uses an unknown node")
        self.edges = edges
        self._freeze()

    @staticmethod
    def underlying(category):
        """Get the quiver of all arrows of ``category``"""
        return Quiver(
            category.objects,
            [(a, category.dom(a), category.cod(a)) for a in category.arrows],
        )

    def __repr__(self):
        return f"Quiver with {len(self.nodes)} nodes and {len(self.edges)} edges"


def path_id(source, letters):
    """Identifier of a path: ``id_<source>`` when empty, else the letters
    joined by ``;`` in application order."""
    if len(letters) == 0:
        return f"id_{source}"
    return ";".join(letters)


class FreeCategory(Frozen):
    """
    The paths of length at most ``max_len`` in a quiver. Composites that
    would be longer than ``max_len`` are not part of the truncation, asking
    for them raises :py:class:`BoundExceeded`.
    """

    def __init__(self, quiver, max_len):
        if max_len < 0:
            raise BoundExceeded("the length bound must be non-negative")
        self.quiver = quiver
        self.max_len = max_len
        outgoing = {}
        for edge, src, dst in quiver.edges:
            outgoing.setdefault(src, []).append((edge, dst))

        paths = []
        for node in quiver.nodes:
            frontier = [((), node)]
            paths.append((node, (), node))
            for _ in range(max_len):
                extended = []
                for letters, end in frontier:
                    for edge, dst in outgoing.get(end, []):
                        extended.append((letters + (edge,), dst))
                        paths.append((node, letters + (edge,), dst))
                frontier = extended
        self._paths = {
            path_id(src, letters): (src, letters, dst) for src, letters, dst in paths
        }
        self._freeze()

    @property
    def objects(self):
        return list(self.quiver.nodes)

    @property
    def arrows(self):
        return list(self._paths)

    def dom(self, arrow):
        return self._paths[arrow][0]

    def cod(self, arrow):
        return self._paths[arrow][2]

    def compose(self, g, f):
        """Concatenate the path ``f`` followed by ``g``"""
        src, first, mid = self._paths[f]
        mid2, second, dst = self._paths[g]
        if mid != mid2:
            raise NotComposable(g, f)
        letters = first + second
        if len(letters) > self.max_len:
            raise BoundExceeded(
                f"the composite of '{g}' and '{f}' has length {len(letters)}, "
                f"above the bound of {self.max_len}"
            )
        return path_id(src, letters)

    def to_fincat(self):
        """
        Get this truncation as a :py:class:`FinCat`. This raises
        :py:class:`BoundExceeded` if some composite leaves the bound.
        """
        arrows = [(a, src, dst) for a, (src, _, dst) in self._paths.items()]
        compose = {}
        for g, (mid, _, _) in self._paths.items():
            for f, (_, _, end) in self._paths.items():
                if end == mid:
                    compose[(g, f)] = self.compose(g, f)
        identities = {node: path_id(node, ()) for node in self.quiver.nodes}
        return FinCat(self.quiver.nodes, arrows, identities, compose)

    def __repr__(self):
        return f"FreeCategory on {self.quiver!r} truncated at length {self.max_len}"


def free_category(quiver, max_len):
    """Get the truncated free category on ``quiver``"""
    return FreeCategory(quiver, max_len)


class AmalgamPresentation(Frozen):
    """
    An :py:class:`AmalgamPresentation` is a functor ``c: R0 → R``, injective
    on objects and arrows. It presents the category obtained from the free
    category on ``R`` by composing the letters coming from ``R0`` in ``R0``.
    """

    def __init__(self, R, R0, c):
        if c.source != R0 or c.target != R:
            raise PresentationInvalid("c must be a functor from R0 to R")
        try:
            c.validate()
        except FunctorError as e:
            raise PresentationInvalid(f"c is not a functor: {e}")
        if not is_injective_on_objects(c):
            raise PresentationInvalid("c is not injective on objects")
        if len(np.unique(c._arrows)) != len(c._arrows):
            raise PresentationInvalid("c is not injective on arrows")

        self.R = R
        self.R0 = R0
        self.c = c
        self._preimage = {
            R._arrows[image]: R0._arrows[k] for k, image in enumerate(c._arrows)
        }
        self._c_identities = frozenset(R._arrows[c._arrows[i]] for i in R0._identity)
        self._freeze()

    def is_c_letter(self, arrow):
        """Check if ``arrow`` of R is in the image of c"""
        return arrow in self._preimage

    def is_c_identity(self, arrow):
        """Check if ``arrow`` is the image of an identity of R0"""
        return arrow in self._c_identities

    def preimage(self, arrow):
        """Get the arrow of R0 sent to ``arrow`` by c, or ``None``"""
        return self._preimage.get(arrow)

    def free_count(self, letters):
        """Count the letters not in the image of c"""
        return sum(1 for a in letters if a not in self._preimage)

    def __repr__(self):
        return f"AmalgamPresentation of {self.R!r} over {self.R0!r}"


class NFWord(Frozen):
    """
    A morphism of the presented category, as a word of arrows of R in normal
    form. ``letters`` are listed in application order.
    """

    def __init__(self, source, target, letters=()):
        self.source = source
        self.target = target
        self.letters = tuple(letters)
        if len(self.letters) == 0 and source != target:
            raise NotComposable(target, source)
        self._freeze()

    @property
    def label(self):
        return path_id(self.source, self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, NFWord):
            return NotImplemented
        return (self.source, self.target, self.letters) == (
            other.source,
            other.target,
            other.letters,
        )

    def __hash__(self):
        return hash((self.source, self.target, self.letters))

    def __repr__(self):
        return f"NFWord {self.source} -> {self.target} [{', '.join(self.letters)}]"


def _check_composable(R, letters):
    for f, g in zip(letters, letters[1:]):
        if R.cod(f) != R.dom(g):
            raise NotComposable(g, f)


def normalize(pres, letters, source=None):
    """
    Get the normal form of a composable word of arrows of R, given in
    application order. Letters that are images of identities of R0 are
    removed, and adjacent letters in the image of c are composed in R0.
    ``source`` is required for empty words.
    """
    R, R0 = pres.R, pres.R0
    letters = tuple(letters)
    _check_composable(R, letters)
    if len(letters) == 0:
        if source is None:
            raise UnrollingError("an empty word needs a source object")
        return NFWord(source, source)
    if source is not None and R.dom(letters[0]) != source:
        raise NotComposable(letters[0], source)
    source = R.dom(letters[0])
    target = R.cod(letters[-1])

    stack = []
    for letter in letters:
        if pres.is_c_identity(letter):
            continue
        if stack and pres.is_c_letter(letter) and pres.is_c_letter(stack[-1]):
            k = R0.compose(pres.preimage(letter), pres.preimage(stack.pop()))
            merged = pres.c.map_arrow(k)
            if not pres.is_c_identity(merged):
                stack.append(merged)
        else:
            stack.append(letter)
    return NFWord(source, target, stack)


def redexes(pres, letters):
    """
    List the places where a rewriting rule applies to ``letters``: ``("unit",
    i)`` when letter ``i`` is the image of an identity, ``("merge", i)`` when
    letters ``i`` and ``i + 1`` are both in the image of c.
    """
    found = []
    for i, letter in enumerate(letters):
        if pres.is_c_identity(letter):
            found.append(("unit", i))
    for i in range(len(letters) - 1):
        if pres.is_c_letter(letters[i]) and pres.is_c_letter(letters[i + 1]):
            found.append(("merge", i))
    return found


def rewrite(pres, letters, redex):
    """Apply a single rewriting step at ``redex``"""
    kind, i = redex
    letters = list(letters)
    if kind == "unit":
        del letters[i]
    else:
        k = pres.R0.compose(pres.preimage(letters[i + 1]), pres.preimage(letters[i]))
        letters[i : i + 2] = [pres.c.map_arrow(k)]
    return letters


def normalize_randomly(pres, letters, rng, source=None):
    """
    Normalize ``letters`` by applying rewriting steps at randomly chosen
    places, using the ``numpy`` random generator ``rng``.
    """
    letters = list(letters)
    _check_composable(pres.R, letters)
    if len(letters) != 0:
        source, target = pres.R.dom(letters[0]), pres.R.cod(letters[-1])
    elif source is None:
        raise UnrollingError("an empty word needs a source object")
    else:
        target = source
    while True:
        found = redexes(pres, letters)
        if len(found) == 0:
            return NFWord(source, target, letters)
        letters = rewrite(pres, letters, found[int(rng.integers(len(found)))])


def is_normal(pres, word):
    """Check that ``word`` is composable and contains no redex"""
    try:
        _check_composable(pres.R, word.letters)
    except NotComposable:
        return False
    return len(redexes(pres, word.letters)) == 0


def nf_equal(a, b):
    """Check if two normal forms are the same morphism"""
    return a == b


def nf_compose(pres, a, b):
    """Get the normal form of ``a ∘ b``, ``b`` being applied first"""
    if b.target != a.source:
        raise NotComposable(a.label, b.label)
    return normalize(pres, b.letters + a.letters, source=b.source)


def nf_hom_enum(pres, src, tgt, max_len, max_free=None):
    """
    Enumerate the normal form words from ``src`` to ``tgt`` with at most
    ``max_len`` letters, and at most ``max_free`` letters outside the image of
    c if given. Words are sorted by length, then by the position of their
    letters in R.
    """
    if max_len < 0:
        raise BoundExceeded("the length bound must be non-negative")
    R = pres.R
    allowed = [a for a in range(len(R._arrows)) if not pres.is_c_identity(R._arrows[a])]
    outgoing = {}
    for a in allowed:
        outgoing.setdefault(int(R._dom[a]), []).append(a)
    is_c = [pres.is_c_letter(a) for a in R._arrows]
    target = R._o(tgt)

    found = []
    if src == tgt:
        found.append(())

    def extend(letters, end, free):
        if len(letters) == max_len:
            return
        for a in outgoing.get(end, []):
            if letters and is_c[a] and is_c[letters[-1]]:
                continue
            used = free + (0 if is_c[a] else 1)
            if max_free is not None and used > max_free:
                continue
            word = letters + (a,)
            if R._cod[a] == target:
                found.append(word)
            extend(word, int(R._cod[a]), used)

    extend((), R._o(src), 0)
    found.sort(key=lambda w: (len(w), w))
    return [NFWord(src, tgt, [R._arrows[a] for a in word]) for word in found]


def p0_apply(pres, word):
    """Compose the letters of ``word`` in R"""
    if len(word.letters) == 0:
        return pres.R.identity(word.source)
    return pres.R.compose_path(word.letters)


def c_word(pres, k):
    """Get the normal form of the single letter ``c(k)`` for an arrow ``k`` of R0"""
    letter = pres.c.map_arrow(k)
    return normalize(pres, [letter], source=pres.c.map_object(pres.R0.dom(k)))


def letter_word(pres, arrow):
    """Get the normal form of a single arrow of R"""
    return normalize(pres, [arrow], source=pres.R.dom(arrow))
