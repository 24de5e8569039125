import numpy as np

from ._config import hom_bound, lift_size_cap
from .fincat import FinCat, FinFunctor
from .freecat import NFWord, nf_compose, nf_hom_enum, normalize, p0_apply
from .misc import BoundExceeded, NegativeDegree, SizeCapExceeded, UnrollingError
from .report import Report
from .utils import Frozen, tuple_id


class DRObject(Frozen):
    """
    An object of the unrolled category: a normal form word ``x → y`` which is
    empty, a single letter ``c(k)``, a single isomorphism ``w`` of R outside
    the image of c, or ``c(k)`` followed by such a ``w``.

    ``k`` is the arrow of R0 and ``w`` the arrow of R of the decomposition,
    each ``None`` when absent.
    """

    def __init__(self, pres, word):
        letters = word.letters
        k, w = None, None
        if len(letters) == 1:
            if pres.is_c_letter(letters[0]):
                k = pres.preimage(letters[0])
            else:
                w = letters[0]
        elif len(letters) == 2:
            k, w = pres.preimage(letters[0]), letters[1]
            if k is None or pres.is_c_letter(w):
                raise UnrollingError(f"{word!r} is not an unrolled object")
        elif len(letters) > 2:
            raise UnrollingError(f"{word!r} is not an unrolled object")
        if w is not None and pres.R.inverse(w) is None:
            raise UnrollingError(f"'{w}' is not an isomorphism of R")

        self.word = word
        self.k = k
        self.w = w
        self.id = word.label
        self._freeze()

    @property
    def source(self):
        return self.word.source

    @property
    def target(self):
        return self.word.target

    def __eq__(self, other):
        if not isinstance(other, DRObject):
            return NotImplemented
        return self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"DRObject {self.id}: {self.source} -> {self.target}"


class DRMorphism(Frozen):
    """
    A morphism from ``X`` to ``Y`` in the unrolled category: a pair of words
    ``f: source(Y) → source(X)`` and ``f2: target(X) → target(Y)`` such that
    ``f2 ∘ X ∘ f = Y``.
    """

    def __init__(self, X, Y, f, f2):
        self.X = X
        self.Y = Y
        self.f = f
        self.f2 = f2
        self.id = tuple_id((f.label, f2.label, X.id, Y.id))
        self._freeze()

    def __eq__(self, other):
        if not isinstance(other, DRMorphism):
            return NotImplemented
        mine = (self.X, self.Y, self.f, self.f2)
        return mine == (other.X, other.Y, other.f, other.f2)

    def __hash__(self):
        return hash((self.X, self.Y, self.f, self.f2))

    def __repr__(self):
        return f"DRMorphism {self.id}"


def _square_commutes(pres, X, Y, f, f2):
    return nf_compose(pres, f2, nf_compose(pres, X.word, f)) == Y.word


def enumerate_objects(pres):
    """
    Enumerate the objects of the unrolled category, deduplicated by normal
    form, sorted by length and by the position of their letters in R.
    """
    R, R0 = pres.R, pres.R0
    isos = R.isomorphisms()
    words = set()
    for y in R.objects:
        words.add(NFWord(y, y))
    for w in isos:
        words.add(normalize(pres, [w]))
    for k in R0.arrows:
        ck = pres.c.map_arrow(k)
        words.add(normalize(pres, [ck], source=R.dom(ck)))
        for w in isos:
            if R.dom(w) == R.cod(ck):
                words.add(normalize(pres, [ck, w]))

    def key(word):
        return (len(word), [R._a(a) for a in word.letters], R._o(word.source))

    objects = []
    for word in sorted(words, key=key):
        try:
            objects.append(DRObject(pres, word))
        except UnrollingError:
            # the normal form left the admitted shapes
            continue
    return objects


def _words(pres, src, tgt, bound, budget, cache):
    """
    Get the candidate components from ``src`` to ``tgt`` with their image in R
    and their number of letters outside the image of c, once per presentation.
    """
    key = (src, tgt, bound, budget)
    if key not in cache:
        R = pres.R
        words = nf_hom_enum(pres, src, tgt, bound, max_free=budget)
        images = np.array([R._a(p0_apply(pres, w)) for w in words], dtype=np.int64)
        free = np.array([pres.free_count(w.letters) for w in words], dtype=np.int64)
        cache[key] = (words, images, free)
    return cache[key]


def enumerate_morphisms(pres, X, Y, bound, cache=None):
    """
    Enumerate the morphisms from ``X`` to ``Y`` whose two components have at
    most ``bound`` letters.

    ``cache`` is an optional dictionary keeping the candidate components
    between calls on the same presentation.
    """
    # letters outside the image of c are never created nor removed
    budget = pres.free_count(Y.word.letters) - pres.free_count(X.word.letters)
    if budget < 0:
        return []
    if cache is None:
        cache = {}
    R = pres.R
    fs, f_images, f_free = _words(pres, Y.source, X.source, bound, budget, cache)
    f2s, f2_images, f2_free = _words(pres, X.target, Y.target, bound, budget, cache)
    x = R._a(p0_apply(pres, X.word))
    y = R._a(p0_apply(pres, Y.word))

    morphisms = []
    for f, image, used in zip(fs, f_images, f_free):
        # composing in R is a functor on normal forms, the square must
        # already commute there
        xf = R._table[x, image]
        candidates = (R._table[f2_images, xf] == y) & (f2_free == budget - used)
        for i in np.nonzero(candidates)[0]:
            if _square_commutes(pres, X, Y, f, f2s[i]):
                morphisms.append(DRMorphism(X, Y, f, f2s[i]))
    return morphisms


class UnrolledCategory(Frozen):
    """
    The unrolled category of an amalgam presentation, as a full subcategory
    of the twisted arrow category of the presented category.

    ``category`` is the materialized :py:class:`FinCat`, ``projection`` the
    functor to R, and the :py:class:`DRObject` and :py:class:`DRMorphism`
    behind every object and arrow are available through :py:func:`object` and
    :py:func:`morphism`.

    The composition table has one entry per pair of morphisms;
    :py:class:`SizeCapExceeded` is raised when it would hold more entries
    than ``cap``, by default the configured lift size cap.
    """

    def __init__(self, pres, bound=None, cap=None):
        self.presentation = pres
        self.hom_bound = hom_bound(bound)

        cap = lift_size_cap(cap)
        objects = enumerate_objects(pres)
        morphisms, cache = [], {}
        for X in objects:
            for Y in objects:
                morphisms.extend(enumerate_morphisms(pres, X, Y, self.hom_bound, cache))
                # the composition table is dense
                if len(morphisms) ** 2 > cap:
                    raise SizeCapExceeded(len(morphisms) ** 2, cap)

        object_index = {X.id: i for i, X in enumerate(objects)}
        lookup = {(m.X.id, m.Y.id, m.f, m.f2): i for i, m in enumerate(morphisms)}
        identity = [
            lookup[(X.id, X.id, NFWord(X.source, X.source), NFWord(X.target, X.target))]
            for X in objects
        ]
        by_source = {}
        for i, m in enumerate(morphisms):
            by_source.setdefault(m.X.id, []).append(i)

        n = len(morphisms)
        table = np.full((n, n), -1, dtype=np.int64)
        for i, first in enumerate(morphisms):
            for j in by_source.get(first.Y.id, []):
                second = morphisms[j]
                f = nf_compose(pres, first.f, second.f)
                f2 = nf_compose(pres, second.f2, first.f2)
                key = (first.X.id, second.Y.id, f, f2)
                if key not in lookup:
                    raise BoundExceeded(
                        f"the composite of {second.id} and {first.id} has a component "
                        f"longer than the hom bound {self.hom_bound}"
                    )
                table[j, i] = lookup[key]

        ids = [m.id for m in morphisms]
        self.category = FinCat._from_arrays(
            [X.id for X in objects],
            ids,
            ids,
            [object_index[m.X.id] for m in morphisms],
            [object_index[m.Y.id] for m in morphisms],
            identity,
            table,
        ).validate()
        self._objects = {X.id: X for X in objects}
        self._morphisms = {m.id: m for m in morphisms}
        self._by_word = {X.word: X for X in objects}
        self._lookup = {key: ids[i] for key, i in lookup.items()}

        R = pres.R
        self.projection = FinFunctor._from_arrays(
            self.category,
            R,
            np.array([R._o(X.target) for X in objects], dtype=np.int64),
            np.array([R._a(p0_apply(pres, m.f2)) for m in morphisms], dtype=np.int64),
        )
        self._freeze()

    def object(self, obj):
        """Get the :py:class:`DRObject` with the identifier ``obj``"""
        return self._objects[obj]

    def morphism(self, arrow):
        """Get the :py:class:`DRMorphism` with the identifier ``arrow``"""
        return self._morphisms[arrow]

    def objects(self):
        return [self._objects[o] for o in self.category.objects]

    def morphisms(self):
        return [self._morphisms[a] for a in self.category.arrows]

    def object_for(self, word):
        """Get the :py:class:`DRObject` whose word is ``word``, or ``None``"""
        return self._by_word.get(word)

    def morphism_for(self, X, Y, f, f2):
        """Get the identifier of the morphism ``(f, f2): X → Y``, or ``None``"""
        return self._lookup.get((X.id, Y.id, f, f2))

    def identity_object(self, r):
        """Get the empty word object over the object ``r`` of R"""
        return self._by_word[NFWord(r, r)]

    def hom(self, X, Y):
        """Get the morphisms from ``X`` to ``Y``"""
        return [self._morphisms[a] for a in self.category.hom(X.id, Y.id)]

    def __repr__(self):
        return f"UnrolledCategory {self.category!r}"


def build_DR(pres, bound=None):
    """
    Build the unrolled category of the presentation ``pres``. Morphism
    components have at most ``bound`` letters, by default the configured hom
    bound.
    """
    return UnrolledCategory(pres, bound)


def projection_p(unrolled):
    """Get the projection of the unrolled category to R"""
    return unrolled.projection


def degree_DR(unrolled, X, structure):
    """
    Get the degree of the object ``X`` of the unrolled category, from a Reedy
    ``structure`` on R: the degree of its target minus the degree of its
    source, plus one if the word contains an isomorphism outside the image of
    c. This raises :py:class:`NegativeDegree` if the result is negative.
    """
    if isinstance(X, str):
        X = unrolled.object(X)
    value = structure.degree[X.target] - structure.degree[X.source]
    if X.w is not None:
        value += 1
    if value < 0:
        raise NegativeDegree(X.id, value)
    return value


def hom_bound_adequate(pres, bound=None):
    """
    Check that enumerating morphisms with two more letters per component
    finds no new morphism of the unrolled category.
    """
    bound = hom_bound(bound)
    report = Report(f"hom bound {bound} adequacy")
    objects = enumerate_objects(pres)
    missing, cache = [], {}
    for X in objects:
        for Y in objects:
            found = set(enumerate_morphisms(pres, X, Y, bound, cache))
            for m in enumerate_morphisms(pres, X, Y, bound + 2, cache):
                if m not in found:
                    missing.append(m.id)
    report.add(
        "no-new-morphisms",
        len(missing) == 0,
        missing,
        f"morphisms re-enumerated with components of length up to {bound + 2}",
    )
    return report
