from .fincat import opposite
from .freecat import NFWord, normalize
from .misc import StructureViolation, UnrollingError
from .report import Report
from .unroll import degree_DR
from .utils import Frozen


class ReedyStructure(Frozen):
    """
    A :py:class:`ReedyStructure` over a finite category ``base``: a
    ``degree`` for every object, and the ``plus`` and ``minus`` classes of
    arrows. Identities are added to both classes.

    The structure is not checked on construction, use
    :py:func:`check_generalized_reedy` and friends for this.
    """

    def __init__(self, base, degree, plus, minus):
        identities = {base.identity(o) for o in base.objects}
        self.base = base
        self.degree = {o: int(d) for o, d in dict(degree).items()}
        self.plus = frozenset(plus) | identities
        self.minus = frozenset(minus) | identities
        for arrow in self.plus | self.minus:
            if not base.has_arrow(arrow):
                raise UnrollingError(f"unknown arrow '{arrow}' in Reedy classes")
        self._freeze()

    def is_plus(self, arrow):
        return arrow in self.plus

    def is_minus(self, arrow):
        return arrow in self.minus

    def opposite(self):
        """
        Get the structure on the opposite category: degrees are kept, the plus
        and minus classes are swapped.
        """
        return self.__class__(opposite(self.base), self.degree, self.minus, self.plus)

    def factor(self, arrow):
        """
        Get all the factorizations of ``arrow`` as ``(minus, plus)`` pairs,
        with ``plus ∘ minus = arrow``.
        """
        C = self.base
        result = []
        for m in sorted(self.minus):
            if C.dom(m) != C.dom(arrow):
                continue
            for p in C.hom(C.cod(m), C.cod(arrow)):
                if p in self.plus and C.compose(p, m) == arrow:
                    result.append((m, p))
        return result

    def __repr__(self):
        return (
            f"{self.__class__.__name__} on {self.base!r} with {len(self.plus)} "
            f"plus and {len(self.minus)} minus arrows"
        )


class StrictReedyStructure(ReedyStructure):
    """A :py:class:`ReedyStructure` meant to have no non-identity isomorphism
    and strictly unique factorizations."""

    pass


def _closed(C, arrows):
    failures = []
    for g in sorted(arrows):
        for f in sorted(arrows):
            if C.dom(g) == C.cod(f) and C.compose(g, f) not in arrows:
                failures.append(f"{g} o {f}")
    return failures


def _generalized_reedy(S, report):
    C = S.base
    isos = set(C.isomorphisms())
    missing = [o for o in C.objects if o not in S.degree or S.degree[o] < 0]
    message = "every object has a natural degree"
    report.add("degrees", len(missing) == 0, missing, message)
    if missing:
        return report

    report.add("plus-subcategory", *_closure_verdict(C, S.plus))
    report.add("minus-subcategory", *_closure_verdict(C, S.minus))

    both = S.plus & S.minus
    report.add(
        "plus-minus-isos",
        both == isos,
        sorted(both ^ isos),
        "the arrows in both classes are exactly the isomorphisms",
    )

    def change(arrow):
        return S.degree[C.cod(arrow)] - S.degree[C.dom(arrow)]

    bad = [a for a in sorted(S.plus - isos) if change(a) <= 0]
    report.add("plus-raises-degree", len(bad) == 0, bad)
    bad = [a for a in sorted(S.minus - isos) if change(a) >= 0]
    report.add("minus-lowers-degree", len(bad) == 0, bad)
    bad = [a for a in sorted(isos) if change(a) != 0]
    report.add("isos-preserve-degree", len(bad) == 0, bad)

    missing, ambiguous = [], []
    for arrow in C.arrows:
        factorizations = S.factor(arrow)
        if len(factorizations) == 0:
            missing.append(arrow)
            continue
        m0, p0 = factorizations[0]
        for m, p in factorizations[1:]:
            if not _related_by_iso(C, (m0, p0), (m, p)):
                ambiguous.append(arrow)
                break
    report.add(
        "factorization",
        len(missing) == 0 and len(ambiguous) == 0,
        missing + ambiguous,
        "every arrow factors as plus after minus, uniquely up to isomorphism",
    )

    bad = []
    for m in sorted(S.minus):
        for theta in C.hom(C.cod(m), C.cod(m)):
            if theta in isos and not C.is_identity(theta) and C.compose(theta, m) == m:
                bad.append(f"{theta} o {m}")
    message = "θ ∘ m = m forces θ = id for m minus"
    report.add("iso-rigidity", len(bad) == 0, bad, message)
    return report


def _closure_verdict(C, arrows):
    failures = _closed(C, arrows)
    return len(failures) == 0, failures, "closed under composition"


def _related_by_iso(C, first, second):
    m, p = first
    m2, p2 = second
    for theta in C.hom(C.cod(m), C.cod(m2)):
        if (
            C.inverse(theta) is not None
            and C.compose(theta, m) == m2
            and C.compose(p2, theta) == p
        ):
            return True
    return False


def check_generalized_reedy(S):
    """
    Check every axiom of a generalized Reedy structure exhaustively, and get
    the result as a :py:class:`Report`.
    """
    return _generalized_reedy(S, Report("generalized Reedy structure"))


def check_unique_factorization(S):
    """Check that every arrow has exactly one minus-then-plus factorization"""
    report = Report("unique factorization")
    bad = []
    for arrow in S.base.arrows:
        count = len(S.factor(arrow))
        if count != 1:
            bad.append(f"{arrow} ({count} factorizations)")
    report.add("unique-factorization", len(bad) == 0, bad)
    return report


def check_strict(S):
    """
    Check that ``S`` is a strict Reedy structure: a generalized one, with only
    identity isomorphisms and strictly unique factorizations.
    """
    report = _generalized_reedy(S, Report("strict Reedy structure"))
    C = S.base
    bad = [a for a in C.isomorphisms() if not C.is_identity(a)]
    report.add("only-identity-isos", len(bad) == 0, bad)
    report.extend(check_unique_factorization(S))
    return report


def check_generalized_direct(S):
    """Check that ``S`` is generalized Reedy with only isomorphisms in minus"""
    report = _generalized_reedy(S, Report("generalized direct structure"))
    isos = set(S.base.isomorphisms())
    bad = sorted(S.minus - isos)
    report.add("minus-only-isos", len(bad) == 0, bad)
    return report


def find_arrow_lift(pres, arrow):
    """
    Find ``(k, w, w2)`` with ``k`` an arrow of R0, and ``w``, ``w2``
    isomorphisms of R such that ``w2 ∘ arrow = c(k) ∘ w``. Returns ``None``
    when there is no such lift.
    """
    R, c = pres.R, pres.c
    a, b = R.dom(arrow), R.cod(arrow)
    images = {c.map_object(x) for x in pres.R0.objects}
    for x in sorted(images):
        for w in R.hom(a, x):
            w_inv = R.inverse(w)
            if w_inv is None:
                continue
            for y in sorted(images):
                for w2 in R.hom(b, y):
                    if R.inverse(w2) is None:
                        continue
                    square = R.compose(R.compose(w2, arrow), w_inv)
                    k = pres.preimage(square)
                    if k is not None:
                        return k, w, w2
    return None


def check_lifting_condition(pres, S0=None):
    """
    Check that every arrow of R lifts to an arrow of R0 up to isomorphisms on
    both ends. When a Reedy structure ``S0`` on R0 is given, it is checked to
    be strict as well.
    """
    report = Report("lifting condition")
    if S0 is not None:
        report.extend(check_strict(S0), prefix="R0")
    unliftable = [a for a in pres.R.arrows if find_arrow_lift(pres, a) is None]
    report.add(
        "every-arrow-lifts",
        len(unliftable) == 0,
        unliftable,
        "w' ∘ f = c(k) ∘ w with w, w' isomorphisms",
    )
    return report


def _component(pres, word):
    """
    Split a component word into ``(k, u)``: ``k`` the arrow of R0 behind a
    leading letter in the image of c, ``u`` a trailing isomorphism outside the
    image of c. Returns ``None`` for any other shape.
    """
    letters = word.letters
    k, u = None, None
    if len(letters) >= 1 and pres.is_c_letter(letters[0]):
        k = pres.preimage(letters[0])
        letters = letters[1:]
    if len(letters) == 1 and not pres.is_c_letter(letters[0]):
        if pres.R.inverse(letters[0]) is None:
            return None
        u = letters[0]
        letters = ()
    if len(letters) != 0:
        return None
    return k, u


def _plus_component(pres, S0, word):
    parts = _component(pres, word)
    return parts is not None and (parts[0] is None or parts[0] in S0.plus)


def _minus_component(pres, S0, word):
    parts = _component(pres, word)
    if parts is None or parts[1] is not None:
        return False
    return parts[0] is None or parts[0] in S0.minus


def induce_DR_structure(unrolled, S, S0):
    """
    Build the Reedy structure of the unrolled category from the structure
    ``S`` on R and the strict structure ``S0`` on R0.

    Degrees follow :py:func:`degree_DR`. A morphism ``(f, f2)`` is plus when
    both components are empty, a letter ``c(k)`` with ``k`` plus in R0, an
    isomorphism outside the image of c, or ``c(k)`` followed by such an
    isomorphism. It is minus when both components are empty or a letter
    ``c(k)`` with ``k`` minus in R0.

    A :py:class:`StructureViolation` is raised if the result is not a strict
    Reedy structure.
    """
    pres = unrolled.presentation
    degree = {X.id: degree_DR(unrolled, X, S) for X in unrolled.objects()}
    plus, minus = set(), set()
    for m in unrolled.morphisms():
        if _plus_component(pres, S0, m.f) and _plus_component(pres, S0, m.f2):
            plus.add(m.id)
        if _minus_component(pres, S0, m.f) and _minus_component(pres, S0, m.f2):
            minus.add(m.id)
    structure = StrictReedyStructure(unrolled.category, degree, plus, minus)

    report = check_strict(structure)
    for verdict in report.failures():
        witness = verdict.witnesses[0] if verdict.witnesses else ""
        raise StructureViolation(
            witness, f"the induced structure fails the '{verdict.name}' axiom"
        )
    return structure


def reedy_factor_DR(unrolled, F, S0):
    """
    Factor the morphism ``F`` (an identifier or a :py:class:`DRMorphism`) of
    the unrolled category as a minus morphism followed by a plus morphism,
    by factoring the R0 parts of its components in ``S0``. Returns the
    identifiers ``(minus, plus)``.
    """
    if isinstance(F, str):
        F = unrolled.morphism(F)
    pres = unrolled.presentation
    R0 = pres.R0
    X, Y = F.X, F.Y

    first = _component(pres, F.f)
    second = _component(pres, F.f2)
    if first is None or second is None:
        raise StructureViolation(
            F.id, "a component is not an R0 letter then an isomorphism"
        )

    k, _ = first
    if k is not None:
        factorizations = S0.factor(k)
        if len(factorizations) != 1:
            raise StructureViolation(F.id, f"'{k}' has no unique factorization in R0")
        if not R0.is_identity(factorizations[0][0]):
            raise StructureViolation(F.id, "the source component has a minus part")

    k2, u2 = second
    a2 = NFWord(X.target, X.target)
    b2 = F.f2
    if k2 is not None:
        factorizations = S0.factor(k2)
        if len(factorizations) != 1:
            raise StructureViolation(F.id, f"'{k2}' has no unique factorization in R0")
        m2, p2 = factorizations[0]
        c = pres.c
        a2 = normalize(pres, [c.map_arrow(m2)], source=X.target)
        letters = [c.map_arrow(p2)] + ([u2] if u2 is not None else [])
        b2 = normalize(pres, letters, source=a2.target)

    a = NFWord(X.source, X.source)
    middle = normalize(pres, X.word.letters + a2.letters, source=X.source)
    Z = unrolled.object_for(middle)
    if Z is None:
        raise StructureViolation(F.id, "the middle object is not an unrolled object")
    minus = unrolled.morphism_for(X, Z, a, a2)
    plus = unrolled.morphism_for(Z, Y, F.f, b2)
    if minus is None or plus is None:
        raise StructureViolation(F.id, "the factors are not morphisms")
    if unrolled.category.compose(plus, minus) != F.id:
        raise StructureViolation(F.id, "the factors do not compose back")
    return minus, plus


def is_reedy_functor(G, SC, SD):
    """
    Check that the functor ``G`` sends plus arrows to plus arrows and minus
    arrows to minus arrows.
    """
    report = Report("Reedy functor")
    bad = [a for a in sorted(SC.plus) if G.map_arrow(a) not in SD.plus]
    report.add("preserves-plus", len(bad) == 0, bad)
    bad = [a for a in sorted(SC.minus) if G.map_arrow(a) not in SD.minus]
    report.add("preserves-minus", len(bad) == 0, bad)
    return report


def comma_reedy_structure(comma, SA, SB):
    """
    Get the Reedy structure on a comma category ``F ↓ G`` from structures on
    the sources of ``F`` and ``G``: degrees are added, and an arrow ``(u, v)``
    is plus (resp. minus) when both ``u`` and ``v`` are.
    """
    C = comma.category
    degree = {}
    for obj in C.objects:
        a, b, _ = comma.triple(obj)
        degree[obj] = SA.degree[a] + SB.degree[b]
    plus, minus = set(), set()
    for arrow in C.arrows:
        u, v = comma.pi0.map_arrow(arrow), comma.pi1.map_arrow(arrow)
        if u in SA.plus and v in SB.plus:
            plus.add(arrow)
        if u in SA.minus and v in SB.minus:
            minus.add(arrow)
    return ReedyStructure(C, degree, plus, minus)
