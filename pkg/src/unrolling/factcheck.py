from .fincat import connected_components, decorated_category
from .report import Report
from .utils import Frozen, tuple_id


class FactorizationCategory(Frozen):
    """
    The category of factorizations of an arrow ``f: b → b'`` of the target
    of ``functor``: objects are the ``(a, u: b → F(a), v: F(a) → b')`` with
    ``v ∘ u = f``, arrows are the ``h: a → a'`` with ``F(h) ∘ u = u'`` and
    ``v' ∘ F(h) = v``.
    """

    def __init__(self, functor, arrow):
        F, A, B = functor, functor.source, functor.target
        b, b2 = B.dom(arrow), B.cod(arrow)
        decorations = []
        for a in A.objects:
            Fa = F.map_object(a)
            for u in B.hom(b, Fa):
                for v in B.hom(Fa, b2):
                    if B.compose(v, u) == arrow:
                        decorations.append((a, u, v))

        def admissible(h, source, target):
            Fh = F.map_arrow(h)
            u, v = source
            u2, v2 = target
            return B.compose(Fh, u) == u2 and B.compose(v2, Fh) == v

        self.functor = functor
        self.arrow = arrow
        self.category, self.underlying = decorated_category(A, decorations, admissible)
        self._freeze()

    def components(self):
        return connected_components(self.category)

    def __repr__(self):
        return f"FactorizationCategory of '{self.arrow}': {self.category!r}"


class FactPlusCategory(Frozen):
    """
    The category of factorizations ``σ = G(ν) ∘ μ`` of an arrow
    ``σ: α → G(β)``, with ``ν: γ → β`` a non-identity arrow in the plus class
    of the source of ``G``, and ``μ: α → G(γ)`` any arrow. Arrows from
    ``(γ, μ, ν)`` to ``(γ', μ', ν')`` are the ``τ: γ → γ'`` with ``ν' ∘ τ = ν`` and
    ``G(τ) ∘ μ = μ'``.
    """

    def __init__(self, G, SC, alpha, beta, sigma):
        C, D = G.source, G.target
        decorations = []
        for gamma in C.objects:
            G_gamma = G.map_object(gamma)
            for nu in C.hom(gamma, beta):
                if nu not in SC.plus or C.is_identity(nu):
                    continue
                G_nu = G.map_arrow(nu)
                for mu in D.hom(alpha, G_gamma):
                    if D.compose(G_nu, mu) == sigma:
                        decorations.append((gamma, mu, nu))

        def admissible(tau, source, target):
            mu, nu = source
            mu2, nu2 = target
            return C.compose(nu2, tau) == nu and D.compose(G.map_arrow(tau), mu) == mu2

        self.alpha = alpha
        self.beta = beta
        self.sigma = sigma
        self.category, self.underlying = decorated_category(C, decorations, admissible)
        self._freeze()

    def components(self):
        return connected_components(self.category)

    def __repr__(self):
        return f"FactPlusCategory of '{self.sigma}': {self.category!r}"


def factorization_category(functor, arrow):
    return FactorizationCategory(functor, arrow)


def check_absolutely_dense(functor):
    """
    Check that ``functor`` is absolutely dense: for every arrow of its target,
    the category of factorizations through the functor must be non-empty and
    connected. Failing factorization categories are attached to the report.
    """
    report = Report("absolute density")
    failing = []
    for arrow in functor.target.arrows:
        factorizations = FactorizationCategory(functor, arrow)
        components = factorizations.components()
        if len(components) != 1:
            failing.append(f"{arrow}: {len(components)} components")
            report.attach(f"factorizations-{arrow}", factorizations.category)
    report.add(
        "factorizations-connected",
        len(failing) == 0,
        failing,
        "every category of factorizations is non-empty and connected",
    )
    return report


def check_cofibering(G, SC, SD):
    """
    Check that ``G`` is cofibering for the Reedy structures ``SC`` on its
    source and ``SD`` on its target: for every object ``α`` of the target,
    object ``β`` of the source and plus arrow ``σ: α → G(β)``, the category
    :py:class:`FactPlusCategory` must be empty or connected.
    """
    report = Report("cofibering")
    C, D = G.source, G.target
    failing = []
    for alpha in D.objects:
        for beta in C.objects:
            for sigma in D.hom(alpha, G.map_object(beta)):
                if sigma not in SD.plus:
                    continue
                fact = FactPlusCategory(G, SC, alpha, beta, sigma)
                components = fact.components()
                if len(components) > 1:
                    name = tuple_id((alpha, beta, sigma))
                    failing.append(f"{name}: {len(components)} components")
                    report.attach(f"fact-{name}", fact.category)
    report.add(
        "fact-categories-connected",
        len(failing) == 0,
        failing,
        "every factorization category is empty or connected",
    )
    return report


def check_fibering(G, SC, SD):
    """Check that the opposite of ``G`` is cofibering"""
    report = check_cofibering(G.opposite(), SC.opposite(), SD.opposite())
    report.title = "fibering"
    return report


def is_cartesian(G, phi):
    """
    Check that the arrow ``phi: e' → e`` of the source of ``G`` is cartesian:
    every ``ψ: e'' → e`` with ``G(ψ) = G(phi) ∘ g`` factors as ``phi ∘ χ``
    through a unique ``χ`` with ``G(χ) = g``.
    """
    E, B = G.source, G.target
    e2, e = E.dom(phi), E.cod(phi)
    f = G.map_arrow(phi)
    for e3 in E.objects:
        for psi in E.hom(e3, e):
            G_psi = G.map_arrow(psi)
            for g in B.hom(G.map_object(e3), G.map_object(e2)):
                if B.compose(f, g) != G_psi:
                    continue
                factors = [
                    chi
                    for chi in E.hom(e3, e2)
                    if G.map_arrow(chi) == g and E.compose(phi, chi) == psi
                ]
                if len(factors) != 1:
                    return False
    return True


def cartesian_lifts(G, e, f):
    """Get the cartesian arrows into ``e`` sent to the arrow ``f`` by ``G``"""
    E, B = G.source, G.target
    d = B.dom(f)
    lifts = []
    for e2 in E.objects:
        if G.map_object(e2) != d:
            continue
        for phi in E.hom(e2, e):
            if G.map_arrow(phi) == f and is_cartesian(G, phi):
                lifts.append(phi)
    return lifts


def check_grothendieck_fibration(G):
    """
    Check that every arrow ``f: d → G(e)`` has a cartesian lift with
    codomain ``e``.
    """
    report = Report("Grothendieck fibration")
    E, B = G.source, G.target
    missing = []
    for e in E.objects:
        for d in B.objects:
            for f in B.hom(d, G.map_object(e)):
                if not _has_cartesian_lift(G, e, f):
                    missing.append(f"{f} into {e}")
    report.add(
        "cartesian-lifts",
        len(missing) == 0,
        missing,
        "every arrow into the image of an object has a cartesian lift",
    )
    return report


def _has_cartesian_lift(G, e, f):
    return len(cartesian_lifts(G, e, f)) != 0
