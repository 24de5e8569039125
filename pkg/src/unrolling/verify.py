"""
The end to end verification suite run by ``unrolling verify``. Every
``check_*`` function below builds its own inputs from :py:mod:`unrolling.zoo`
and returns a :py:class:`Report`.
"""
import numpy as np

from .cattribe import (
    check_fiber_degrees,
    check_tribe_factorization,
    constant_diagram,
    factorize_cat,
    find_lift,
    group_action_diagram,
    is_anodyne_cat,
    is_isofibration,
    is_p_fibrant,
    matching_object,
    pullback,
    restrict_along_p,
    retract_demo,
    terminal_map,
    tribe_factorize,
    unit_iso,
)
from .factcheck import (
    check_absolutely_dense,
    check_cofibering,
    check_grothendieck_fibration,
)
from .fincat import (
    CommaCategory,
    FinDiagramShape,
    FinFunctor,
    canonical,
    discrete,
    finite_limit,
    identity_functor,
    inverse,
    is_isomorphism,
    walking_arrow,
)
from .freecat import normalize, normalize_randomly
from .misc import NoLift, SizeCapExceeded
from .reedy import (
    check_strict,
    comma_reedy_structure,
    induce_DR_structure,
    reedy_factor_DR,
)
from .report import Report
from .unroll import UnrolledCategory, hom_bound_adequate
from .zoo import (
    GROUPS,
    CubeSpec,
    cube_category,
    gaunt_catalog,
    group_example,
    non_dense_inclusion,
    random_category,
    random_functor,
    random_word,
)

SEED = 0xC0FFEE


def _group(name):
    return group_example(name, GROUPS[name]())


def examples():
    """Get the generalized direct examples with a presentation"""
    return [
        _group("Z2"),
        _group("Z3"),
        _group("S3"),
        cube_category(CubeSpec(2, symmetries=True)),
    ]


def _unrolled(example):
    return UnrolledCategory(example.presentation)


def check_two_object_shape():
    """The unrolled category of Z/2 has two objects and two parallel arrows"""
    report = Report("unrolled Z/2")
    U = _unrolled(_group("Z2"))
    C = U.category
    two = len(C.objects) == 2
    report.add("two-objects", two, [] if two else C.objects)
    empty = U.identity_object("*").id
    others = [o for o in C.objects if o != empty]
    if len(others) != 1:
        report.add("parallel-arrows", False, others, "expected one non-empty word")
        return report
    other = others[0]
    report.add("parallel-arrows", len(C.hom(empty, other)) == 2, C.hom(empty, other))
    report.add("no-arrows-back", len(C.hom(other, empty)) == 0, C.hom(other, empty))
    report.add("only-identity-endo", C.hom(other, other) == [C.identity(other)])
    return report


def check_group_shapes():
    """Two arrows from the empty word to each other object, none in between"""
    report = Report("unrolled groups")
    for name in ("Z3", "S3"):
        U = _unrolled(_group(name))
        C = U.category
        empty = U.identity_object("*").id
        others = [o for o in C.objects if o != empty]
        bad = [o for o in others if len(C.hom(empty, o)) != 2]
        report.add(f"{name}/two-arrows", len(bad) == 0, bad)
        bad = [f"{x}>{y}" for x in others for y in others if x != y and C.hom(x, y)]
        report.add(f"{name}/no-arrows-between", len(bad) == 0, bad)
    return report


def check_induced_structures():
    """The induced structures are strict, and factor like the exhaustive search"""
    report = Report("induced Reedy structures")
    for example in examples():
        U = _unrolled(example)
        S = induce_DR_structure(U, example.structure, example.base_structure)
        report.extend(check_strict(S), prefix=example.name)
        bad = []
        for arrow in U.category.arrows:
            factors = reedy_factor_DR(U, arrow, example.base_structure)
            if S.factor(arrow) != [factors]:
                bad.append(arrow)
        report.add(f"{example.name}/factorization-agrees", len(bad) == 0, bad)
    return report


def check_density():
    """Projections are absolutely dense, the inclusion fixture is not"""
    report = Report("absolute density")
    for example in examples():
        projection = _unrolled(example).projection
        report.extend(check_absolutely_dense(projection), prefix=example.name)
    fixture = check_absolutely_dense(non_dense_inclusion())
    witnesses = [w for v in fixture.verdicts for w in v.witnesses]
    report.add(
        "fixture-fails",
        not fixture.passed and any(w.endswith(": 2 components") for w in witnesses),
        witnesses,
    )
    return report


def check_comma_projection():
    """The first projection of ``p ↓ p`` is a cofibering Grothendieck fibration"""
    report = Report("comma projection")
    for name in ("Z2", "Z3"):
        example = _group(name)
        U = _unrolled(example)
        S = induce_DR_structure(U, example.structure, example.base_structure)
        comma = CommaCategory(U.projection, U.projection)
        SC = comma_reedy_structure(comma, S, S)
        report.extend(check_grothendieck_fibration(comma.pi0), prefix=name)
        report.extend(check_cofibering(comma.pi0, SC, S), prefix=name)
        report.extend(check_fiber_degrees(U, comma, S, example.structure), prefix=name)
    return report


def _involution():
    """The discrete category on two objects, with the swap"""
    x = discrete(["u", "v"])
    swap = FinFunctor(x, x, {"u": "v", "v": "u"}, {"id_u": "id_v", "id_v": "id_u"})
    return x, swap


def check_binary_matching():
    """Over Z/2, the matching object at the non-empty word is a product"""
    report = Report("binary matching objects")
    example = _group("Z2")
    U = _unrolled(example)
    x, swap = _involution()
    X = group_action_diagram(example.category, x, {"g": swap})
    pX = restrict_along_p(U, X)
    (obj,) = [o for o in U.category.objects if o != U.identity_object("*").id]
    M = matching_object(pX, obj)

    legs = {}
    for o in M.slice.category.objects:
        element = U.projection.map_arrow(M.slice.arrow_of(o))
        legs["0" if element == "e" else "1"] = M.limit.projections[o]
    if sorted(legs) != ["0", "1"]:
        report.add("two-legs", False, sorted(legs))
        return report
    pair = discrete(["0", "1"])
    product = finite_limit(
        FinDiagramShape(pair),
        {"0": x, "1": x},
        {"id_0": identity_functor(x), "id_1": identity_functor(x)},
    )
    comparison = product.mediating(M.category, legs)
    report.add("product", is_isomorphism(comparison))
    expected = product.mediating(x, {"0": identity_functor(x), "1": swap})
    report.add("matching-map", M.map.then(comparison) == expected, [], "<id, g>")
    return report


def check_gaunt_criterion():
    """A constant diagram over Z/2 is p-fibrant exactly when its value is gaunt"""
    report = Report("gaunt criterion")
    example = _group("Z2")
    U = _unrolled(example)
    bad = []
    for name, C, gaunt in gaunt_catalog():
        if is_p_fibrant(U, constant_diagram(example.category, C)) != gaunt:
            bad.append(name)
    report.add("fibrant-iff-gaunt", len(bad) == 0, bad)
    return report


def sample_diagrams():
    """Get ``(group name, diagram)`` pairs of small diagrams over groups"""
    z2, z3 = _group("Z2"), _group("Z3")
    x, swap = _involution()
    y = discrete(["u", "v", "w"])
    rotation = FinFunctor(
        y,
        y,
        {"u": "v", "v": "w", "w": "u"},
        {"id_u": "id_v", "id_v": "id_w", "id_w": "id_u"},
    )
    rotation2 = rotation.then(rotation)
    chain = walking_arrow()
    return [
        ("Z2", constant_diagram(z2.category, chain)),
        ("Z2", group_action_diagram(z2.category, x, {"g": swap})),
        ("Z2", constant_diagram(z2.category, discrete(["u"]))),
        ("Z3", constant_diagram(z3.category, chain)),
        ("Z3", group_action_diagram(z3.category, y, {"g": rotation, "g2": rotation2})),
    ]


def check_unit_isomorphisms():
    """Restricting along p then extending back gives isomorphic diagrams"""
    report = Report("unit isomorphisms")
    unrolled = {name: _unrolled(_group(name)) for name in ("Z2", "Z3")}
    for i, (name, X) in enumerate(sample_diagrams()):
        eta = unit_iso(unrolled[name], X)
        passed = all(is_isomorphism(c) for c in eta.components.values())
        report.add(f"{name}/sample-{i}", passed)
    return report


def check_tribe_factorizations():
    """Maps between p-fibrant diagrams over Z/2 factor as in a tribe"""
    report = Report("tribe factorizations")
    example = _group("Z2")
    U = _unrolled(example)
    x, swap = _involution()
    chain = constant_diagram(example.category, walking_arrow())
    maps = [
        terminal_map(chain),
        terminal_map(group_action_diagram(example.category, x, {"g": swap})),
        terminal_map(constant_diagram(example.category, discrete(["u", "v"]))),
    ]
    for i, m in enumerate(maps):
        J, Q = tribe_factorize(U, m)
        report.extend(check_tribe_factorization(U, m, J, Q), prefix=f"map-{i}")
    return report


def _canonical_iso(category):
    """The isomorphism from ``category`` to its canonical renaming"""
    renamed = canonical(category)
    return FinFunctor(
        category,
        renamed,
        dict(zip(category.objects, renamed.objects)),
        dict(zip(category.arrows, renamed.arrows)),
    )


def check_tribe_axioms(count=50, seed=SEED):
    """
    Factorizations, stability of isofibrations and anodynes, and lifts on
    random functors
    """
    rng = np.random.default_rng(seed)
    report = Report("tribe of categories")
    factorizations, compositions, pullbacks, lifts = [], [], [], []
    anodynes, isomorphisms = [], []
    for i in range(count):
        A, B, C = random_category(rng), random_category(rng), random_category(rng)
        F = random_functor(rng, A, B)
        G = random_functor(rng, B, C)
        if F is None or G is None:
            continue
        j, q = factorize_cat(F)
        if not (is_anodyne_cat(j) and is_isofibration(q) and j.then(q) == F):
            factorizations.append(str(i))

        if is_isofibration(F) and is_isofibration(G) and not is_isofibration(F.then(G)):
            compositions.append(str(i))

        _, r = factorize_cat(G)
        H = random_functor(rng, A, C)
        if H is not None:
            P = pullback(r, H)
            if not is_isofibration(P.projections["1"]):
                pullbacks.append(str(i))

        # lift j against r in a square through a functor between their middles
        K = random_functor(rng, j.target, r.source)
        if K is not None:
            try:
                L = find_lift(j, r, j.then(K), K.then(r))
            except (NoLift, SizeCapExceeded):
                lifts.append(str(i))
            else:
                if j.then(L) != j.then(K) or L.then(r) != K.then(r):
                    lifts.append(str(i))
        try:
            retract_demo(j)
        except (NoLift, SizeCapExceeded):
            lifts.append(f"{i}-retract")

        # pull j back along isofibrations into its target
        _, s = factorize_cat(j)
        for along in (identity_functor(j.target), s):
            if not is_anodyne_cat(pullback(j, along).projections["1"]):
                anodynes.append(str(i))
                break

        renaming = _canonical_iso(A)
        if not (is_isofibration(renaming) and is_isofibration(inverse(renaming))):
            isomorphisms.append(str(i))

    report.add("factorization-classes", len(factorizations) == 0, factorizations)
    report.add("isofibrations-compose", len(compositions) == 0, compositions)
    report.add("isofibrations-pull-back", len(pullbacks) == 0, pullbacks)
    report.add("anodynes-pull-back", len(anodynes) == 0, anodynes)
    report.add("isomorphisms-are-isofibrations", len(isomorphisms) == 0, isomorphisms)
    report.add("lifts-exist", len(lifts) == 0, lifts)
    return report


def check_rewriting(words=1000, seed=SEED):
    """Normal forms do not depend on the rewriting order, hom bounds suffice"""
    rng = np.random.default_rng(seed)
    report = Report("rewriting")
    for example in examples():
        pres = example.presentation
        bad = []
        for i in range(words):
            letters = random_word(pres, rng)
            source = pres.R.objects[0] if not letters else None
            expected = normalize(pres, letters, source)
            if expected != normalize_randomly(pres, letters, rng, source):
                bad.append(" ".join(letters))
        report.add(f"{example.name}/order-independent", len(bad) == 0, bad)
        report.extend(hom_bound_adequate(pres), prefix=example.name)
    return report


CHECKS = [
    check_two_object_shape,
    check_group_shapes,
    check_induced_structures,
    check_density,
    check_comma_projection,
    check_binary_matching,
    check_gaunt_criterion,
    check_unit_isomorphisms,
    check_tribe_factorizations,
    check_tribe_axioms,
    check_rewriting,
]


def verify_all():
    """Run every check of this module in order, and aggregate the reports"""
    report = Report("verify")
    for check in CHECKS:
        result = check()
        report.extend(result, prefix=result.title)
    return report
