"""Slice-style factorisations on finite categories.

Two systems live here: final functors followed by discrete right
fibrations, and initial functors followed by discrete left fibrations.
Comma categories drive everything; the comprehensive factorization routes
a functor through the category of elements of its connected-component
presheaf.
"""

from dataclasses import dataclass

from .budget import ensure_budget
from .errors import InvalidFamily, InvalidSpec
from .fincat import (FinCat, Functor, _key, all_functors, concrete_category,
                     identity_functor, terminal_category)
from .ringsys import CoverResult


@dataclass
class CommaCategory:
    ambient: Functor
    anchor: object
    side: str               # "d/F" or "F/d"
    category: FinCat
    projection: Functor     # down to the source of the ambient functor


def comma(F, d, side):
    """Objects are pairs (c, arrow between d and F(c)); morphisms inherited."""
    C, D = F.source, F.target
    if d not in set(D.objects):
        raise InvalidSpec("anchor %r is not an object of %s" % (d, D.name))
    if side not in ("d/F", "F/d"):
        raise InvalidSpec("comma side must be 'd/F' or 'F/d'")
    objects = []
    for c in C.objects:
        fc = F.on_obj(c)
        arrows = D.hom(d, fc) if side == "d/F" else D.hom(fc, d)
        objects.extend((c, g) for g in arrows)
    morphisms = {}
    for (c, g) in objects:
        for (c2, g2) in objects:
            for h in C.hom(c, c2):
                if side == "d/F":
                    ok = D.compose(F.on_mor(h), g) == g2
                else:
                    ok = D.compose(g2, F.on_mor(h)) == g
                if ok:
                    morphisms[((c, g), (c2, g2), h)] = ((c, g), (c2, g2))
    identities = {(c, g): ((c, g), (c, g), C.identities[c])
                  for (c, g) in objects}
    compose = {}
    for m2, (s2, t2) in morphisms.items():
        for m1, (s1, t1) in morphisms.items():
            if t1 == s2:
                compose[(m2, m1)] = (s1, t2, C.compose(m2[2], m1[2]))
    cat = FinCat(objects, morphisms, identities, compose,
                 name="%s%s%s" % (d, "/" if side == "d/F" else "\\", F.name))
    proj = Functor(cat, C, {o: o[0] for o in objects},
                   {m: m[2] for m in morphisms}, name="proj", check=True)
    return CommaCategory(F, d, side, cat, proj)


def connected_components(C):
    """Zig-zag components of the objects, canonical least id first."""
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m, (s, t) in C.morphisms.items():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt, key=_key)] = min(rs, rt, key=_key)
    groups = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    comps = [sorted(v, key=_key) for v in groups.values()]
    return sorted(comps, key=lambda comp: _key(comp[0]))


def is_final(F):
    """Every d/F comma category is nonempty and zig-zag connected."""
    for d in F.target.objects:
        K = comma(F, d, "d/F").category
        if len(connected_components(K)) != 1:
            return False
    return True


def is_initial(F):
    for d in F.target.objects:
        K = comma(F, d, "F/d").category
        if len(connected_components(K)) != 1:
            return False
    return True


def is_discrete_right_fibration(F):
    """Every arrow into an F-image has exactly one lift with the given target."""
    E, C = F.source, F.target
    for e in E.objects:
        fe = F.on_obj(e)
        for g in C.morphism_ids():
            if C.tgt(g) != fe:
                continue
            lifts = [m for m in E.morphism_ids()
                     if E.tgt(m) == e and F.on_mor(m) == g]
            if len(lifts) != 1:
                return False
    return True


def is_discrete_left_fibration(F):
    E, C = F.source, F.target
    for e in E.objects:
        fe = F.on_obj(e)
        for g in C.morphism_ids():
            if C.src(g) != fe:
                continue
            lifts = [m for m in E.morphism_ids()
                     if E.src(m) == e and F.on_mor(m) == g]
            if len(lifts) != 1:
                return False
    return True


def has_terminal_object(C):
    return any(all(len(C.hom(x, t)) == 1 for x in C.objects)
               for t in C.objects)


def has_initial_object(C):
    return any(all(len(C.hom(i, x)) == 1 for x in C.objects)
               for i in C.objects)


def raw_local_status(C):
    """'local' when a terminal object certifies it; otherwise 'unknown'.

    Only the sufficient direction is decided; no claim is made about
    categories without a terminal object.
    """
    return "local" if has_terminal_object(C) else "unknown"


def slice_factorize(C, c, side="right"):
    """Route the object inclusion through its slice or coslice.

    Right side: point at the identity object of C/c (checked terminal
    there) and project down, the projection being a discrete right
    fibration.  Left side dual through c/C with an initial object.
    """
    if side not in ("right", "left"):
        raise InvalidSpec("side must be 'right' or 'left'")
    idc = identity_functor(C)
    K = comma(idc, c, "F/d" if side == "right" else "d/F")
    apex = (c, C.identities[c])
    cat = K.category
    if side == "right":
        assert all(len(cat.hom(o, apex)) == 1 for o in cat.objects), \
            "identity object fails to be terminal in the slice"
        assert is_discrete_right_fibration(K.projection)
    else:
        assert all(len(cat.hom(apex, o)) == 1 for o in cat.objects), \
            "identity object fails to be initial in the coslice"
        assert is_discrete_left_fibration(K.projection)
    T = terminal_category()
    first = Functor(T, cat, {0: apex},
                    {("le", 0, 0): cat.identities[apex]},
                    name="pick-%s" % str(c), check=True)
    return first, K, K.projection


@dataclass
class ElementsCategory:
    base: FinCat
    side: str                   # "right" or "left"
    values: dict                # object of base -> tuple of component reps
    action: dict                # (base morphism, element) -> element
    category: FinCat
    projection: Functor


def comprehensive_factorize(F, side="right", budget=None):
    """Factor through the elements of the component presheaf.

    Right side: P(d) = components of d/F, acted on by precomposition;
    the functor lands at the component of the identity and the projection
    from the elements category is a discrete right fibration.  Left side
    uses F/d and postcomposition.
    """
    budget = ensure_budget(budget)
    if side not in ("right", "left"):
        raise InvalidSpec("side must be 'right' or 'left'")
    C, D = F.source, F.target
    commaside = "d/F" if side == "right" else "F/d"
    comps = {}
    rep = {}
    for d in D.objects:
        K = comma(F, d, commaside).category
        comps[d] = connected_components(K)
        rep[d] = {}
        for comp in comps[d]:
            for o in comp:
                rep[d][o] = comp[0]
    values = {d: tuple(comp[0] for comp in comps[d]) for d in D.objects}
    action = {}
    for m in D.morphism_ids():
        s, t = D.morphisms[m]
        if side == "right":
            # P(m): P(t) -> P(s), precompose the anchored arrow
            for x in values[t]:
                c, g = x
                action[(m, x)] = rep[s][(c, D.compose(g, m))]
        else:
            # Q(m): Q(s) -> Q(t), postcompose
            for x in values[s]:
                c, g = x
                action[(m, x)] = rep[t][(c, D.compose(m, g))]
    objects = [(d, x) for d in D.objects for x in values[d]]
    morphisms = {}
    for (d, x) in objects:
        for (d2, x2) in objects:
            for m in D.hom(d, d2):
                budget.spend()
                if side == "right":
                    ok = action[(m, x2)] == x
                else:
                    ok = action[(m, x)] == x2
                if ok:
                    morphisms[((d, x), (d2, x2), m)] = ((d, x), (d2, x2))
    identities = {(d, x): ((d, x), (d, x), D.identities[d])
                  for (d, x) in objects}
    compose = {}
    for m2, (s2, t2) in morphisms.items():
        for m1, (s1, t1) in morphisms.items():
            if t1 == s2:
                compose[(m2, m1)] = (s1, t2, D.compose(m2[2], m1[2]))
    cat = FinCat(objects, morphisms, identities, compose,
                 name="el(%s)" % F.name)
    proj = Functor(cat, D, {o: o[0] for o in objects},
                   {m: m[2] for m in morphisms}, name="proj", check=True)
    elem = ElementsCategory(D, side, values, action, cat, proj)
    first_obj = {}
    first_mor = {}
    for c in C.objects:
        fc = F.on_obj(c)
        first_obj[c] = (fc, rep[fc][(c, D.identities[fc])])
    for h, (c, c2) in C.morphisms.items():
        first_mor[h] = (first_obj[c], first_obj[c2], F.on_mor(h))
    first = Functor(C, cat, first_obj, first_mor,
                    name="unit-%s" % F.name, check=True)
    if side == "right":
        assert is_discrete_right_fibration(proj)
    else:
        assert is_discrete_left_fibration(proj)
    composite = first.then(proj)
    assert composite.obj_map == F.obj_map
    assert composite.mor_map == F.mor_map
    return first, elem, proj


def right_cover_check(C, family, budget=None):
    """Joint object-surjectivity of discrete right fibrations."""
    ensure_budget(budget)
    for G in family:
        if G.target is not C:
            raise InvalidFamily("family member does not land in %s" % C.name)
        if not is_discrete_right_fibration(G):
            raise InvalidFamily(
                "family member %r is not a discrete right fibration" % (G,))
    covered = set()
    for G in family:
        covered.update(G.on_obj(x) for x in G.source.objects)
    missing = [x for x in C.objects if x not in covered]
    if missing:
        return CoverResult("cat-right", False,
                           {"uncovered_object": str(missing[0])})
    return CoverResult("cat-right", True, {"objects": len(C.objects)})


def all_slices_cover(C):
    """The projections from every slice; always a cover."""
    return [slice_factorize(C, c, "right")[2] for c in C.objects]


def cat_universe(cats, budget=None, name="cats"):
    """Tabulate finitely many categories with all functors between them.

    Objects are named by each category's name (required unique); the
    payload carries the actual functors so lifting problems can be posed
    with the generic orthogonality machinery.
    """
    budget = ensure_budget(budget)
    names = [C.name for C in cats]
    if len(set(names)) != len(names):
        raise InvalidSpec("categories need distinct names to form a universe")
    return concrete_category(
        list(cats),
        object_key=lambda C: C.name,
        hom_fn=lambda A, B: all_functors(A, B, budget=budget),
        compose_fn=lambda g, f: f.then(g),
        identity_fn=identity_functor,
        name=name, budget=budget)
