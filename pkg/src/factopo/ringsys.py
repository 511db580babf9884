"""The three factorisation systems on finite commutative rings.

localization/conservative, surjective/injective, and integral/integrally
closed, together with the covering-family checks and the point sets they
induce.  At finite scale every element of a ring is integral over any
subring, so the third system degenerates: its middles equal the whole
target and its right class collapses to the isomorphisms.  That fact is
asserted where it is used rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .budget import Budget, ensure_budget
from .errors import InvalidFamily, InvalidSpec
from .finring import (FinRing, Ideal, RingHom, annihilator_kernel,
                      enumerate_homs, factors_through_surjection,
                      field_catalogue, identity_hom, ideal_generated, localize,
                      nilradical, prime_ideals, quotient_ring, radical)

SYSTEMS = ("loc-cons", "surj-mono", "int-intclo")
TOPOLOGIES = ("zar", "dom", "fin", "nfin")


# ---------------------------------------------------------------------------
# class membership

def conservative_witness(u):
    """An element whose image is a unit while it is not, or None."""
    A, B = u.source, u.target
    bu = B.units()
    au = A.units()
    for x in A.elements():
        if u(x) in bu and x not in au:
            return x
    return None


def is_conservative(u):
    # units always push forward along a unital hom; only the converse can fail
    assert all(u(x) in u.target.units() for x in u.source.units())
    return conservative_witness(u) is None


def is_localization_map(u):
    """True iff u is the canonical inversion of some multiplicative set.

    For finite rings that means: surjective with kernel exactly the
    annihilator kernel of the preimage of the target's units.
    """
    if not u.is_surjective():
        return False
    S = [x for x in u.source.elements() if u(x) in u.target.units()]
    return u.kernel_elements() == annihilator_kernel(u.source, S).elements


def integral_elements(u, budget=None, search_cap=4096):
    """Monic-dependency witnesses for every element of the target.

    Returns {element: coeff_tuple} where the tuple (c_0, ..., c_{d-1}) of
    image elements encodes x^d + c_{d-1} x^{d-1} + ... + c_0 vanishing at
    the element.  Witnesses are found by scanning powers for a linear
    dependence over the image, smallest degree first; past the search cap
    the guaranteed power-cycle relation x^j - x^i steps in.  Over finite
    rings this covers the whole target, which is exactly the degeneracy the
    callers assert.
    """
    budget = ensure_budget(budget)
    A, B = u.source, u.target
    image = sorted(set(u.mapping))
    witnesses = {}
    for b in B.elements():
        powers = [B.one]
        found = None
        deg = 1
        while found is None:
            powers.append(B.mul[powers[-1]][b])
            if len(image) ** deg <= search_cap:
                for coeffs in itertools.product(image, repeat=deg):
                    budget.spend()
                    acc = powers[deg]
                    for i, c in enumerate(coeffs):
                        acc = B.add[acc][B.mul[c][powers[i]]]
                    if acc == B.zero:
                        found = coeffs
                        break
            if found is None and deg >= 2:
                # power cycle b^i == b^j gives the monic x^j - x^i
                seen = {}
                p = B.one
                for j in range(B.size + 1):
                    if p in seen:
                        i = seen[p]
                        coeffs = [B.zero] * j
                        coeffs[i] = B.neg[B.one]
                        found = tuple(coeffs)
                        deg = j
                        break
                    seen[p] = j
                    p = B.mul[p][b]
            if found is None:
                deg += 1
        witnesses[b] = found
    return witnesses


def check_monic_witness(u, b, coeffs):
    """Re-evaluate a witness polynomial at b; coefficients must lie in the image."""
    B = u.target
    image = set(u.mapping)
    assert all(c in image for c in coeffs)
    acc = B.one
    for _ in range(len(coeffs)):
        acc = B.mul[acc][b]
    for i, c in enumerate(coeffs):
        p = B.one
        for _ in range(i):
            p = B.mul[p][b]
        acc = B.add[acc][B.mul[c][p]]
    return acc == B.zero


def is_integral_map(u, budget=None):
    """Every target element admits a monic dependency over the image.

    Finite rings make this always true; it is still computed from the
    definition so the class test mirrors the construction it verifies.
    """
    wit = integral_elements(u, budget=budget)
    return all(check_monic_witness(u, b, w) for b, w in wit.items())


def is_integrally_closed_map(u, budget=None):
    """Injective, and every element integral over the image lies in the image."""
    if not u.is_injective():
        return False
    image = set(u.mapping)
    wit = integral_elements(u, budget=budget)
    return all(b in image for b in wit)


CLASS_TESTS = {
    "loc-cons": (lambda u, budget=None: is_localization_map(u),
                 lambda u, budget=None: is_conservative(u)),
    "surj-mono": (lambda u, budget=None: u.is_surjective(),
                  lambda u, budget=None: u.is_injective()),
    "int-intclo": (is_integral_map, is_integrally_closed_map),
}


# ---------------------------------------------------------------------------
# factorizations

@dataclass(frozen=True)
class Factorization:
    system: str
    left: RingHom
    middle: FinRing
    right: RingHom

    def composite(self):
        return self.left.then(self.right)

    def verify(self, u=None, budget=None):
        """Recheck the whole contract: legs compose to u and each leg passes
        the membership test for its side of the system."""
        assert self.left.target is self.middle and self.right.source is self.middle
        if u is not None:
            assert self.left.source is u.source and self.right.target is u.target
            assert self.composite().mapping == u.mapping
        left_test, right_test = CLASS_TESTS[self.system]
        assert left_test(self.left, budget=budget)
        assert right_test(self.right, budget=budget)
        return self


@dataclass(frozen=True)
class TripleFactorization:
    surj: RingHom
    monoint: RingHom
    intclo: RingHom

    def composite(self):
        return self.surj.then(self.monoint).then(self.intclo)


def loc_cons_factorize(u):
    """Invert what becomes invertible, then a conservative remainder."""
    A, B = u.source, u.target
    S = [x for x in A.elements() if u(x) in B.units()]
    L, proj = localize(A, S)
    right = factors_through_surjection(u, proj)
    assert right is not None, "annihilator kernel escaped the kernel of u"
    right.validate()
    assert is_localization_map(proj)
    assert is_conservative(right)
    return Factorization("loc-cons", proj, L, right)


def surj_mono_factorize(u):
    A, B = u.source, u.target
    Q, proj = quotient_ring(A, Ideal(A, u.kernel_elements()).validate())
    right = factors_through_surjection(u, proj)
    assert right is not None
    right.validate()
    assert proj.is_surjective() and right.is_injective()
    return Factorization("surj-mono", proj, Q, right)


def int_intclo_factorize(u, budget=None):
    """Integral part first; over finite rings the closure is the full target,
    so the right leg is the identity.  The degeneracy is asserted."""
    assert is_integral_map(u, budget=budget)
    right = identity_hom(u.target)
    assert is_integrally_closed_map(right, budget=budget)
    return Factorization("int-intclo", u, u.target, right)


def triple_factorize(u, budget=None):
    """Surjection, then injective-and-integral, then integrally closed."""
    sm = surj_mono_factorize(u)
    assert is_integral_map(sm.right, budget=budget)
    intclo = identity_hom(u.target)
    t = TripleFactorization(sm.left, sm.right, intclo)
    assert t.composite().mapping == u.mapping
    return t


def factorize(u, system, budget=None):
    if system == "loc-cons":
        return loc_cons_factorize(u)
    if system == "surj-mono":
        return surj_mono_factorize(u)
    if system == "int-intclo":
        return int_intclo_factorize(u, budget=budget)
    raise InvalidSpec("unknown system %r" % (system,))


# ---------------------------------------------------------------------------
# ring classification

@dataclass
class RingClassification:
    is_field: bool
    is_fat_field: bool
    is_local: bool
    is_domain: bool
    is_integrally_closed_domain: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self):
        d = {
            "is_field": self.is_field,
            "is_fat_field": self.is_fat_field,
            "is_local": self.is_local,
            "is_domain": self.is_domain,
            "is_integrally_closed_domain": self.is_integrally_closed_domain,
        }
        if self.witnesses:
            d["witnesses"] = dict(sorted(self.witnesses.items()))
        return d


def classify_ring(A, budget=None):
    wit = {}
    units = A.units()
    nilp = A.nilpotents()
    nonzero = [x for x in A.elements() if x != A.zero]

    is_field = not A.is_zero_ring()
    for x in nonzero:
        if x not in units:
            is_field = False
            wit["is_field"] = A.names[x]
            break
    if A.is_zero_ring():
        wit["is_field"] = "zero ring"

    is_fat = not A.is_zero_ring()
    for x in A.elements():
        if x not in units and x not in nilp:
            is_fat = False
            wit["is_fat_field"] = A.names[x]
            break
    if A.is_zero_ring():
        wit["is_fat_field"] = "zero ring"

    is_local = not A.is_zero_ring()
    if is_local:
        for x in A.elements():
            y = A.sub(A.one, x)
            if x not in units and y not in units:
                is_local = False
                wit["is_local"] = (A.names[x], A.names[y])
                break
    else:
        wit["is_local"] = "zero ring"

    is_domain = not A.is_zero_ring()
    if is_domain:
        for x in nonzero:
            for y in nonzero:
                if A.mul[x][y] == A.zero:
                    is_domain = False
                    wit["is_domain"] = (A.names[x], A.names[y])
                    break
            if not is_domain:
                break
    else:
        wit["is_domain"] = "zero ring"

    # fraction-field route, not a shortcut through is_field: embed into the
    # localization away from 0 and ask whether that embedding is closed
    if is_domain:
        K, toK = localize(A, nonzero)
        icd = is_integrally_closed_map(toK, budget=budget)
        if not icd:
            wit["is_integrally_closed_domain"] = "embedding not closed"
    else:
        icd = False
        wit["is_integrally_closed_domain"] = wit.get("is_domain", "not a domain")

    return RingClassification(is_field, is_fat, is_local, is_domain, icd, wit)


# ---------------------------------------------------------------------------
# covering families

@dataclass
class CoverResult:
    topology: str
    covers: bool
    certificate: object = None

    def as_dict(self):
        return {"topology": self.topology, "covers": self.covers,
                "certificate": self.certificate}


def zar_combination_certificate(A, elems):
    """Coefficients with sum(c_i * a_i) == 1, or None; first hit under an
    ascending scan so the certificate is reproducible."""
    reach = {A.zero: tuple([0] * len(elems))}
    for idx, a in enumerate(elems):
        nxt = dict(reach)
        for v, co in reach.items():
            for r in A.elements():
                s = A.add[v][A.mul[r][a]]
                if s not in nxt:
                    co2 = list(co)
                    co2[idx] = r
                    nxt[s] = tuple(co2)
        reach = nxt
    return reach.get(A.one)


def cover_check(A, family, topology, field_bound=16, budget=None):
    """Decide whether a family covers, with a certificate either way.

    zar: elements, covering iff 1 lies in the ideal they generate.
    dom: ideals, covering iff their intersection sits inside the nilradical.
    fin: homs out of A, covering iff every prime has a nonempty fiber in
    some member (the image of the prime generates a proper ideal there).
    nfin: a fin family through which every hom to a catalogue field factors.
    The empty family covers exactly the zero ring.
    """
    budget = ensure_budget(budget)
    if topology == "zar":
        elems = []
        for a in family:
            if not isinstance(a, int) or not (0 <= a < A.size):
                raise InvalidFamily("zar family members must be elements of %s" % A.name)
            elems.append(a)
        combo = zar_combination_certificate(A, elems)
        if combo is None:
            return CoverResult("zar", False,
                               {"proper_ideal": ideal_generated(A, elems).label()})
        return CoverResult("zar", True, {"combination": list(combo)})

    if topology == "dom":
        ideals = []
        for I in family:
            if not isinstance(I, Ideal) or I.ring is not A:
                raise InvalidFamily("dom family members must be ideals of %s" % A.name)
            ideals.append(I.validate())
        inter = set(A.elements())
        for I in ideals:
            inter &= I.elements
        nil = nilradical(A).elements
        exponents = {}
        for x in sorted(inter):
            if x not in nil:
                return CoverResult("dom", False, {"non_nilpotent": A.names[x]})
            k, p = 1, x
            while p != A.zero:
                p = A.mul[p][x]
                k += 1
            exponents[A.names[x]] = k
        return CoverResult("dom", True, {"nilpotency": exponents})

    if topology in ("fin", "nfin"):
        homs = []
        for u in family:
            if not isinstance(u, RingHom) or u.source is not A:
                raise InvalidFamily("%s family members must be homs out of %s"
                                    % (topology, A.name))
            homs.append(u)
        assignment = {}
        for p in prime_ideals(A):
            chosen = None
            for i, u in enumerate(homs):
                budget.spend()
                fiber_ideal = ideal_generated(
                    u.target, sorted({u(x) for x in p.elements}))
                if fiber_ideal.is_proper():
                    chosen = i
                    break
            if chosen is None:
                return CoverResult(topology, False, {"empty_fiber_at": p.label()})
            assignment[p.label()] = chosen
        if topology == "fin":
            return CoverResult("fin", True, {"fiber_member": assignment})
        factoring = {}
        for K in field_catalogue(field_bound):
            for h in enumerate_homs(A, K, budget=budget):
                routed = None
                for i, u in enumerate(homs):
                    budget.spend()
                    for g in enumerate_homs(u.target, K, budget=budget):
                        if u.then(g).mapping == h.mapping:
                            routed = i
                            break
                    if routed is not None:
                        break
                if routed is None:
                    return CoverResult("nfin", False,
                                       {"unfactored_hom_to": K.name,
                                        "mapping": list(h.mapping)})
                factoring["%s:%s" % (K.name, ",".join(map(str, h.mapping)))] = routed
        return CoverResult("nfin", True,
                           {"fiber_member": assignment, "field_routing": factoring})

    raise InvalidSpec("unknown topology %r" % (topology,))


# ---------------------------------------------------------------------------
# points

def points_of(A, system="loc-cons"):
    """The points of A for the given system or topology tag: one per prime
    ideal, carried by its residue hom.  Every tag yields the same set; the
    cross-tag agreement is what the point tests assert."""
    if system not in SYSTEMS and system not in TOPOLOGIES:
        raise InvalidSpec("unknown system %r" % (system,))
    out = []
    for p in prime_ideals(A):
        residue_field, res = quotient_ring(A, p)
        out.append((p, res))
    return out


# ---------------------------------------------------------------------------
# lifting helpers shared by the self-lift deciders and the oracle suites

def hom_lifts_through_element(h, a):
    """h: A -> K factors through inverting a iff h(a) is a unit."""
    return h(a) in h.target.units()


def hom_lifts_through_ideal(h, I):
    """h: A -> K factors through A/I iff I dies under h."""
    return all(h(x) == h.target.zero for x in I.elements)


def element_has_retraction(A, a):
    """Whether A -> A[1/a] admits a retraction splitting it."""
    L, proj = localize(A, [a])
    if L.size != A.size:
        return False
    # proj is then bijective; its inverse is the retraction
    return proj.is_bijective()


def ideal_has_retraction(A, I):
    Q, proj = quotient_ring(A, I)
    return Q.size == A.size and proj.is_bijective()


def zar_self_lift_decider(A):
    """Decide 'A lifts through every zar cover of itself'.

    A cover lifts iff some member admits a retraction; the worst cover is
    the set of retraction-free elements, so a single ideal-membership test
    settles the universal claim.
    """
    sectionless = [a for a in A.elements() if not element_has_retraction(A, a)]
    worst = cover_check(A, sectionless, "zar")
    return not worst.covers


def dom_self_lift_decider(A, budget=None):
    from .finring import all_ideals
    sectionless = [I for I in all_ideals(A, budget=budget)
                   if not ideal_has_retraction(A, I)]
    worst = cover_check(A, sectionless, "dom")
    return not worst.covers


# ---------------------------------------------------------------------------
# axiom verification over an explicit universe

def ring_universe(rings, budget=None, name="rings"):
    """Hom-complete category on the given rings; arrows carry RingHom payloads.

    Names double as object keys, so they must be unique.  The ring list also
    needs to be closed under quotients up to isomorphism or the factorizer
    adapters will have nowhere to land their middles.
    """
    from .fincat import concrete_category
    names = [R.name for R in rings]
    if len(set(names)) != len(names):
        raise InvalidSpec("universe rings must carry distinct names")
    cat = concrete_category(
        rings, lambda R: R.name,
        lambda x, y: enumerate_homs(x, y, budget=budget),
        lambda g, f: f.then(g),
        identity_hom, name=name, budget=budget)
    cat.rings = {R.name: R for R in rings}
    return cat


def _iso_onto_universe(M, rings, seed, budget=None):
    """A bijective hom from M onto some universe ring, chosen by seed.

    seed 0 keeps the natural enumeration; other seeds shuffle candidate
    rings and rotate among the isos, which is how the middle-uniqueness
    axiom gets a genuinely different comparison run.
    """
    import random
    cands = [R for R in rings if R.size == M.size]
    if seed:
        random.Random(seed).shuffle(cands)
    for C in cands:
        isos = [h for h in enumerate_homs(M, C, budget=budget)
                if h.is_bijective()]
        if isos:
            return isos[seed % len(isos)], C
    raise InvalidSpec(
        "no universe ring isomorphic to %s of size %d; the universe must be "
        "closed under quotients up to isomorphism" % (M.name, M.size))


def system_factorizer(system, universe, seed=0, budget=None):
    """Adapt factorize() to the morphism-id protocol of verify_system."""
    from .finring import inverse_hom
    rings = list(universe.rings.values())
    index = {(m[0], m[1], h.fingerprint()): m
             for m, h in universe.payload.items()}

    def fac(mor_id):
        u = universe.payload[mor_id]
        F = factorize(u, system, budget=budget)
        iso, C = _iso_onto_universe(F.middle, rings, seed, budget=budget)
        left = F.left.then(iso)
        right = inverse_hom(iso).then(F.right)
        assert left.then(right).mapping == u.mapping
        return (index[(u.source.name, C.name, left.fingerprint())],
                C.name,
                index[(C.name, u.target.name, right.fingerprint())])

    return fac


def class_predicates(system, universe, budget=None):
    left_test, right_test = CLASS_TESTS[system]

    def in_left(m):
        return left_test(universe.payload[m], budget=budget)

    def in_right(m):
        return right_test(universe.payload[m], budget=budget)

    return in_left, in_right


def verify_ring_system(system, rings, alt_seed=1, budget=None):
    """Run the full axiom battery for one system over the given rings."""
    from .fincat import verify_system
    budget = ensure_budget(budget)
    universe = ring_universe(rings, budget=budget)
    fac = system_factorizer(system, universe, seed=0, budget=budget)
    fac_alt = system_factorizer(system, universe, seed=alt_seed, budget=budget)
    in_left, in_right = class_predicates(system, universe, budget=budget)
    return verify_system(fac, in_left, in_right, universe,
                         fac_alt=fac_alt, budget=budget)
