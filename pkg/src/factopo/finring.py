"""Finite commutative rings with explicit Cayley tables.

Rings are unital and commutative throughout; the one-element zero ring is a
legal value everywhere and is never special-cased into an error.  Elements
are integers 0..n-1 indexing the carrier, with printable names kept
alongside for certificates and exports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .budget import Budget, ensure_budget
from .errors import InvalidSpec, NotARing


class FinRing:
    def __init__(self, names, add, mul, zero, one, generators=(), name="",
                 check=True):
        self.names = tuple(str(s) for s in names)
        self.size = len(self.names)
        self.add = tuple(tuple(row) for row in add)
        self.mul = tuple(tuple(row) for row in mul)
        self.zero = zero
        self.one = one
        self.generators = tuple(generators)
        self.name = name or "ring%d" % self.size
        self._cache = {}
        if check:
            self.validate_axioms()
        self.neg = tuple(self._find_neg(a) for a in range(self.size))

    # -- table plumbing ----------------------------------------------------
    def elements(self):
        return range(self.size)

    def a(self, x, y):
        return self.add[x][y]

    def m(self, x, y):
        return self.mul[x][y]

    def sub(self, x, y):
        return self.add[x][self.neg[y]]

    def power(self, x, k):
        acc = self.one
        for _ in range(k):
            acc = self.mul[acc][x]
        return acc

    def _find_neg(self, x):
        for y in range(self.size):
            if self.add[x][y] == self.zero:
                return y
        raise NotARing("element %s has no additive inverse" % self.names[x])

    def is_zero_ring(self):
        return self.size == 1

    def validate_axioms(self):
        n = self.size
        if n == 0:
            raise NotARing("empty carrier")
        for table, label in ((self.add, "add"), (self.mul, "mul")):
            if len(table) != n or any(len(row) != n for row in table):
                raise NotARing("%s table is not %dx%d" % (label, n, n))
            for row in table:
                for v in row:
                    if not (0 <= v < n):
                        raise NotARing("%s table entry %r out of range" % (label, v))
        if not (0 <= self.zero < n) or not (0 <= self.one < n):
            raise NotARing("zero or one out of range")
        for x in range(n):
            if self.add[x][self.zero] != x:
                raise NotARing("zero is not additively neutral at %s" % self.names[x])
            if self.mul[x][self.one] != x:
                raise NotARing("one is not multiplicatively neutral at %s" % self.names[x])
            if not any(self.add[x][y] == self.zero for y in range(n)):
                raise NotARing("no additive inverse for %s" % self.names[x])
            for y in range(n):
                if self.add[x][y] != self.add[y][x]:
                    raise NotARing("addition not commutative at (%s, %s)"
                                   % (self.names[x], self.names[y]))
                if self.mul[x][y] != self.mul[y][x]:
                    raise NotARing("multiplication not commutative at (%s, %s)"
                                   % (self.names[x], self.names[y]))
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.add[self.add[x][y]][z] != self.add[x][self.add[y][z]]:
                        raise NotARing("addition not associative at (%s, %s, %s)"
                                       % (self.names[x], self.names[y], self.names[z]))
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]]:
                        raise NotARing("multiplication not associative at (%s, %s, %s)"
                                       % (self.names[x], self.names[y], self.names[z]))
                    if self.mul[x][self.add[y][z]] != self.add[self.mul[x][y]][self.mul[x][z]]:
                        raise NotARing("distributivity fails at (%s, %s, %s)"
                                       % (self.names[x], self.names[y], self.names[z]))
        for g in self.generators:
            if not (0 <= g < n):
                raise NotARing("generator %r out of range" % (g,))

    # -- derived element sets ----------------------------------------------
    def units(self):
        if "units" not in self._cache:
            self._cache["units"] = frozenset(
                x for x in self.elements()
                if any(self.mul[x][y] == self.one for y in self.elements()))
        return self._cache["units"]

    def nilpotents(self):
        if "nilpotents" not in self._cache:
            out = set()
            for x in self.elements():
                seen = set()
                p = x
                while p not in seen:
                    seen.add(p)
                    p = self.mul[p][x]
                if self.zero in seen:
                    out.add(x)
            self._cache["nilpotents"] = frozenset(out)
        return self._cache["nilpotents"]

    def idempotents(self):
        if "idempotents" not in self._cache:
            self._cache["idempotents"] = tuple(
                x for x in self.elements() if self.mul[x][x] == x)
        return self._cache["idempotents"]

    def generation_sequence(self):
        """How every element is built from {0, 1} and the generators.

        Returns [(element, op)] in construction order where op is one of
        ("zero",), ("one",), ("gen", g), ("neg", a), ("add", a, b),
        ("mul", a, b) with a, b earlier in the order.  InvalidSpec when the
        generators do not generate.
        """
        if "genseq" in self._cache:
            return self._cache["genseq"]
        known = {}
        order = []

        def learn(e, op):
            if e not in known:
                known[e] = op
                order.append(e)
                return True
            return False

        learn(self.zero, ("zero",))
        learn(self.one, ("one",))
        for g in self.generators:
            learn(g, ("gen", g))
        changed = True
        while changed:
            changed = False
            snapshot = list(order)
            for x in snapshot:
                if learn(self.neg[x], ("neg", x)):
                    changed = True
                for y in snapshot:
                    if learn(self.add[x][y], ("add", x, y)):
                        changed = True
                    if learn(self.mul[x][y], ("mul", x, y)):
                        changed = True
        if len(order) != self.size:
            raise InvalidSpec(
                "generators %r do not generate %s" % (list(self.generators), self.name))
        seq = tuple((e, known[e]) for e in order)
        self._cache["genseq"] = seq
        return seq

    def element_by_name(self, label):
        label = str(label)
        for i, nm in enumerate(self.names):
            if nm == label:
                return i
        raise InvalidSpec("no element named %r in %s" % (label, self.name))

    def __repr__(self):
        return "FinRing(%s, order %d)" % (self.name, self.size)


# ---------------------------------------------------------------------------
# constructors

def zmod(n):
    if n < 1:
        raise InvalidSpec("zmod modulus must be >= 1")
    names = [str(i) for i in range(n)]
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FinRing(names, add, mul, 0, 1 % n, (), name="Z/%d" % n)


def _poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_divmod(num, den, p):
    num = list(num)
    den = _poly_trim(tuple(den))
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(0, len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coeff = (num[shift + len(den) - 1] * inv_lead) % p
        quot[shift] = coeff
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - coeff * d) % p
    return tuple(quot), _poly_trim(tuple(num))


def _is_irreducible(poly, p):
    # poly is monic of degree k >= 1, little-endian including leading 1
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = tuple(tail) + (1,)
            _, rem = _poly_divmod(poly, den, p)
            if not rem:
                return False
    return True


def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over F_p,
    ordered by the coefficient tuple (a_{k-1}, ..., a_0)."""
    for high in itertools.product(range(p), repeat=k):
        poly = tuple(reversed(high)) + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise InvalidSpec("no irreducible polynomial found (p=%d, k=%d)" % (p, k))


def _poly_name(digits):
    terms = []
    for i in range(len(digits) - 1, -1, -1):
        c = digits[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("x" if c == 1 else "%dx" % c)
        else:
            terms.append("x^%d" % i if c == 1 else "%dx^%d" % (c, i))
    return "+".join(terms) if terms else "0"


def gf(p, k=1):
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InvalidSpec("gf characteristic must be prime, got %r" % (p,))
    if k < 1:
        raise InvalidSpec("gf degree must be >= 1")
    modpoly = least_irreducible(p, k)
    n = p ** k

    def digits(i):
        out = []
        for _ in range(k):
            out.append(i % p)
            i //= p
        return tuple(out)

    def undigits(ds):
        v = 0
        for c in reversed(ds):
            v = v * p + c
        return v

    def padd(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    def pmul(a, b):
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _poly_divmod(tuple(prod), modpoly, p)
        rem = rem + (0,) * (k - len(rem))
        return rem[:k]

    elems = [digits(i) for i in range(n)]
    add = [[undigits(padd(a, b)) for b in elems] for a in elems]
    mul = [[undigits(pmul(a, b)) for b in elems] for a in elems]
    names = [_poly_name(d) for d in elems]
    gens = (p,) if k > 1 else ()
    ring = FinRing(names, add, mul, 0, 1, gens, name="F_%d" % n)
    ring.modulus_poly = modpoly
    return ring


def product_ring(factors):
    if not factors:
        raise InvalidSpec("empty product")
    combos = list(itertools.product(*[range(f.size) for f in factors]))
    index = {c: i for i, c in enumerate(combos)}

    def zip_op(tables, a, b):
        return index[tuple(t[x][y] for t, x, y in zip(tables, a, b))]

    addt = [f.add for f in factors]
    mult = [f.mul for f in factors]
    add = [[zip_op(addt, a, b) for b in combos] for a in combos]
    mul = [[zip_op(mult, a, b) for b in combos] for a in combos]
    names = ["(%s)" % ",".join(f.names[c] for f, c in zip(factors, combo))
             for combo in combos]
    zero = index[tuple(f.zero for f in factors)]
    one = index[tuple(f.one for f in factors)]
    gens = []
    for i, f in enumerate(factors):
        unit_slot = tuple(g.one if j == i else g.zero for j, g in enumerate(factors))
        gens.append(index[unit_slot])
        for g in f.generators:
            slot = tuple(g if j == i else h.zero for j, h in enumerate(factors))
            gens.append(index[slot])
    gens = tuple(dict.fromkeys(gens))
    # factors are already valid rings, so the componentwise tables are too;
    # skipping the n^3 recheck keeps large products affordable
    ring = FinRing(names, add, mul, zero, one, gens,
                   name="x".join(f.name for f in factors), check=False)
    ring.combos = combos
    return ring


def tuple_hom(homs, P):
    """The pairing A -> P of homs with common source, P their product ring."""
    A = homs[0].source
    assert all(h.source is A for h in homs)
    idx = {c: i for i, c in enumerate(P.combos)}
    mapping = tuple(idx[tuple(h(a) for h in homs)] for a in range(A.size))
    return RingHom(A, P, mapping)


def table_ring(spec):
    try:
        names = [str(s) for s in spec["elements"]]
        addrows = spec["add"]
        mulrows = spec["mul"]
    except (KeyError, TypeError) as exc:
        raise InvalidSpec("table ring needs elements/add/mul: %s" % exc) from exc
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != len(names):
        raise InvalidSpec("duplicate element names")

    def resolve(v, where):
        if isinstance(v, str):
            if v not in index:
                raise InvalidSpec("unknown element %r in %s" % (v, where))
            return index[v]
        if isinstance(v, int) and 0 <= v < len(names):
            return v
        raise InvalidSpec("bad element reference %r in %s" % (v, where))

    add = [[resolve(v, "add") for v in row] for row in addrows]
    mul = [[resolve(v, "mul") for v in row] for row in mulrows]
    one = resolve(spec["one"], "one")
    if "zero" in spec:
        zero = resolve(spec["zero"], "zero")
    else:
        zeros = [z for z in range(len(names))
                 if all(add[z][x] == x for x in range(len(names)))]
        if len(zeros) != 1:
            raise NotARing("could not locate a unique additive zero")
        zero = zeros[0]
    gens = tuple(resolve(v, "generators") for v in spec.get("generators", []))
    ring = FinRing(names, add, mul, zero, one, gens,
                   name=str(spec.get("name", "table-ring")))
    ring.generation_sequence()
    return ring


def build_ring(spec):
    """Construct a ring from a plain dict: zmod, gf, product, quotient or table."""
    if not isinstance(spec, dict):
        raise InvalidSpec("ring spec must be a mapping")
    kind = spec.get("kind")
    try:
        if kind == "zmod":
            return zmod(int(spec["n"]))
        if kind == "gf":
            return gf(int(spec["p"]), int(spec.get("k", 1)))
        if kind == "product":
            return product_ring([build_ring(s) for s in spec["factors"]])
        if kind == "quotient":
            base = build_ring(spec["base"])
            gens = [base.element_by_name(g) if isinstance(g, str) else int(g)
                    for g in spec["ideal_gens"]]
            ring, _ = quotient_ring(base, ideal_generated(base, gens))
            return ring
        if kind == "table":
            return table_ring(spec)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec("%s ring spec is malformed: %s" % (kind, exc)) from exc
    raise InvalidSpec("unknown ring kind %r" % (kind,))


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class RingHom:
    source: FinRing
    target: FinRing
    mapping: tuple

    def __call__(self, x):
        return self.mapping[x]

    def validate(self):
        A, B, f = self.source, self.target, self.mapping
        if len(f) != A.size or any(not (0 <= v < B.size) for v in f):
            raise InvalidSpec("hom mapping has wrong shape")
        if f[A.one] != B.one:
            raise InvalidSpec("hom does not preserve 1")
        for x in A.elements():
            for y in A.elements():
                if f[A.add[x][y]] != B.add[f[x]][f[y]]:
                    raise InvalidSpec("hom breaks addition at (%s, %s)"
                                      % (A.names[x], A.names[y]))
                if f[A.mul[x][y]] != B.mul[f[x]][f[y]]:
                    raise InvalidSpec("hom breaks multiplication at (%s, %s)"
                                      % (A.names[x], A.names[y]))
        return self

    def kernel_elements(self):
        return frozenset(x for x in self.source.elements()
                         if self.mapping[x] == self.target.zero)

    def image(self):
        return frozenset(self.mapping)

    def is_injective(self):
        return len(set(self.mapping)) == self.source.size

    def is_surjective(self):
        return len(set(self.mapping)) == self.target.size

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def is_identity(self):
        return (self.source is self.target
                and all(self.mapping[i] == i for i in range(len(self.mapping))))

    def then(self, other):
        """other after self."""
        if other.source is not self.target:
            raise InvalidSpec("homs are not composable")
        return RingHom(self.source, other.target,
                       tuple(other.mapping[v] for v in self.mapping))

    def fingerprint(self):
        return self.mapping

    def __repr__(self):
        return "RingHom(%s -> %s)" % (self.source.name, self.target.name)


def identity_hom(A):
    return RingHom(A, A, tuple(range(A.size)))


def compose_homs(g, f):
    return f.then(g)


def inverse_hom(h):
    assert h.is_bijective()
    inv = [0] * h.target.size
    for a, b in enumerate(h.mapping):
        inv[b] = a
    return RingHom(h.target, h.source, tuple(inv))


def hom_from_images(A, B, images):
    """Extend generator images to a hom, or return None if no hom does that.

    ``images`` maps each generator of A to an element of B; the extension is
    forced by the generation sequence and then fully verified.
    """
    mapping = [None] * A.size
    for e, op in A.generation_sequence():
        tag = op[0]
        if tag == "zero":
            mapping[e] = B.zero
        elif tag == "one":
            mapping[e] = B.one
        elif tag == "gen":
            v = images[op[1]]
            if mapping[e] is not None and mapping[e] != v:
                return None
            mapping[e] = v
        elif tag == "neg":
            mapping[e] = B.neg[mapping[op[1]]]
        elif tag == "add":
            mapping[e] = B.add[mapping[op[1]]][mapping[op[2]]]
        else:
            mapping[e] = B.mul[mapping[op[1]]][mapping[op[2]]]
    f = tuple(mapping)
    for x in A.elements():
        for y in A.elements():
            if f[A.add[x][y]] != B.add[f[x]][f[y]]:
                return None
            if f[A.mul[x][y]] != B.mul[f[x]][f[y]]:
                return None
    if f[A.one] != B.one:
        return None
    return RingHom(A, B, f)


def enumerate_homs(A, B, budget=None):
    """All unital homs A -> B, sorted by mapping tuple."""
    budget = ensure_budget(budget)
    gens = list(dict.fromkeys(A.generators))
    out = []
    for choice in itertools.product(range(B.size), repeat=len(gens)):
        budget.spend(A.size * A.size)
        hom = hom_from_images(A, B, dict(zip(gens, choice)))
        if hom is not None:
            out.append(hom)
    uniq = {h.mapping: h for h in out}
    return [uniq[m] for m in sorted(uniq)]


def ring_isomorphic(A, B, budget=None):
    """A bijective hom A -> B, or None."""
    if A.size != B.size:
        return None
    for h in enumerate_homs(A, B, budget=budget):
        if h.is_bijective():
            return h
    return None


def permuted_ring(A, perm, name=None):
    """Relabel the carrier along a permutation; returns (ring, iso A -> ring)."""
    n = A.size
    if sorted(perm) != list(range(n)):
        raise InvalidSpec("not a permutation of the carrier")
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    names = [A.names[inv[i]] for i in range(n)]
    add = [[perm[A.add[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    mul = [[perm[A.mul[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    ring = FinRing(names, add, mul, perm[A.zero], perm[A.one],
                   tuple(perm[g] for g in A.generators),
                   name=name or A.name + "~", check=False)
    iso = RingHom(A, ring, tuple(perm))
    return ring, iso


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class Ideal:
    ring: FinRing
    elements: frozenset

    def validate(self):
        A, I = self.ring, self.elements
        if A.zero not in I:
            raise InvalidSpec("ideal misses 0")
        for x in I:
            for y in I:
                if A.add[x][y] not in I:
                    raise InvalidSpec("ideal not closed under addition")
            for r in A.elements():
                if A.mul[r][x] not in I:
                    raise InvalidSpec("ideal not absorbing")
        return self

    def contains(self, x):
        return x in self.elements

    def is_proper(self):
        return self.ring.one not in self.elements

    def is_zero(self):
        return self.elements == frozenset([self.ring.zero])

    def sorted_elements(self):
        return sorted(self.elements)

    def label(self):
        return "{%s}" % ",".join(self.ring.names[x] for x in self.sorted_elements())

    def __le__(self, other):
        return self.elements <= other.elements

    def __repr__(self):
        return "Ideal(%s, %s)" % (self.ring.name, self.label())


def ideal_generated(A, gens):
    """Smallest ideal containing gens: additive closure of all multiples."""
    seed = {A.zero}
    for g in gens:
        for r in A.elements():
            seed.add(A.mul[r][g])
    out = set(seed)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for y in seed:
                s = A.add[x][y]
                if s not in out:
                    out.add(s)
                    nxt.append(s)
        frontier = nxt
    return Ideal(A, frozenset(out)).validate()


def additive_subgroups(A, budget=None):
    """All subgroups of the additive group, by closure-and-extend search."""
    budget = ensure_budget(budget)

    def closure(seed):
        out = {A.zero}
        frontier = list(seed)
        for x in frontier:
            out.add(x)
        frontier = list(out)
        while frontier:
            nxt = []
            for x in frontier:
                budget.spend()
                y = A.neg[x]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
                for z in list(out):
                    s = A.add[x][z]
                    if s not in out:
                        out.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(out)

    base = closure(())
    found = {base}
    frontier = [base]
    while frontier:
        S = frontier.pop()
        for a in A.elements():
            if a in S:
                continue
            budget.spend()
            T = closure(S | {a})
            if T not in found:
                found.add(T)
                frontier.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def all_ideals(A, budget=None):
    """Every ideal, by filtering the additive subgroups for absorption."""
    out = []
    for S in additive_subgroups(A, budget=budget):
        if all(A.mul[r][x] in S for x in S for r in A.elements()):
            out.append(Ideal(A, S))
    return out


def radical(I):
    A = I.ring
    out = set()
    for x in A.elements():
        p = x
        seen = set()
        while p not in seen:
            seen.add(p)
            if p in I.elements:
                out.add(x)
                break
            p = A.mul[p][x]
    return Ideal(A, frozenset(out)).validate()


def nilradical(A):
    return radical(Ideal(A, frozenset([A.zero])))


def is_prime_ideal(I):
    A = I.ring
    if not I.is_proper():
        return False
    for x in A.elements():
        if x in I.elements:
            continue
        for y in A.elements():
            if y in I.elements:
                continue
            if A.mul[x][y] in I.elements:
                return False
    return True


def quotient_ring(A, I):
    """Quotient by an ideal; returns (ring, projection hom).

    The zero ideal returns (A, identity) so factorizations of injective maps
    stay literal.  Cosets are named after their least representative.
    """
    I.validate()
    if I.is_zero():
        return A, identity_hom(A)
    coset_of = [None] * A.size
    reps = []
    for x in A.elements():
        if coset_of[x] is not None:
            continue
        members = sorted(A.add[x][i] for i in I.elements)
        rep = members[0]
        idx = len(reps)
        reps.append(rep)
        for m in members:
            coset_of[m] = idx
    n = len(reps)
    add = [[coset_of[A.add[reps[i]][reps[j]]] for j in range(n)] for i in range(n)]
    mul = [[coset_of[A.mul[reps[i]][reps[j]]] for j in range(n)] for i in range(n)]
    names = [A.names[r] for r in reps]
    gens = tuple(dict.fromkeys(coset_of[g] for g in A.generators))
    Q = FinRing(names, add, mul, coset_of[A.zero], coset_of[A.one], gens,
                name="%s/%s" % (A.name, I.label()))
    return Q, RingHom(A, Q, tuple(coset_of))


def units_and_nilpotents(A):
    units = A.units()
    nil = A.nilpotents()
    assert nil == nilradical(A).elements
    return units, nil


def primitive_idempotents(A):
    """The complete orthogonal set of primitive idempotents; [] for the zero ring."""
    nonzero = [e for e in A.idempotents() if e != A.zero]
    prims = []
    for e in nonzero:
        if not any(f != e and A.mul[f][e] == f for f in nonzero):
            prims.append(e)
    if A.is_zero_ring():
        assert prims == []
        return []
    for e in prims:
        for f in prims:
            if e != f:
                assert A.mul[e][f] == A.zero
    total = A.zero
    for e in prims:
        total = A.add[total][e]
    assert total == A.one
    return sorted(prims)


def prime_ideals(A):
    """Primes via primitive idempotents: one per local factor, each verified."""
    primes = []
    for e in primitive_idempotents(A):
        co = A.sub(A.one, e)
        comp = ideal_generated(A, [co]).elements
        factor = sorted({A.mul[e][x] for x in A.elements()})
        unit_in_factor = {x for x in factor
                          if any(A.mul[x][y] == e for y in factor)}
        nonunits = [x for x in factor if x not in unit_in_factor]
        elems = {A.add[c][x] for c in comp for x in nonunits}
        p = Ideal(A, frozenset(elems)).validate()
        assert is_prime_ideal(p), "constructed ideal is not prime"
        primes.append(p)
    uniq = {p.elements: p for p in primes}
    return sorted(uniq.values(), key=lambda p: p.sorted_elements())


def prime_ideals_bruteforce(A, budget=None):
    """Oracle: scan every ideal and keep the ones with domain quotient."""
    return [I for I in all_ideals(A, budget=budget) if is_prime_ideal(I)]


def multiplicative_closure(A, S):
    out = {A.one}
    frontier = [A.one]
    for s in S:
        if s not in out:
            out.add(s)
            frontier.append(s)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            p = A.mul[x][y]
            if p not in out:
                out.add(p)
                frontier.append(p)
    return frozenset(out)


def annihilator_kernel(A, S):
    """Elements killed by some member of the multiplicative closure of S."""
    Sbar = multiplicative_closure(A, S)
    elems = {a for a in A.elements()
             if any(A.mul[s][a] == A.zero for s in Sbar)}
    return Ideal(A, frozenset(elems)).validate()


def localize(A, S):
    """Invert S: returns (ring, canonical hom), the quotient by the
    annihilator kernel.  Localizing at a nilpotent yields the zero ring."""
    I = annihilator_kernel(A, S)
    L, proj = quotient_ring(A, I)
    for s in S:
        assert proj(s) in L.units(), "localization failed to invert %s" % A.names[s]
    return L, proj


def localization_at_element(A, a):
    return localize(A, [a])


def factors_through_surjection(h, q):
    """For surjective q: A -> Q and h: A -> B, the induced Q -> B if it
    exists (iff ker q <= ker h), else None."""
    if h.source is not q.source:
        raise InvalidSpec("homs must share their source")
    Q, B = q.target, h.target
    mapping = [None] * Q.size
    for x in h.source.elements():
        qx = q(x)
        if mapping[qx] is None:
            mapping[qx] = h(x)
        elif mapping[qx] != h(x):
            return None
    assert all(v is not None for v in mapping)
    return RingHom(Q, B, tuple(mapping))


def field_catalogue(bound=16):
    """All finite fields of order <= bound, smallest first."""
    out = []
    for q in range(2, bound + 1):
        p = smallest_prime_factor(q)
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1:
            out.append(gf(p, k))
    return out


def smallest_prime_factor(n):
    for d in range(2, n + 1):
        if n % d == 0:
            return d
    raise InvalidSpec("no prime factor of %r" % (n,))
