"""Truncated simplicial sets with the collapse/nondegenerate system.

Every simplex is stored as its Eilenberg-Zilber pair: a monotone surjection
applied to a nondegenerate cell.  Face and degeneracy actions are computed
from that representation plus the stored faces of nondegenerate cells, so
the decomposition is canonical by construction and the interesting
uniqueness checks happen where they are genuine: in the quotients built by
the factorization algorithm.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .budget import ensure_budget
from .errors import (IdentityViolation, InvalidFamily, InvalidSpec,
                     NotSimplicial, TruncationTooLow)
from .posets import Poset, poset_to_dot
from .ringsys import CoverResult


# ---------------------------------------------------------------------------
# monotone operators between finite ordinals

def monotone_ops(k, n):
    """Value tuples of all monotone maps [k] -> [n]."""
    return [tuple(v) for v in
            itertools.combinations_with_replacement(range(n + 1), k + 1)]


def surjective_ops(k, n):
    return [v for v in monotone_ops(k, n) if len(set(v)) == n + 1]


def injective_ops(k, n):
    return [tuple(v) for v in itertools.combinations(range(n + 1), k + 1)]


def identity_op(n):
    return tuple(range(n + 1))


def is_identity_op(values):
    return values == tuple(range(len(values)))


def compose_ops(outer, inner):
    """outer . inner as value tuples; inner feeds positions of outer."""
    return tuple(outer[v] for v in inner)


def epi_mono_split(values):
    """(delta, tau) injective after surjective with delta . tau = values."""
    image = sorted(set(values))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(image), tuple(pos[v] for v in values)


def coface(n, i):
    """The injection [n-1] -> [n] missing i."""
    return tuple(j for j in range(n + 1) if j != i)


def codegeneracy(n, j):
    """The surjection [n+1] -> [n] repeating j."""
    return tuple(x if x <= j else x - 1 for x in range(n + 2))


@dataclass(frozen=True)
class SimplicialOperator:
    """A monotone map into [target], given by its value tuple."""
    target: int
    values: tuple

    def validate(self):
        if any(v < 0 or v > self.target for v in self.values):
            raise InvalidSpec("operator values leave the target range")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise InvalidSpec("operator is not monotone")
        return self

    @property
    def source(self):
        return len(self.values) - 1

    def decompose(self):
        """The unique injective-after-surjective split."""
        delta, tau = epi_mono_split(self.values)
        inj = SimplicialOperator(self.target, delta)
        surj = SimplicialOperator(inj.source, tau)
        assert compose_ops(inj.values, surj.values) == self.values
        return inj, surj


# ---------------------------------------------------------------------------
# the simplicial sets themselves

@dataclass(frozen=True)
class EZDecomposition:
    surjection: tuple
    nondeg: tuple          # (dim, index) of the nondegenerate cell

    def verify(self, X, x):
        assert X.apply_surjection(self.nondeg, self.surjection) == x
        return self


class FinSSet:
    """A truncated simplicial set presented by nondegenerate cells.

    ``labels[n]`` names the nondegenerate n-cells; ``faces[(n, j, i)]`` is
    the i-th face of cell j in dimension n, itself a simplex: a pair
    (surjection values, (m, cell index)).  The truncation dimension must
    leave one dimension of headroom above the top cell so that degeneracies
    of top cells exist.
    """

    def __init__(self, dim, labels, faces, name="sset", check=True):
        self.dim = dim
        self.labels = {n: list(v) for n, v in sorted(labels.items()) if v}
        self.faces_tbl = dict(faces)
        self.name = name
        if dim < 0:
            raise InvalidSpec("negative truncation")
        top = max(self.labels, default=-1)
        if top >= 0 and dim < top + 1:
            raise TruncationTooLow(
                "truncation %d cannot hold degeneracies of %d-cells"
                % (dim, top))
        if check:
            self.validate()

    @property
    def top_dim(self):
        return max(self.labels, default=-1)

    def cells(self):
        """(dim, index) for every nondegenerate cell, dimension order."""
        return [(n, j) for n in sorted(self.labels)
                for j in range(len(self.labels[n]))]

    def cell_label(self, ref):
        return self.labels[ref[0]][ref[1]]

    def cell_simplex(self, ref):
        return (identity_op(ref[0]), ref)

    def simplices(self, n):
        """Every n-simplex, nondegenerate or not, in a fixed order."""
        out = []
        for m in sorted(self.labels):
            if m > n:
                break
            for sigma in surjective_ops(n, m):
                for j in range(len(self.labels[m])):
                    out.append((sigma, (m, j)))
        return out

    def simplex_count(self, n):
        return len(self.simplices(n))

    def is_nondeg_simplex(self, x):
        return is_identity_op(x[0])

    # -- the simplicial action --------------------------------------------

    def act(self, x, alpha):
        """X(alpha) applied to x, for monotone alpha into [dim of x]."""
        sigma, ref = x
        beta = compose_ops(sigma, alpha)
        delta, tau = epi_mono_split(beta)
        rho, w = self._inj_act(ref, delta)
        return (compose_ops(rho, tau), w)

    def _inj_act(self, ref, delta):
        m, j = ref
        if is_identity_op(delta) and len(delta) == m + 1:
            return (identity_op(m), ref)
        missing = max(i for i in range(m + 1) if i not in delta)
        face = self.faces_tbl[(m, j, missing)]
        delta2 = tuple(v if v < missing else v - 1 for v in delta)
        return self.act(face, delta2)

    def face(self, x, i):
        n = len(x[0]) - 1
        return self.act(x, coface(n, i))

    def degeneracy(self, x, j):
        n = len(x[0]) - 1
        if n + 1 > self.dim:
            raise TruncationTooLow(
                "degeneracy would leave the truncation range")
        return self.act(x, codegeneracy(n, j))

    def apply_surjection(self, ref, sigma):
        """sigma*(cell) computed through single degeneracy steps."""
        if is_identity_op(sigma):
            return self.cell_simplex(ref)
        dup = min(i for i in range(len(sigma) - 1) if sigma[i] == sigma[i + 1])
        shorter = sigma[:dup] + sigma[dup + 1:]
        return self.degeneracy(self.apply_surjection(ref, shorter), dup)

    # -- validation ---------------------------------------------------------

    def validate(self):
        for n, names in self.labels.items():
            if len(set(names)) != len(names):
                raise InvalidSpec("duplicate cell labels in dimension %d" % n)
            for j in range(len(names)):
                if n == 0:
                    continue
                for i in range(n + 1):
                    fx = self.faces_tbl.get((n, j, i))
                    if fx is None:
                        raise InvalidSpec(
                            "missing face %d of %s" % (i, names[j]))
                    self._check_simplex(fx, n - 1)
        for n in range(self.dim + 1):
            for x in self.simplices(n):
                for alpha in self._elementary_ops(n):
                    mid = self.act(x, alpha)
                    k = len(alpha) - 1
                    for beta in self._elementary_ops(k):
                        lhs = self.act(mid, beta)
                        rhs = self.act(x, compose_ops(alpha, beta))
                        if lhs != rhs:
                            raise IdentityViolation(
                                "action not functorial at %r via %r then %r"
                                % (x, alpha, beta))
        return self

    def _elementary_ops(self, n):
        ops = []
        if n >= 1:
            ops.extend(coface(n, i) for i in range(n + 1))
        if n + 1 <= self.dim:
            ops.extend(codegeneracy(n, j) for j in range(n + 1))
        return ops

    def _check_simplex(self, x, n):
        sigma, (m, j) = x
        if len(sigma) != n + 1 or m not in self.labels or \
                not 0 <= j < len(self.labels[m]):
            raise InvalidSpec("malformed simplex %r in dimension %d" % (x, n))
        if sorted(set(sigma)) != list(range(m + 1)):
            raise InvalidSpec("simplex operator %r is not onto [%d]" % (sigma, m))
        if any(a > b for a, b in zip(sigma, sigma[1:])):
            raise InvalidSpec("simplex operator %r is not monotone" % (sigma,))

    # -- decomposition -------------------------------------------------------

    def eilenberg_zilber(self, x, audit=False):
        """The unique (surjection, nondegenerate cell) presentation of x.

        With audit on, every candidate pair is pushed through the
        degeneracy tables and exactly one must land on x.
        """
        sigma, ref = x
        dec = EZDecomposition(sigma, ref)
        if audit:
            n = len(sigma) - 1
            hits = []
            for m in sorted(self.labels):
                if m > n:
                    break
                for s2 in surjective_ops(n, m):
                    for j2 in range(len(self.labels[m])):
                        if self.apply_surjection((m, j2), s2) == x:
                            hits.append((s2, (m, j2)))
            assert hits == [(sigma, ref)], \
                "EZ pair not unique for %r: %r" % (x, hits)
        return dec

    def __repr__(self):
        sizes = ",".join("%d:%d" % (n, len(v)) for n, v in self.labels.items())
        return "FinSSet(%s dim=%d cells{%s})" % (self.name, self.dim, sizes)


# ---------------------------------------------------------------------------
# builders

def subcomplex_of_delta(n, subsets, dim=None, name=None):
    """The union of the faces of Δ[n] spanned by the given vertex subsets.

    ``subsets`` lists nonempty subsets of {0..n}; the family is closed
    downward automatically.  Cells are labeled by their vertex strings.
    """
    closed = set()
    for S in subsets:
        S = tuple(sorted(set(S)))
        if not S:
            raise InvalidSpec("empty vertex subset")
        for r in range(1, len(S) + 1):
            closed.update(itertools.combinations(S, r))
    by_dim = {}
    for S in sorted(closed, key=lambda S: (len(S), S)):
        by_dim.setdefault(len(S) - 1, []).append(S)
    labels = {k: ["".join(map(str, S)) for S in v] for k, v in by_dim.items()}
    index = {S: (len(S) - 1, i)
             for k, v in by_dim.items() for i, S in enumerate(v)}
    faces = {}
    for k, v in by_dim.items():
        if k == 0:
            continue
        for j, S in enumerate(v):
            for i in range(k + 1):
                smaller = S[:i] + S[i + 1:]
                faces[(k, j, i)] = (identity_op(k - 1), index[smaller])
    top = max(by_dim, default=0)
    if dim is None:
        dim = top + 1
    return FinSSet(dim, labels, faces, name=name or "sub-of-delta%d" % n)


def delta(n, dim=None, name=None):
    """The standard n-simplex, truncated with one dimension of headroom."""
    return subcomplex_of_delta(
        n, [tuple(range(n + 1))], dim=dim, name=name or "delta%d" % n)


def boundary(n, dim=None):
    """All proper faces of Δ[n]."""
    subs = list(itertools.combinations(range(n + 1), n))
    return subcomplex_of_delta(n, subs, dim=dim, name="boundary%d" % n)


def horn(n, k, dim=None):
    """Δ[n] minus the interior and the face opposite vertex k."""
    subs = [S for S in itertools.combinations(range(n + 1), n)
            if k in S]
    return subcomplex_of_delta(n, subs, dim=dim, name="horn%d_%d" % (n, k))


def disjoint_union(X, Y, dim=None, name=None):
    if dim is None:
        dim = max(X.dim, Y.dim)
    labels = {}
    faces = {}
    offset = {}
    for tag, Z in (("a", X), ("b", Y)):
        for nn in sorted(Z.labels):
            offset[(tag, nn)] = len(labels.get(nn, []))
            labels.setdefault(nn, []).extend(
                "%s.%s" % (tag, s) for s in Z.labels[nn])
    for tag, Z in (("a", X), ("b", Y)):
        for (nn, j, i), (sg, (m, jj)) in Z.faces_tbl.items():
            faces[(nn, j + offset[(tag, nn)], i)] = \
                (sg, (m, jj + offset[(tag, m)]))
    return FinSSet(dim, labels, faces,
                   name=name or "%s+%s" % (X.name, Y.name))


def build_sset(spec):
    """Construct from the file shape: truncation plus nondegenerate cells.

    {"dim": d, "nondegenerate": {"0": ["v"], "1": [{"name": "e",
    "faces": [[[0], "v"], [[0], "v"]]}], ...}} where each face is an
    operator value list and the label of a nondegenerate cell.  The stock
    shapes are also available as {"kind": "delta"|"boundary"|"horn", ...}.
    """
    if isinstance(spec, dict) and "kind" in spec:
        kind = spec["kind"]
        n = int(spec.get("n", 0))
        dim = int(spec["dim"]) if "dim" in spec else None
        if kind == "delta":
            return delta(n, dim=dim)
        if kind == "boundary":
            return boundary(n, dim=dim)
        if kind == "horn":
            return horn(n, int(spec["k"]), dim=dim)
        raise InvalidSpec("unknown sset kind %r" % (kind,))
    try:
        dim = int(spec["dim"])
        raw = spec["nondegenerate"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec("sset needs dim and nondegenerate: %s" % exc) from exc
    labels = {}
    for key in sorted(raw, key=int):
        n = int(key)
        entries = raw[key]
        row = []
        for ent in entries:
            row.append(ent if isinstance(ent, str) else str(ent["name"]))
        if row:
            labels[n] = row
    lookup = {}
    for n, row in labels.items():
        for j, s in enumerate(row):
            if (n, s) in lookup:
                raise InvalidSpec("duplicate cell %r in dimension %d" % (s, n))
            lookup[(n, s)] = j
    faces = {}
    for key in sorted(raw, key=int):
        n = int(key)
        if n == 0:
            continue
        for j, ent in enumerate(raw[key]):
            if isinstance(ent, str):
                raise InvalidSpec(
                    "cell %r above dimension 0 needs explicit faces" % ent)
            fl = ent.get("faces", [])
            if len(fl) != n + 1:
                raise InvalidSpec(
                    "cell %r needs %d faces, got %d"
                    % (ent.get("name"), n + 1, len(fl)))
            for i, (opvals, target) in enumerate(fl):
                opvals = tuple(int(v) for v in opvals)
                if len(opvals) != n:
                    raise InvalidSpec(
                        "face %d of %r has an operator of the wrong length"
                        % (i, ent.get("name")))
                m = max(opvals) if opvals else 0
                if (m, str(target)) not in lookup:
                    raise InvalidSpec(
                        "face target %r missing in dimension %d" % (target, m))
                faces[(n, j, i)] = (opvals, (m, lookup[(m, str(target))]))
    return FinSSet(dim, labels, faces, name=str(spec.get("name", "sset")))


# ---------------------------------------------------------------------------
# maps

class SimplicialMap:
    """A map given on nondegenerate cells and extended along degeneracies."""

    def __init__(self, source, target, assignment, name="", check=True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.name = name
        if check:
            self.validate()

    def apply(self, x):
        sigma, ref = x
        rho, w = self.assignment[ref]
        return (compose_ops(rho, sigma), w)

    def validate(self):
        for ref in self.source.cells():
            n = ref[0]
            img = self.assignment.get(ref)
            if img is None:
                raise NotSimplicial("no image for cell %r" % (ref,))
            self.target._check_simplex(img, n)
            if n == 0:
                continue
            for i in range(n + 1):
                lhs = self.apply(self.source.face(self.source.cell_simplex(ref), i))
                rhs = self.target.face(img, i)
                if lhs != rhs:
                    raise NotSimplicial(
                        "face %d of cell %r does not commute" % (i, ref))
        return self

    def is_identity(self):
        return self.source is self.target and all(
            self.assignment[ref] == self.source.cell_simplex(ref)
            for ref in self.source.cells())

    def then(self, other):
        assert other.source is self.target
        ass = {ref: other.apply(self.assignment[ref])
               for ref in self.source.cells()}
        return SimplicialMap(self.source, other.target, ass, check=False)

    def image_simplices(self, n):
        return {self.apply(x) for x in self.source.simplices(n)}

    def __repr__(self):
        return "SimplicialMap(%s -> %s)" % (self.source.name, self.target.name)


def identity_smap(X):
    return SimplicialMap(
        X, X, {ref: X.cell_simplex(ref) for ref in X.cells()}, check=False)


def is_nondegenerate_map(f):
    """Membership in the right class: nondegenerate cells stay nondegenerate."""
    f.validate()
    return all(f.target.is_nondeg_simplex(f.assignment[ref])
               for ref in f.source.cells())


def classifying_map(X, x):
    """The map out of a standard simplex that picks out x."""
    sigma, ref = x
    n = len(sigma) - 1
    D = delta(n, dim=X.dim)
    ass = {}
    for (k, j) in D.cells():
        vals = tuple(int(c) for c in D.labels[k][j])
        ass[(k, j)] = X.act(x, vals)
    return SimplicialMap(D, X, ass, name="classify-%s" % str(x))


def all_simplicial_maps(Y, X, budget=None):
    """Every simplicial map Y -> X, by face-constrained backtracking."""
    budget = ensure_budget(budget)
    cells = Y.cells()
    out = []
    assignment = {}

    def extend(k):
        if k == len(cells):
            out.append(SimplicialMap(Y, X, dict(assignment), check=False))
            return
        ref = cells[k]
        n = ref[0]
        for cand in X.simplices(n):
            budget.spend()
            ok = True
            if n > 0:
                ys = Y.cell_simplex(ref)
                for i in range(n + 1):
                    fy = Y.face(ys, i)
                    if fy[1] in assignment:
                        rho, w = assignment[fy[1]]
                        if (compose_ops(rho, fy[0]), w) != X.face(cand, i):
                            ok = False
                            break
                    else:
                        ok = False
                        break
            if ok:
                assignment[ref] = cand
                extend(k + 1)
                del assignment[ref]

    extend(0)
    return out


def sset_isomorphic(X, Y, budget=None):
    """A dimension-wise bijection on cells preserving faces, or None."""
    budget = ensure_budget(budget)
    if sorted(X.labels) != sorted(Y.labels):
        return None
    for n in X.labels:
        if len(X.labels[n]) != len(Y.labels[n]):
            return None
    cells = X.cells()
    assignment = {}
    used = set()

    def extend(k):
        if k == len(cells):
            return True
        ref = cells[k]
        n = ref[0]
        for j in range(len(Y.labels[n])):
            if (n, j) in used:
                continue
            budget.spend()
            ok = True
            if n > 0:
                for i in range(n + 1):
                    fx = X.face(X.cell_simplex(ref), i)
                    rho, w = fx
                    if w not in assignment:
                        ok = False
                        break
                    mapped = (rho, assignment[w])
                    if Y.face(Y.cell_simplex((n, j)), i) != \
                            (mapped[0], mapped[1]):
                        ok = False
                        break
            if ok:
                assignment[ref] = (n, j)
                used.add((n, j))
                if extend(k + 1):
                    return True
                del assignment[ref]
                used.discard((n, j))
        return False

    if not extend(0):
        return None
    ass = {ref: Y.cell_simplex(assignment[ref]) for ref in cells}
    return SimplicialMap(X, Y, ass, check=True)


# ---------------------------------------------------------------------------
# the collapse factorization

@dataclass
class SSetFactorization:
    left: SimplicialMap
    middle: FinSSet
    right: SimplicialMap

    def composite(self):
        return self.left.then(self.right)


def deg_ndeg_factorize(f, rng=None, budget=None):
    """Collapse the source until the remaining map keeps cells nondegenerate.

    Each round picks a cell whose image is degenerate, reads off the
    degeneracy operator, and glues the cell along it; the glueing is a
    quotient (the collapse operator is surjective, so no new simplices
    appear) and strictly reduces the nondegenerate cell count, which is the
    termination argument.  ``rng`` varies the processing order; the middle
    must come out the same up to isomorphism either way.
    """
    budget = ensure_budget(budget)
    f.validate()
    M = f.source
    left = identity_smap(M)
    g = f
    while True:
        bad = [ref for ref in M.cells()
               if not g.target.is_nondeg_simplex(g.assignment[ref])]
        if not bad:
            break
        ref = bad[rng.randrange(len(bad))] if rng is not None else bad[0]
        sigma, _w = g.assignment[ref]
        n = ref[0]
        pairs = []
        for k in range(M.dim + 1):
            groups = {}
            for alpha in monotone_ops(k, n):
                groups.setdefault(compose_ops(sigma, alpha), []).append(alpha)
            y = M.cell_simplex(ref)
            for alphas in groups.values():
                first = M.act(y, alphas[0])
                for alpha in alphas[1:]:
                    pairs.append((first, M.act(y, alpha)))
        M2, proj = _quotient(M, pairs, budget=budget)
        g2ass = {}
        for ref2 in M2.cells():
            carriers = [r for r in M.cells()
                        if proj.apply(M.cell_simplex(r)) == M2.cell_simplex(ref2)]
            images = {g.apply(M.cell_simplex(r)) for r in carriers}
            assert len(images) == 1, "collapse identified cells with distinct images"
            g2ass[ref2] = images.pop()
        g = SimplicialMap(M2, f.target, g2ass, check=True)
        left = left.then(proj)
        M = M2
    assert is_nondegenerate_map(g)
    assert left.then(g).assignment == f.assignment
    return SSetFactorization(left, M, g)


def _quotient(M, pairs, budget=None):
    """Quotient by the simplicial congruence generated by the pairs.

    The generating set is closed under the simplicial action (callers
    arrange that), so a union-find over raw simplices is the whole
    computation; what remains is re-expressing every class as a surjection
    applied to a nondegenerate class, which is where EZ uniqueness gets
    checked for real.
    """
    budget = ensure_budget(budget)
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for a, b in pairs:
        union(a, b)

    # the congruence must commute with every elementary operator
    for n in range(M.dim + 1):
        for x in M.simplices(n):
            budget.spend()
            for alpha in M._elementary_ops(n):
                assert find(M.act(x, alpha)) == find(M.act(find(x), alpha)), \
                    "congruence not stable under the simplicial action"

    classes = {n: sorted({find(x) for x in M.simplices(n)})
               for n in range(M.dim + 1)}

    # degeneracy images of classes decide which classes stay nondegenerate
    deg_hits = {n: set() for n in range(M.dim + 1)}
    for n in range(M.dim):
        for c in classes[n]:
            for j in range(n + 1):
                deg_hits[n + 1].add(find(M.degeneracy(c, j)))

    labels = {}
    ref_of_class = {}
    for n in range(M.dim + 1):
        nd = [c for c in classes[n] if c not in deg_hits[n]]
        row = []
        for c in nd:
            members = [x for x in M.simplices(n) if find(x) == c]
            named = sorted(M.cell_label(x[1]) for x in members
                           if M.is_nondeg_simplex(x))
            assert named, "nondegenerate class with no nondegenerate member"
            ref_of_class[c] = (n, len(row))
            row.append(named[0])
        if row:
            labels[n] = row

    # express every class as surjection . nondegenerate-class, uniquely
    simplex_of_class = {}
    for n in range(M.dim + 1):
        for c in classes[n]:
            if c in ref_of_class:
                simplex_of_class[c] = (identity_op(n), ref_of_class[c])
    for n in range(1, M.dim + 1):
        for c in classes[n]:
            if c in ref_of_class:
                continue
            results = set()
            for j in range(n):
                for c2 in classes[n - 1]:
                    if find(M.degeneracy(c2, j)) == c:
                        rho, w = simplex_of_class[c2]
                        results.add((compose_ops(rho, codegeneracy(n - 1, j)), w))
            assert len(results) == 1, \
                "EZ presentation of a collapsed class is not unique: %r" % (results,)
            simplex_of_class[c] = results.pop()

    faces = {}
    for n, row in labels.items():
        if n == 0:
            continue
        for jj in range(len(row)):
            c = next(k for k, v in ref_of_class.items() if v == (n, jj))
            for i in range(n + 1):
                faces[(n, jj, i)] = simplex_of_class[find(M.face(c, i))]
    M2 = FinSSet(M.dim, labels, faces, name=M.name + "/~", check=True)

    proj_ass = {}
    for ref in M.cells():
        proj_ass[ref] = simplex_of_class[find(M.cell_simplex(ref))]
    proj = SimplicialMap(M, M2, proj_ass, check=True)

    for n in range(M.dim + 1):
        assert len(M2.simplices(n)) == len(classes[n]), \
            "quotient representation misses classes in dimension %d" % n
    return M2, proj


# ---------------------------------------------------------------------------
# covers, local objects, spectra

def sset_cover_check(X, family, mode, budget=None):
    """raw: jointly surjective on vertices; delta-nis: every simplex lifts."""
    budget = ensure_budget(budget)
    for gmap in family:
        if gmap.target is not X:
            raise InvalidFamily("family member does not land in %s" % X.name)
        if not is_nondegenerate_map(gmap):
            raise InvalidFamily("family members must keep cells nondegenerate")
    if mode == "raw":
        need = set(X.simplices(0))
        got = set()
        for gmap in family:
            got |= gmap.image_simplices(0)
        missing = sorted(need - got)
        if missing:
            return CoverResult("raw", False,
                               {"uncovered_vertex": X.cell_label(missing[0][1])})
        return CoverResult("raw", True, {"vertices": len(need)})
    if mode == "delta-nis":
        lifted = 0
        for n in range(X.dim + 1):
            images = [gmap.image_simplices(n) for gmap in family]
            for x in X.simplices(n):
                budget.spend()
                if not any(x in im for im in images):
                    return CoverResult("delta-nis", False,
                                       {"unlifted_simplex": [n, list(x[0]),
                                                             X.cell_label(x[1])]})
                lifted += 1
        return CoverResult("delta-nis", True, {"simplices_lifted": lifted})
    raise InvalidSpec("unknown sset cover mode %r" % (mode,))


def finest_cell_cover(X):
    """One classifying map per nondegenerate cell; always a delta-nis cover."""
    return [classifying_map(X, X.cell_simplex(ref)) for ref in X.cells()]


def delta_nis_self_lift_decider(X, budget=None):
    """Whether the identity factors through a member of every cover.

    Because covers are closed under refinement by single cells, it is
    enough to look for a section of one classifying map; retracts of a
    standard simplex are again standard simplices.
    """
    budget = ensure_budget(budget)
    for ref in reversed(X.cells()):
        gmap = classifying_map(X, X.cell_simplex(ref))
        if _has_section(gmap, budget):
            return True
    return False


def _has_section(gmap, budget):
    """A right inverse of gmap, found by searching inside its fibers."""
    X = gmap.target
    D = gmap.source
    fibers = {}
    for n in range(X.dim + 1):
        fib = {}
        for z in D.simplices(n):
            fib.setdefault(gmap.apply(z), []).append(z)
        if any(x not in fib for x in X.simplices(n)):
            return False
        fibers[n] = fib
    cells = X.cells()
    assignment = {}

    def extend(k):
        if k == len(cells):
            return True
        ref = cells[k]
        n = ref[0]
        xs = X.cell_simplex(ref)
        for cand in fibers[n][xs]:
            budget.spend()
            ok = True
            if n > 0:
                for i in range(n + 1):
                    rho, w = X.face(xs, i)
                    sv = assignment[w]
                    if (compose_ops(sv[0], rho), sv[1]) != D.face(cand, i):
                        ok = False
                        break
            if ok:
                assignment[ref] = cand
                if extend(k + 1):
                    return True
                del assignment[ref]
        return False

    return extend(0)


def is_standard_simplex(X, budget=None):
    for n in range(X.top_dim + 1):
        if sset_isomorphic(X, delta(n, dim=X.dim), budget=budget) is not None:
            return True
    return False


class CellSpectrum:
    """Nondegenerate cells under the face order, or bare vertices for raw."""

    def __init__(self, base, mode, refs, poset):
        self.base = base
        self.mode = mode
        self.refs = refs
        self.poset = poset

    @property
    def size(self):
        return len(self.refs)

    def as_json(self):
        return {
            "base": self.base.name,
            "mode": self.mode,
            "elements": [{"id": i, "dim": r[0], "cell": self.base.cell_label(r)}
                         for i, r in enumerate(self.refs)],
            "order": [[i, j] for i, j in self.poset.order_pairs()],
        }

    def to_dot(self, name="cells"):
        return poset_to_dot(
            self.poset,
            label=lambda i: self.base.cell_label(self.refs[i]),
            name=name)


def spec_delta_nis(X):
    """Cells ordered by iterated-face containment."""
    refs = X.cells()
    pos = {r: i for i, r in enumerate(refs)}
    pairs = []
    for r in refs:
        for r2 in refs:
            if r[0] > r2[0]:
                continue
            hit = any(
                X.act(X.cell_simplex(r2), delta_vals) == X.cell_simplex(r)
                for delta_vals in injective_ops(r[0], r2[0]))
            if hit:
                pairs.append((pos[r], pos[r2]))
    poset = Poset(list(range(len(refs))), pairs)
    return CellSpectrum(X, "delta-nis", refs, poset)


def spec_raw(X):
    refs = [r for r in X.cells() if r[0] == 0]
    poset = Poset(list(range(len(refs))), [])
    return CellSpectrum(X, "raw", refs, poset)
