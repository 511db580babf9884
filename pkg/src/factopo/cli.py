"""Command line front end.

One command per process: parse input files, run the named operation, print a
JSON report on stdout or write a DOT file to --out.  Output is byte-identical
for identical inputs, config and seed; timing is only attached on request
because it would break that.
"""

import argparse
import json
import sys
import time

from . import finring, ringspec, ringsys, sset, suites, toposx
from .budget import Budget
from .errors import (FactopoError, InvalidFamily, InvalidSpec, ParseError,
                     UsageError)
from .fincat import is_orthogonal, validate_fincat

RING_TOPOLOGIES = ("zar", "dom", "fin", "nfin")
SSET_MODES = ("raw", "delta-nis")


# ---------------------------------------------------------------------------
# file ingestion

def load_json(path):
    """Read one JSON file, rejecting it with line/column on syntax errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ParseError("%s: %s" % (path, err.strerror or err)) from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError("%s:%d:%d: %s"
                         % (path, err.lineno, err.colno, err.msg)) from err


def _build(builder, raw, path):
    # domain validation errors keep their type but gain the file path
    try:
        return builder(raw)
    except FactopoError as err:
        raise err.__class__("%s: %s" % (path, err)) from err


def _need(raw, key, what):
    if not isinstance(raw, dict) or key not in raw:
        raise InvalidSpec("%s file needs a %r field" % (what, key))
    return raw[key]


def _element(A, value):
    if isinstance(value, bool):
        raise InvalidSpec("element references must be names or indices")
    if isinstance(value, int):
        if not 0 <= value < A.size:
            raise InvalidSpec("element index %d out of range for %s"
                              % (value, A.name))
        return value
    return A.element_by_name(str(value))


def _hom_between(A, B, raw, what="hom"):
    """A hom A -> B from either generator images or a full value table."""
    if "images" in raw:
        try:
            images = {_element(A, k): _element(B, v)
                      for k, v in raw["images"].items()}
        except AttributeError:
            raise InvalidSpec("%s images must be a mapping" % what)
        try:
            h = finring.hom_from_images(A, B, images)
        except KeyError:
            raise InvalidSpec(
                "%s images must cover the generators of %s" % (what, A.name))
        if h is None:
            raise InvalidSpec(
                "%s images extend to no ring hom %s -> %s"
                % (what, A.name, B.name))
        return h
    if "map" in raw:
        table = raw["map"]
        if isinstance(table, dict):
            mapping = [None] * A.size
            for k, v in table.items():
                mapping[_element(A, k)] = _element(B, v)
            if None in mapping:
                raise InvalidSpec("%s map misses an element of %s"
                                  % (what, A.name))
        else:
            if len(table) != A.size:
                raise InvalidSpec("%s map must list one image per element of %s"
                                  % (what, A.name))
            mapping = [_element(B, v) for v in table]
        h = finring.RingHom(A, B, tuple(mapping))
        h.validate()
        return h
    raise InvalidSpec("%s file needs \"images\" or \"map\"" % what)


def build_hom(raw):
    A = finring.build_ring(_need(raw, "source", "hom"))
    B = finring.build_ring(_need(raw, "target", "hom"))
    return _hom_between(A, B, raw)


def build_ring_family(A, raw, topology):
    declared = raw.get("topology") if isinstance(raw, dict) else None
    if declared is not None and declared != topology:
        raise InvalidFamily("family file is for topology %r, command asked %r"
                            % (declared, topology))
    if topology == "zar":
        return [_element(A, v) for v in _need(raw, "elements", "family")]
    if topology == "dom":
        return [finring.ideal_generated(A, [_element(A, g) for g in gens])
                for gens in _need(raw, "ideals", "family")]
    homs = []
    for spec in _need(raw, "homs", "family"):
        B = finring.build_ring(_need(spec, "target", "family hom"))
        homs.append(_hom_between(A, B, spec, what="family hom"))
    return homs


def _cell_ref(X, n, label):
    try:
        return (n, X.labels[n].index(label))
    except (KeyError, ValueError):
        raise InvalidSpec("%s has no %d-cell named %r" % (X.name, n, label))


def build_smap(raw, target):
    """A simplicial map into ``target`` from its nondegenerate-cell table.

    Each entry sends a named source cell to [surjection values, target cell
    label]; degenerate images are allowed, faces are checked on build.
    """
    D = sset.build_sset(_need(raw, "source", "map"))
    assignment = {}
    for dim_key, cells in _need(raw, "assignment", "map").items():
        n = int(dim_key)
        for label, value in cells.items():
            ref = _cell_ref(D, n, label)
            sigma = tuple(int(v) for v in value[0])
            assignment[ref] = (sigma, _cell_ref(target, max(sigma), value[1]))
    return sset.SimplicialMap(D, target, assignment,
                              name=raw.get("name", ""))


def build_sset_family(X, raw, mode):
    declared = raw.get("topology") if isinstance(raw, dict) else None
    if declared is not None and declared != mode:
        raise InvalidFamily("family file is for topology %r, command asked %r"
                            % (declared, mode))
    return [build_smap(spec, X) for spec in _need(raw, "maps", "family")]


def _morphism_id(text, cat):
    """Morphism ids come in as JSON when they parse, else as bare strings."""
    try:
        value = json.loads(text)
    except ValueError:
        value = text

    def tuplify(v):
        return tuple(tuplify(x) for x in v) if isinstance(v, list) else v

    value = tuplify(value)
    if value not in cat.morphisms:
        raise InvalidSpec("%s has no morphism %r" % (cat.name, text))
    return value


# ---------------------------------------------------------------------------
# report payloads

def _hom_dict(h):
    return {
        "source": h.source.name,
        "target": h.target.name,
        "map": {h.source.names[x]: h.target.names[h.mapping[x]]
                for x in h.source.elements()},
    }


def _flat_certificate(result):
    d = result.as_dict()
    cert = d["certificate"]
    if isinstance(cert, dict) and len(cert) == 1:
        d["certificate"] = next(iter(cert.values()))
    return d


def _cmd_factorize(args, budget):
    u = _build(build_hom, load_json(args.hom), args.hom)
    if args.system == "triple":
        t = ringsys.triple_factorize(u, budget=budget)
        assert t.composite().mapping == u.mapping
        return {
            "system": "triple",
            "surjection": _hom_dict(t.surj),
            "mono_integral": _hom_dict(t.monoint),
            "integrally_closed": _hom_dict(t.intclo),
        }, None
    f = ringsys.factorize(u, args.system, budget=budget)
    f.verify(u, budget=budget)
    return {
        "system": f.system,
        "left": _hom_dict(f.left),
        "middle": {"name": f.middle.name, "size": f.middle.size},
        "right": _hom_dict(f.right),
    }, None


def _cmd_classify(args, budget):
    A = _build(finring.build_ring, load_json(args.ring), args.ring)
    return ringsys.classify_ring(A, budget=budget).as_dict(), None


def _cmd_cover(args, budget):
    raw = load_json(args.family)
    if args.topology in RING_TOPOLOGIES:
        if not args.base:
            raise UsageError("cover over %s needs --base" % args.topology)
        A = _build(finring.build_ring, load_json(args.base), args.base)
        family = _build(lambda r: build_ring_family(A, r, args.topology),
                        raw, args.family)
        result = ringsys.cover_check(A, family, args.topology,
                                     field_bound=args.field_bound,
                                     budget=budget)
    else:
        if not args.object:
            raise UsageError("cover over %s needs --object" % args.topology)
        X = _build(sset.build_sset, load_json(args.object), args.object)
        family = _build(lambda r: build_sset_family(X, r, args.topology),
                        raw, args.family)
        result = sset.sset_cover_check(X, family, args.topology, budget=budget)
    return _flat_certificate(result), None


def _cmd_spectrum(args, budget):
    if args.topology in RING_TOPOLOGIES:
        if not args.base:
            raise UsageError("spectrum over %s needs --base" % args.topology)
        A = _build(finring.build_ring, load_json(args.base), args.base)
        if args.lattice:
            if args.topology == "zar":
                obj = ringspec.zar_lattice(A, budget=budget)
            elif args.topology == "dom":
                obj = ringspec.dom_lattice(A, budget=budget)
            else:
                raise UsageError("--lattice only applies to zar and dom")
        else:
            obj = ringspec.spec_points(A, args.topology, budget=budget)
    elif args.topology in SSET_MODES:
        if not args.object:
            raise UsageError("spectrum over %s needs --object" % args.topology)
        X = _build(sset.build_sset, load_json(args.object), args.object)
        obj = sset.spec_delta_nis(X) if args.topology == "delta-nis" \
            else sset.spec_raw(X)
    else:
        if not args.space:
            raise UsageError("spectrum over lines needs --space")
        V = _build(toposx.build_vspace, load_json(args.space), args.space)
        obj = toposx.simple_points(V)
    return obj.as_json(), obj.to_dot()


def _cmd_orthogonal(args, budget):
    cat = _build(validate_fincat, load_json(args.category), args.category)
    left = _morphism_id(args.left, cat)
    right = _morphism_id(args.right, cat)
    ok = is_orthogonal(left, right, cat, budget=budget)
    return {"left": args.left, "right": args.right, "orthogonal": ok}, None


def _cmd_verify(args, budget):
    return suites.run_suite(args.suite, seed=args.seed, budget=budget), None


COMMANDS = {
    "factorize": _cmd_factorize,
    "classify": _cmd_classify,
    "cover": _cmd_cover,
    "spectrum": _cmd_spectrum,
    "orthogonal": _cmd_orthogonal,
    "verify": _cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing and dispatch

def _add_common(sub):
    sub.add_argument("--budget", type=int, default=None,
                     help="elementary step cap (default: FACTO_MAX_ENUM "
                          "or 10^7; the flag wins over the environment)")
    sub.add_argument("--field-bound", type=int, default=16,
                     help="order bound for the field catalogue (default 16)")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for randomized suite sampling (default 0)")
    sub.add_argument("--format", choices=("json", "dot"), default="json")
    sub.add_argument("--out", help="output path; required for --format dot, "
                                   "an extra copy of the report otherwise")
    sub.add_argument("--timing", action="store_true",
                     help="attach wall-clock timing to the report")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="factopo",
        description="Factorization systems, covers and spectra "
                    "on finite instances.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("factorize", help="factor one ring hom")
    p.add_argument("--system", required=True,
                   choices=ringsys.SYSTEMS + ("triple",))
    p.add_argument("--hom", required=True, help="hom file (JSON)")
    _add_common(p)

    p = subs.add_parser("classify", help="field/local/domain tests for a ring")
    p.add_argument("--ring", required=True, help="ring file (JSON)")
    _add_common(p)

    p = subs.add_parser("cover", help="decide whether a family covers")
    p.add_argument("--topology", required=True,
                   choices=RING_TOPOLOGIES + SSET_MODES)
    p.add_argument("--base", help="ring file, for ring topologies")
    p.add_argument("--object", help="simplicial set file, for raw/delta-nis")
    p.add_argument("--family", required=True, help="family file (JSON)")
    _add_common(p)

    p = subs.add_parser("spectrum", help="point poset of one object")
    p.add_argument("--topology", required=True,
                   choices=RING_TOPOLOGIES + SSET_MODES + ("lines",))
    p.add_argument("--base", help="ring file, for ring topologies")
    p.add_argument("--object", help="simplicial set file, for raw/delta-nis")
    p.add_argument("--space", help="vector space file, for lines")
    p.add_argument("--lattice", action="store_true",
                   help="full open lattice instead of the point poset "
                        "(zar and dom only)")
    _add_common(p)

    p = subs.add_parser("orthogonal", help="lifting test in a finite category")
    p.add_argument("--category", required=True, help="category file (JSON)")
    p.add_argument("--left", required=True, help="morphism id (JSON or bare)")
    p.add_argument("--right", required=True, help="morphism id (JSON or bare)")
    _add_common(p)

    p = subs.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", required=True, choices=suites.SUITES)
    _add_common(p)

    return parser


def dispatch(args):
    if args.budget is not None and args.budget <= 0:
        raise UsageError("--budget must be positive")
    if args.field_bound < 2:
        raise UsageError("--field-bound must be at least 2")
    budget = Budget(args.budget)
    started = time.perf_counter()
    payload, dot_text = COMMANDS[args.command](args, budget)
    elapsed = time.perf_counter() - started

    if args.format == "dot":
        if dot_text is None:
            raise UsageError("--format dot is only available for spectrum")
        if not args.out:
            raise UsageError("--format dot needs --out")
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot_text)
        return None

    report = {
        "command": args.command,
        "config": {"budget": budget.limit, "field_bound": args.field_bound,
                   "seed": args.seed},
        "result": payload,
    }
    if args.timing:
        report["timing"] = {"seconds": round(elapsed, 3)}
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = dispatch(args)
    except UsageError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except FactopoError as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    if text is not None:
        print(text)
    return 0
