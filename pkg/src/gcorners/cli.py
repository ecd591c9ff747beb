"""Command line interface and JSON document schema.

Input documents are JSON objects::

    {
      "schema_version": 1,
      "monoids":      {"P": {"ambient_rank": 3, "generators": [[1,0,0], ...]}},
      "presented":    {"E": {"generators": 2, "relations": [[[1,1],[2,0]], ...]}},
      "morphisms":    {"mu": {"source": "P", "target": "Q", "matrix": [[...]]}},
      "local_models": {"X": {"monoid": "P", "real_dim": 0}},
      "germs":        {"g": {"source": "X", "target": "Z", "exponent": [[...]],
                             "D": [[...]], "C": [[...]]}},
      "pairs":        {"p": {"g": "g", "h": "h"}},
      "expect":       [{"command": "...", "name": "...", "options": {}, "result": {...}}]
    }

A morphism may give ``images`` (one per source generator) instead of
``matrix``.  A germ's ``exponent`` lists the images in the source monoid of
the target monoid's generators.  Rational entries are integers or strings
such as "1/2".  Every block except ``schema_version`` is optional.

Exit status: 0 success, 1 input error, 2 precondition failure or corpus
mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import germ as gm
from . import model as md
from . import monoid as mn
from . import trans as tr

SCHEMA_VERSION = 1
BLOCKS = ("monoids", "presented", "morphisms", "local_models", "germs", "pairs")


class InputError(Exception):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


class PreconditionFailure(Exception):
    pass


@dataclass(frozen=True)
class ParseError:
    path: str
    message: str
    line: int = None
    column: int = None

    def __str__(self):
        where = self.path
        if self.line is not None:
            where = f"line {self.line}, column {self.column}"
        return f"{where}: {self.message}"


# ---------------------------------------------------------------------------
# parsing

@dataclass
class InputDocument:
    schema_version: int = SCHEMA_VERSION
    monoids: dict = field(default_factory=dict)
    presented: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    local_models: dict = field(default_factory=dict)
    germs: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    expect: list = field(default_factory=list)

    def __post_init__(self):
        self._cache = {}

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return self.to_json() == other.to_json()

    def to_json(self):
        out = {"schema_version": self.schema_version}
        for b in BLOCKS:
            if getattr(self, b):
                out[b] = getattr(self, b)
        if self.expect:
            out["expect"] = self.expect
        return out


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _rat(x):
    if _is_int(x):
        return True
    if isinstance(x, str):
        try:
            Fraction(x)
            return True
        except ValueError:
            return False
    return False


class _Checker:
    def __init__(self):
        self.errors = []

    def err(self, path, msg):
        self.errors.append(ParseError(path, msg))

    def obj(self, v, path):
        if not isinstance(v, dict):
            self.err(path, "expected an object")
            return False
        return True

    def int_(self, v, path, minimum=None):
        if not _is_int(v):
            self.err(path, "expected an integer")
            return False
        if minimum is not None and v < minimum:
            self.err(path, f"must be at least {minimum}")
            return False
        return True

    def name(self, v, path, table, kind):
        if not isinstance(v, str):
            self.err(path, "expected a name")
            return False
        if v not in table:
            self.err(path, f"dangling reference to {kind} '{v}'")
            return False
        return True

    def matrix(self, v, path, ncols=None, entry=_is_int, what="integer"):
        if not isinstance(v, list):
            self.err(path, "expected a list of rows")
            return False
        ok = True
        for i, row in enumerate(v):
            p = f"{path}[{i}]"
            if not isinstance(row, list):
                self.err(p, "expected a row")
                ok = False
                continue
            if ncols is not None and len(row) != ncols:
                self.err(p, f"row has length {len(row)}, expected {ncols}")
                ok = False
            for j, x in enumerate(row):
                if not entry(x):
                    self.err(f"{p}[{j}]", f"expected an exact {what}")
                    ok = False
        if ncols is None and v and len({len(r) for r in v if isinstance(r, list)}) > 1:
            self.err(path, "rows have different lengths")
            ok = False
        return ok


def parse(text):
    """Parse and validate a document; raises InputError with positioned errors."""
    if not text or not text.strip():
        raise InputError([ParseError("$", "empty document")])
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError([ParseError("$", e.msg, e.lineno, e.colno)]) from None
    return parse_object(raw)


def parse_object(raw):
    c = _Checker()
    if not isinstance(raw, dict):
        raise InputError([ParseError("$", "document must be an object")])
    if not raw:
        raise InputError([ParseError("$", "empty document")])
    known = set(BLOCKS) | {"schema_version", "expect"}
    for k in raw:
        if k not in known:
            c.err(f"$.{k}", "unknown block")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        c.err("$.schema_version", f"expected schema_version {SCHEMA_VERSION}")
    blocks = {}
    for b in BLOCKS:
        v = raw.get(b, {})
        if not isinstance(v, dict):
            c.err(f"$.{b}", "expected an object of named entries")
            v = {}
        blocks[b] = v

    for name, m in blocks["monoids"].items():
        p = f"$.monoids.{name}"
        if not c.obj(m, p):
            continue
        if c.int_(m.get("ambient_rank"), f"{p}.ambient_rank", 0):
            c.matrix(m.get("generators", []), f"{p}.generators", m["ambient_rank"])
    for name, m in blocks["presented"].items():
        p = f"$.presented.{name}"
        if not c.obj(m, p):
            continue
        if c.int_(m.get("generators"), f"{p}.generators", 0):
            rels = m.get("relations", [])
            if not isinstance(rels, list):
                c.err(f"{p}.relations", "expected a list of relations")
                continue
            for i, r in enumerate(rels):
                if not isinstance(r, list) or len(r) != 2:
                    c.err(f"{p}.relations[{i}]", "a relation is a pair of vectors")
                    continue
                c.matrix(r, f"{p}.relations[{i}]", m["generators"],
                         entry=lambda x: _is_int(x) and x >= 0, what="nonnegative integer")
    mons = blocks["monoids"]
    for name, m in blocks["morphisms"].items():
        p = f"$.morphisms.{name}"
        if not c.obj(m, p):
            continue
        ok = c.name(m.get("source"), f"{p}.source", mons, "monoid")
        ok = c.name(m.get("target"), f"{p}.target", mons, "monoid") and ok
        if not ok:
            continue
        src, tgt = mons[m["source"]], mons[m["target"]]
        if not (isinstance(src, dict) and isinstance(tgt, dict)):
            continue
        if ("matrix" in m) == ("images" in m):
            c.err(p, "give exactly one of 'matrix' or 'images'")
        elif "matrix" in m:
            if c.matrix(m["matrix"], f"{p}.matrix", src.get("ambient_rank"), entry=_rat, what="rational"):
                if len(m["matrix"]) != tgt.get("ambient_rank"):
                    c.err(f"{p}.matrix", "matrix needs one row per target coordinate")
        else:
            if c.matrix(m["images"], f"{p}.images", tgt.get("ambient_rank")):
                if len(m["images"]) != len(src.get("generators", [])):
                    c.err(f"{p}.images", "one image per source generator is required")
    for name, m in blocks["local_models"].items():
        p = f"$.local_models.{name}"
        if not c.obj(m, p):
            continue
        c.name(m.get("monoid"), f"{p}.monoid", mons, "monoid")
        c.int_(m.get("real_dim", 0), f"{p}.real_dim", 0)
    lms = blocks["local_models"]
    for name, m in blocks["germs"].items():
        p = f"$.germs.{name}"
        if not c.obj(m, p):
            continue
        ok = c.name(m.get("source"), f"{p}.source", lms, "local model")
        ok = c.name(m.get("target"), f"{p}.target", lms, "local model") and ok
        if not ok:
            continue
        try:
            src = mons[lms[m["source"]]["monoid"]]
            tgt = mons[lms[m["target"]]["monoid"]]
            mdim = lms[m["source"]].get("real_dim", 0)
            qdim = lms[m["target"]].get("real_dim", 0)
        except (KeyError, TypeError):
            continue
        if c.matrix(m.get("exponent", []), f"{p}.exponent", src.get("ambient_rank")):
            if len(m.get("exponent", [])) != len(tgt.get("generators", [])):
                c.err(f"{p}.exponent", "one exponent row per target generator is required")
        if "D" in m and c.matrix(m["D"], f"{p}.D", mdim, entry=_rat, what="rational"):
            if len(m["D"]) != len(tgt.get("generators", [])):
                c.err(f"{p}.D", "D needs one row per target generator")
        if "C" in m and c.matrix(m["C"], f"{p}.C", mdim, entry=_rat, what="rational"):
            if len(m["C"]) != qdim:
                c.err(f"{p}.C", f"C needs {qdim} rows")
    for name, m in blocks["pairs"].items():
        p = f"$.pairs.{name}"
        if not c.obj(m, p):
            continue
        c.name(m.get("g"), f"{p}.g", blocks["germs"], "germ")
        c.name(m.get("h"), f"{p}.h", blocks["germs"], "germ")
    expect = raw.get("expect", [])
    if not isinstance(expect, list):
        c.err("$.expect", "expected a list")
        expect = []
    for i, e in enumerate(expect):
        if not isinstance(e, dict) or "command" not in e or "result" not in e:
            c.err(f"$.expect[{i}]", "an expectation needs 'command' and 'result'")
        elif e["command"] not in COMMANDS:
            c.err(f"$.expect[{i}].command", f"unknown command '{e['command']}'")
    if c.errors:
        raise InputError(c.errors)
    return InputDocument(SCHEMA_VERSION, *(blocks[b] for b in BLOCKS), expect)


def serialize(doc, indent=2):
    return json.dumps(doc.to_json(), indent=indent)


# ---------------------------------------------------------------------------
# building objects

def _frac_rows(rows):
    return [[Fraction(x) for x in r] for r in rows]


def _build(doc, kind, name):
    key = (kind, name)
    if key in doc._cache:
        return doc._cache[key]
    table = getattr(doc, kind)
    if name not in table:
        raise InputError([ParseError(f"$.{kind}", f"no entry named '{name}'")])
    spec = table[name]
    path = f"$.{kind}.{name}"
    try:
        if kind == "monoids":
            obj = mn.AffineMonoid(spec["ambient_rank"], tuple(map(tuple, spec.get("generators", []))))
        elif kind == "presented":
            obj = mn.PresentedMonoid(spec["generators"], tuple(tuple(map(tuple, r)) for r in spec.get("relations", [])))
        elif kind == "morphisms":
            src = _build(doc, "monoids", spec["source"])
            tgt = _build(doc, "monoids", spec["target"])
            if "matrix" in spec:
                obj = mn.MonoidMorphism(src, tgt, tuple(map(tuple, _frac_rows(spec["matrix"]))))
            else:
                obj = mn.MonoidMorphism.from_images(src, tgt, spec["images"])
        elif kind == "local_models":
            obj = md.LocalModel(_build(doc, "monoids", spec["monoid"]), spec.get("real_dim", 0))
        elif kind == "germs":
            src = _build(doc, "local_models", spec["source"])
            tgt = _build(doc, "local_models", spec["target"])
            D = _frac_rows(spec["D"]) if "D" in spec else None
            C = _frac_rows(spec["C"]) if "C" in spec else None
            obj = gm.MapGerm.build(src, tgt, spec.get("exponent", []), D, C)
        elif kind == "pairs":
            obj = (_build(doc, "germs", spec["g"]), _build(doc, "germs", spec["h"]))
        else:  # pragma: no cover
            raise KeyError(kind)
    except InputError:
        raise
    except mn.MonoidError as e:
        raise InputError([ParseError(path, str(e))]) from None
    doc._cache[key] = obj
    return obj


def _pick(doc, kinds, name):
    if isinstance(kinds, str):
        kinds = (kinds,)
    if name is not None:
        for k in kinds:
            if name in getattr(doc, k):
                return k, name
        raise InputError([ParseError("$", f"no {' or '.join(kinds)} entry named '{name}'")])
    found = [(k, n) for k in kinds for n in getattr(doc, k)]
    if len(found) != 1:
        raise InputError([ParseError("$", f"--name is required: found {len(found)} candidate entries")])
    return found[0]


# ---------------------------------------------------------------------------
# reports

def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _vecs(vs):
    return [[_num(x) for x in v] for v in vs]


def _monoid_json(P):
    return {"ambient_rank": P.ambient, "generators": _vecs(P.generators)}


def _face_json(F):
    return {"codim": F.codim, "rank": F.rank, "generators": list(F.generator_indices),
            "inequalities": list(F.handle.inequality_indices)}


def _cmd_monoid_check(doc, a):
    kind, name = _pick(doc, ("monoids", "presented"), a.name)
    P = _build(doc, kind, name)
    if kind == "presented":
        cls = mn.classify_presented(P, a.bound)
        free, torsion = mn.presented_groupification(P)
        return {"kind": "presented", "name": name, "bound": a.bound,
                "classification": cls.as_dict(),
                "groupification": {"free_rank": free, "torsion": torsion}}
    cls = mn.classify(P)
    out = {"kind": "affine", "name": name, "classification": cls.as_dict()}
    if cls.weakly_toric:
        out["unit_rank"] = mn.units_and_split(P)[1]
        out["free"] = mn.is_free(P)
    if cls.toric:
        out["hilbert_basis"] = _vecs(mn.hilbert_basis(P))
    return out


def _cmd_monoid_dual(doc, a):
    kind, name = _pick(doc, "monoids", a.name)
    P = _build(doc, kind, name)
    D = mn.dual(P)
    iso, _ = mn.double_dual_map(P)
    return {"name": name, "dual": _monoid_json(D), "rank": D.rank,
            "face_census": list(mn.face_census(D)), "double_dual_iso": iso}


def _cmd_monoid_faces(doc, a):
    kind, name = _pick(doc, "monoids", a.name)
    P = _build(doc, kind, name)
    fs = mn.faces(P)
    return {"name": name, "face_census": list(mn.face_census(P)),
            "faces": [_face_json(F) for F in fs], "spec_size": len(mn.spec(P))}


def _two_morphisms(doc, a):
    names = [a.left, a.right]
    if None in names:
        if len(doc.morphisms) != 2:
            raise InputError([ParseError("$.morphisms", "give --left and --right, or exactly two morphisms")])
        names = list(doc.morphisms)
    return names, [_build(doc, "morphisms", n) for n in names]


def _cmd_monoid_fibre(doc, a):
    names, (mu, nu) = _two_morphisms(doc, a)
    W = mn.fibre_product(mu, nu)
    cls = mn.classify(W)
    out = {"left": names[0], "right": names[1], "fibre_product": _monoid_json(W),
           "rank": W.rank, "classification": cls.as_dict()}
    out["face_census"] = list(mn.face_census(W)) if cls.weakly_toric else None
    return out


def _cmd_monoid_pushout(doc, a):
    names, (al, be) = _two_morphisms(doc, a)
    pres = mn.pushout_fg(al, be)
    out = {"left": names[0], "right": names[1],
           "presentation": {"generators": pres.ngens, "relations": [[list(x), list(y)] for x, y in pres.relations]}}
    if all(mn.is_toric(X) for X in (al.source, al.target, be.target)):
        T = mn.pushout_toric(al, be)
        out["toric"] = {"monoid": _monoid_json(T), "rank": T.rank, "face_census": list(mn.face_census(T))}
    else:
        out["toric"] = None
    return out


def _codims(a, top):
    k = a.codim
    if k is None:
        return list(range(top + 1))
    if not 0 <= k <= top:
        raise PreconditionFailure(f"codimension {k} is outside 0..{top}")
    return [k]


def _cmd_model_corners(doc, a):
    kind, name = _pick(doc, "local_models", a.name)
    M = _build(doc, kind, name)
    out = {"name": name, "dimension": M.dim, "strata_census": list(md.strata_census(M)), "corners": {}}
    for k in _codims(a, M.monoid.rank):
        comps = md.corners(M, k)
        out["corners"][str(k)] = {"count": len(comps),
                                  "components": [_face_json(c.face) for c in comps]}
    return out


def _cmd_model_boundary(doc, a):
    kind, name = _pick(doc, "local_models", a.name)
    M = _build(doc, kind, name)
    k = 1 if a.codim is None else a.codim
    if not 0 <= k <= M.monoid.rank:
        raise PreconditionFailure(f"depth {k} is outside 0..{M.monoid.rank}")
    flags = md.iterated_boundary(M, k)
    return {"name": name, "depth": k, "count": len(flags),
            "flags": [[list(F.generator_indices) for F in fl.faces] for fl in flags]}


def _cmd_model_is_corners(doc, a):
    kind, name = _pick(doc, "local_models", a.name)
    M = _build(doc, kind, name)
    fibres = []
    for F in mn.faces(M.monoid):
        fib, r = md.corner_fibre_monoid(M, F)
        fibres.append({"face": list(F.generator_indices), "normal_rank": r, "free": mn.is_free(fib)})
    return {"name": name, "manifold_with_corners": md.is_manifold_with_corners(M),
            "btangent_rank": md.btangent_rank(M), "fibres": fibres}


def _cmd_germ_classify(doc, a):
    kind, name = _pick(doc, "germs", a.name)
    g = _build(doc, kind, name)
    c = gm.classify_germ(g)
    return {"name": name, "L": _vecs(g.L),
            "classification": {"interior": c.interior, "simple_at_vertex": c.simple_at_vertex,
                               "simple_local": c.simple_local, "b_normal": c.b_normal,
                               "b_submersion": c.b_submersion, "b_fibration": c.b_fibration,
                               "immersion_at_vertex": c.immersion_at_vertex,
                               "etale_at_vertex": c.etale_at_vertex},
            "diagnostics": c.diagnostics}


def _cmd_trans_check(doc, a):
    kind, name = _pick(doc, "pairs", a.name)
    g, h = _build(doc, kind, name)
    rep = tr.is_c_transverse(g, h)
    out = {"name": name}
    out.update(rep.as_dict())
    out["sufficiency"] = tr.c_transverse_sufficiency(g, h)
    return out


def _cmd_trans_fibre(doc, a):
    kind, name = _pick(doc, "pairs", a.name)
    g, h = _build(doc, kind, name)
    fm = tr.fibre_local_model(g, h)
    return {"name": name, "monoid": _monoid_json(fm.monoid), "rank": fm.monoid.rank,
            "dual_fibre": _monoid_json(fm.dual_fibre), "extra_real_dim": fm.extra_real_dim,
            "vertex_in_fibre": fm.vertex_in_fibre, "dimension": fm.dimension,
            "face_census": list(mn.face_census(fm.monoid))}


def _cmd_trans_corner_formula(doc, a):
    kind, name = _pick(doc, "pairs", a.name)
    g, h = _build(doc, kind, name)
    fm = tr.fibre_local_model(g, h)
    checks = []
    for i in _codims(a, fm.monoid.rank):
        r = tr.corner_formula_check(g, h, i)
        checks.append({"i": i, "left": r.left, "right": r.right, "match": r.match})
    return {"name": name, "checks": checks, "all_match": all(c["match"] for c in checks)}


def _subset(expected, actual):
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _subset(v, actual[k]) for k, v in expected.items())
    return expected == actual


def corpus_documents():
    """(filename, text) for every bundled corpus document, sorted by name."""
    base = resources.files("gcorners") / "corpus"
    return sorted((p.name, p.read_text()) for p in base.iterdir() if p.name.endswith(".json"))


def verify_document(doc):
    results = []
    for e in doc.expect:
        opts = argparse.Namespace(name=e.get("name"), bound=8, codim=None, left=None, right=None)
        for k, v in e.get("options", {}).items():
            setattr(opts, k, v)
        try:
            actual = COMMANDS[e["command"]](doc, opts)
            ok = _subset(e["result"], actual)
            detail = None if ok else "result differs from expectation"
        except (InputError, PreconditionFailure, mn.MonoidError) as ex:
            actual, ok, detail = None, False, str(ex)
        results.append({"command": e["command"], "name": e.get("name"), "pass": ok, "detail": detail})
    return results


def _cmd_corpus_verify(doc, a):
    files = []
    for fname, text in corpus_documents():
        d = parse(text)
        files.append({"document": fname, "checks": verify_document(d)})
    total = sum(len(f["checks"]) for f in files)
    passed = sum(c["pass"] for f in files for c in f["checks"])
    return {"documents": files, "total": total, "passed": passed, "all_pass": passed == total}


COMMANDS = {
    "monoid-check": _cmd_monoid_check,
    "monoid-dual": _cmd_monoid_dual,
    "monoid-faces": _cmd_monoid_faces,
    "monoid-fibre": _cmd_monoid_fibre,
    "monoid-pushout": _cmd_monoid_pushout,
    "model-corners": _cmd_model_corners,
    "model-boundary": _cmd_model_boundary,
    "model-is-corners": _cmd_model_is_corners,
    "germ-classify": _cmd_germ_classify,
    "trans-check": _cmd_trans_check,
    "trans-fibre": _cmd_trans_fibre,
    "trans-corner-formula": _cmd_trans_corner_formula,
    "corpus-verify": _cmd_corpus_verify,
}


def run(command, doc, **options):
    """Run a command on a parsed document and return the report dict."""
    a = argparse.Namespace(name=None, bound=8, codim=None, left=None, right=None)
    for k, v in options.items():
        setattr(a, k, v)
    if command not in COMMANDS:
        raise InputError([ParseError("$", f"unknown command '{command}'")])
    try:
        result = COMMANDS[command](doc, a)
    except (gm.PreconditionError, mn.MonoidError) as e:
        raise PreconditionFailure(str(e)) from None
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # usage problems are input errors (status 1), not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"input error: {message}", file=sys.stderr)
        sys.exit(1)


def _parser():
    p = _ArgumentParser(prog="gcorners", description="Monoids, corners and transversality of g-corner models.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?", help="input document (JSON); '-' reads stdin")
    p.add_argument("--name", help="entry to operate on")
    p.add_argument("--left", help="first morphism (monoid-fibre, monoid-pushout)")
    p.add_argument("--right", help="second morphism (monoid-fibre, monoid-pushout)")
    p.add_argument("--bound", type=int, default=8, help="word-problem degree bound (default 8)")
    p.add_argument("--codim", "--depth", dest="codim", type=int, default=None,
                   help="codimension for corners/corner formula, depth for boundaries")
    p.add_argument("--json-indent", type=int, default=2)
    p.add_argument("--quiet", action="store_true", help="suppress timing on stderr")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "corpus-verify":
            doc = InputDocument()
        else:
            if args.input is None:
                raise InputError([ParseError("$", "an input document is required")])
            if args.input == "-":
                text = sys.stdin.read()
            else:
                try:
                    with open(args.input, encoding="utf-8") as fh:
                        text = fh.read()
                except OSError as e:
                    raise InputError([ParseError("$", f"cannot read {args.input}: {e.strerror}")]) from None
            doc = parse(text)
        opts = {k: getattr(args, k) for k in ("name", "bound", "codim", "left", "right")}
        report = run(args.command, doc, **opts)
    except InputError as e:
        for err in e.errors:
            print(f"input error: {err}", file=sys.stderr)
        return 1
    except PreconditionFailure as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=args.json_indent))
    if not args.quiet:
        print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if args.command == "corpus-verify" and not report["result"]["all_pass"]:
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
