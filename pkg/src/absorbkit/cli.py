"""Command-line entry point: structure files in, classification tables and reports out.

Exit codes: 0 success, 1 property/validation failure, 2 usage or parse error."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import bits
from .bits import TooLargeError
from .classify import FLAGS, classify, is_c1ap_m_closed, maximal_disjoint_submodules
from .construct import (MAX_CONSTRUCT, amalgamate_module, amalgamate_ring, amalgamate_submodule,
                        direct_sum, free_tensor, product_modules, product_ring)
from .finmod import (MAX_ENUMERATE, FiniteModule, Submodule, all_submodules, hom_from_generators,
                     hom_validate, make_module, module_validate, quotient_module, ring_as_module,
                     submodule_generated)
from .finring import FiniteRing, Ideal, ideal_generated, make_ring, make_zmod, ring_validate
from .lab import (CorpusConfig, Instance, register_module, register_ring, run_instances, run_suite)
from .lab.theorems import THEOREM_IDS, _top_split

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SECTIONS = ("rings", "modules", "ideals", "submodules", "homs", "sets")
COLUMNS = ("id", "popcount", "prime", "classical_prime", "semiprime", "1abs_prime",
           "classical_1abs_prime", "classical_2abs", "witness")
FORCE_FACTOR = 8


class DocError(Exception):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


# -- caps ---------------------------------------------------------------------

@dataclass
class Caps:
    max_module: int = MAX_ENUMERATE      # largest module whose submodules are enumerated
    max_construct: int = MAX_CONSTRUCT   # largest carrier a construction may build
    max_submodules: int = 512
    max_ideals: int = 64
    max_amalgam: int = 256
    max_tensor: int = 4096

    def raised(self) -> "Caps":
        return Caps(**{k: v * FORCE_FACTOR for k, v in vars(self).items()})


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"ABSORBKIT_{name.upper()}")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise DocError(f"environment variable ABSORBKIT_{name.upper()} must be an integer")


def _add_cap_flags(p: argparse.ArgumentParser):
    for name in vars(Caps()):
        p.add_argument("--" + name.replace("_", "-"), type=int, default=None, dest=name,
                       help=f"cap (env ABSORBKIT_{name.upper()})")
    p.add_argument("--force", action="store_true", help=f"multiply every cap by {FORCE_FACTOR}")


def caps_from_args(args) -> Caps:
    base = Caps()
    values = {}
    for name, default in vars(base).items():
        flag = getattr(args, name, None)
        values[name] = flag if flag is not None else _env_int(name, default)
    caps = Caps(**values)
    if getattr(args, "force", False):
        print(f"WARNING: --force raises every cap {FORCE_FACTOR}x; sweeps may take a long time "
              "and use a lot of memory", file=sys.stderr)
        caps = caps.raised()
    return caps


# -- structure documents ------------------------------------------------------

def _locate(text: str, name: str) -> tuple[Optional[int], Optional[int]]:
    i = text.find(json.dumps(name))
    if i < 0:
        return None, None
    line = text.count("\n", 0, i) + 1
    return line, i - (text.rfind("\n", 0, i) + 1) + 1


class StructureDoc:
    """Parsed structure file. Declarations resolve lazily and may appear in any order."""

    def __init__(self, text: str, caps: Optional[Caps] = None):
        self.text = text
        self.caps = caps or Caps()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocError(e.msg, e.lineno, e.colno)
        if not isinstance(raw, dict):
            raise DocError("top level must be an object", 1, 1)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise DocError(f"schema_version must be {SCHEMA_VERSION}", *_locate(text, "schema_version"))
        unknown = sorted(set(raw) - set(SECTIONS) - {"schema_version"})
        if unknown:
            raise DocError(f"unknown section {unknown[0]!r}", *_locate(text, unknown[0]))
        self.decl = {s: raw.get(s, {}) for s in SECTIONS}
        for s in SECTIONS:
            if not isinstance(self.decl[s], dict):
                raise DocError(f"section {s!r} must be an object", *_locate(text, s))
        self._built: dict = {}
        self._busy: set = set()
        self.amalgams: dict = {}     # ring name -> AmalgamRing
        self.names: dict = {}        # id(object) -> declared name

    def error(self, msg: str, name: str) -> DocError:
        return DocError(msg, *_locate(self.text, name))

    def _get(self, section: str, name: str, builder):
        if not isinstance(name, str) or name not in self.decl[section]:
            raise self.error(f"unknown {section[:-1]} {name!r}", str(name))
        key = (section, name)
        if key in self._built:
            return self._built[key]
        if key in self._busy:
            raise self.error(f"circular reference through {name!r}", name)
        self._busy.add(key)
        spec = self.decl[section][name]
        if not isinstance(spec, dict):
            raise self.error(f"{section[:-1]} {name!r} must be an object", name)
        try:
            obj = builder(name, spec)
        except DocError:
            raise
        except TooLargeError as e:
            raise self.error(f"{name}: {e} (raise the cap or use --force)", name)
        except (KeyError, ValueError, TypeError, IndexError) as e:
            raise self.error(f"{section[:-1]} {name!r}: {e}", name)
        finally:
            self._busy.discard(key)
        self._built[key] = obj
        self.names.setdefault(id(obj), name)
        return obj

    # rings
    def ring(self, name: str) -> FiniteRing:
        return self._get("rings", name, self._build_ring)

    def _build_ring(self, name, spec) -> FiniteRing:
        if "zmod" in spec:
            return make_zmod(int(spec["zmod"]))
        if "product" in spec:
            parts = [self.ring(r) for r in spec["product"]]
            R = parts[0]
            for p in parts[1:]:
                R = product_ring(R, p)
            return R
        if "amalgam" in spec:
            A = self.ring(spec["amalgam"])
            AR = amalgamate_ring(A, ideal_generated(A, self._elts(A.size, spec.get("ideal", []), name)),
                                 self.caps.max_construct)
            self.amalgams[name] = AR
            return AR.result
        if "add" in spec and "mul" in spec:
            return make_ring(self._table(spec["add"], name), self._table(spec["mul"], name),
                             int(spec.get("zero", 0)), int(spec.get("one", 1)), name,
                             tuple(spec.get("labels", ())))
        raise self.error(f"ring {name!r} needs one of zmod, product, amalgam or add/mul tables", name)

    # modules
    def module(self, name: str) -> FiniteModule:
        return self._get("modules", name, self._build_module)

    def _build_module(self, name, spec) -> FiniteModule:
        caps = self.caps
        if "ring_module" in spec:
            return ring_as_module(self.ring(spec["ring_module"]), name)
        if "quotient" in spec:
            M = self.module(spec["quotient"])
            L = submodule_generated(M, self._elts(M.size, spec.get("gens", []), name))
            return quotient_module(M, L, name)[0]
        if "product" in spec:
            mods = [self.module(m) for m in spec["product"]]
            if int(np.prod([m.size for m in mods])) > caps.max_construct:
                raise TooLargeError(f"product exceeds {caps.max_construct} elements")
            return product_modules(*mods)
        if "sum" in spec:
            return direct_sum(*(self.module(m) for m in spec["sum"]), cap=caps.max_construct, label=name)
        if "free_tensor" in spec:
            return free_tensor(self.module(spec["free_tensor"]), int(spec.get("k", 2)), caps.max_construct)
        if "amalgam" in spec:
            M = self.module(spec["amalgam"])
            I = ideal_generated(M.ring, self._elts(M.ring.size, spec.get("ideal", []), name))
            return amalgamate_module(M, I, caps.max_construct).result
        if "add" in spec and "action" in spec:
            R = self.ring(spec["ring"])
            return make_module(R, self._table(spec["add"], name), self._table(spec["action"], name),
                               int(spec.get("zero", 0)), name, tuple(spec.get("labels", ())))
        raise self.error(f"module {name!r} needs one of ring_module, quotient, product, sum, "
                         "free_tensor, amalgam or add/action tables", name)

    def ideal(self, name: str) -> Ideal:
        def build(name, spec):
            R = self.ring(spec["ring"])
            return ideal_generated(R, self._elts(R.size, spec.get("gens", []), name))
        return self._get("ideals", name, build)

    def submodule(self, name: str) -> Submodule:
        def build(name, spec):
            M = self.module(spec["module"])
            return submodule_generated(M, self._elts(M.size, spec.get("gens", []), name))
        return self._get("submodules", name, build)

    def hom(self, name: str):
        def build(name, spec):
            S, T = self.module(spec["source"]), self.module(spec["target"])
            images = {}
            for pair in spec.get("images", []):
                g, v = pair
                images[self._elts(S.size, [g], name)[0]] = self._elts(T.size, [v], name)[0]
            return hom_from_generators(S, T, images)
        return self._get("homs", name, build)

    def named_set(self, name: str) -> tuple[FiniteModule, int]:
        def build(name, spec):
            M = self.module(spec["module"])
            return M, bits.from_indices(self._elts(M.size, spec.get("elements", []), name))
        return self._get("sets", name, build)

    def _elts(self, n: int, values, name: str) -> list[int]:
        out = []
        for v in values:
            if not isinstance(v, int) or not 0 <= v < n:
                raise self.error(f"{name}: element index {v!r} out of range 0..{n - 1}", name)
            out.append(v)
        return out

    def _table(self, rows, name: str) -> np.ndarray:
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise self.error(f"{name}: tables are arrays of arrays of integers", name)
        try:
            return np.asarray(rows, dtype=np.intp)
        except (ValueError, TypeError):
            raise self.error(f"{name}: ragged or non-integer table", name)

    def declared(self, section: str) -> list[str]:
        return list(self.decl[section])

    def label(self, obj) -> str:
        return self.names.get(id(obj), getattr(obj, "label", "?"))


def load_doc(path: str, caps: Optional[Caps] = None) -> StructureDoc:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocError(f"cannot read {path}: {e.strerror}")
    return StructureDoc(text, caps)


def validate_doc(doc: StructureDoc) -> list[str]:
    """Build and validate every declaration; returns human-readable problems."""
    problems = []
    bad_rings = set()
    for name in doc.declared("rings"):
        diags = ring_validate(doc.ring(name))
        if diags:
            bad_rings.add(id(doc.ring(name)))
            problems += [f"ring {name}: {d}" for d in diags]
    for name in doc.declared("modules"):
        spec = doc.decl["modules"][name]
        if "ring" in spec and id(doc.ring(spec["ring"])) in bad_rings:
            problems.append(f"module {name}: ring {spec['ring']} is invalid")
            continue
        M = doc.module(name)
        if M.size > doc.caps.max_construct:
            continue
        problems += [f"module {name}: {d}" for d in module_validate(M)]
    for name in doc.declared("ideals"):
        doc.ideal(name)
    for name in doc.declared("submodules"):
        doc.submodule(name)
    for name in doc.declared("homs"):
        problems += [f"hom {name}: {d}" for d in hom_validate(doc.hom(name))]
    for name in doc.declared("sets"):
        M, S = doc.named_set(name)
        if (S >> M.zero) & 1:
            problems.append(f"set {name}: contains zero")
    return problems


def _compact(obj) -> str:
    """JSON with one table row per line."""
    text = json.dumps(obj, indent=1, sort_keys=True)
    return re.sub(r"\[[^\[\]{}\"]*\]", lambda m: re.sub(r"\s+", "", m.group(0)), text) + "\n"


def export_doc(doc: StructureDoc) -> dict:
    """Every ring and module as explicit tables; everything else by generators."""
    out = {"schema_version": SCHEMA_VERSION, "rings": {}, "modules": {}}
    ring_names: dict = {}

    def ring_entry(R: FiniteRing, name: str) -> str:
        if id(R) in ring_names:
            return ring_names[id(R)]
        ring_names[id(R)] = name
        out["rings"][name] = {"add": R.add.tolist(), "mul": R.mul.tolist(), "zero": int(R.zero),
                              "one": int(R.one), "labels": [R.show(x) for x in range(R.size)]}
        return name

    for name in doc.declared("rings"):
        ring_entry(doc.ring(name), name)
    for name in doc.declared("modules"):
        M = doc.module(name)
        rname = ring_entry(M.ring, f"{name}.ring")
        out["modules"][name] = {"ring": rname, "add": np.asarray(M.add).tolist(),
                                "action": np.asarray(M.action).tolist(), "zero": int(M.zero),
                                "labels": [M.show(m) for m in range(M.size)]}
    for sec in ("ideals", "submodules", "homs", "sets"):
        if doc.decl[sec]:
            out[sec] = doc.decl[sec]
    return out


# -- classification tables ----------------------------------------------------

def _show_witness(M: FiniteModule, w: tuple) -> str:
    *ring_part, m = w
    return "(" + ",".join([M.ring.show(a) for a in ring_part] + [M.show(m)]) + ")"


def classification_row(ident: str, P: Submodule) -> dict:
    r = classify(P)
    wit = {f: _show_witness(P.module, r.witnesses[f]) for f in FLAGS if f in r.witnesses}
    return {"id": ident, "popcount": len(P), "flags": dict(r.flags), "witnesses": wit,
            "raw_witnesses": {f: list(w) for f, w in r.witnesses.items()},
            "elements": [P.module.show(m) for m in P.elements]}


def render_rows(rows: list[dict]) -> str:
    head = f"{COLUMNS[0]:<10}{COLUMNS[1]:>9}" + "".join(f"{c:>22}" for c in COLUMNS[2:8]) + "  " + COLUMNS[8]
    lines = [head, "-" * len(head)]
    for row in rows:
        if "skipped" in row:
            lines.append(f"{row['id']:<10}{'':>9}  skipped: {row['skipped']}")
            continue
        vals = "".join(f"{str(row['flags'][f]).lower():>22}" for f in FLAGS)
        wit = " ".join(f"{f}={w}" for f, w in row["witnesses"].items())
        lines.append(f"{row['id']:<10}{row['popcount']:>9}{vals}  {wit}")
    return "\n".join(lines)


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    doc = load_doc(args.file, caps_from_args(args))
    problems = validate_doc(doc)
    for p in problems:
        print(p)
    if problems:
        return EXIT_FAIL
    counts = ", ".join(f"{len(doc.decl[s])} {s}" for s in SECTIONS if doc.decl[s])
    print(f"ok: {counts or 'empty document'}")
    return EXIT_OK


def _load_valid(args) -> Optional[StructureDoc]:
    doc = load_doc(args.file, caps_from_args(args))
    problems = validate_doc(doc)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return None
    return doc


def cmd_classify(args) -> int:
    doc = _load_valid(args)
    if doc is None:
        return EXIT_FAIL
    M = doc.module(args.module)
    rows = []
    if args.submodule:
        P = doc.submodule(args.submodule)
        if P.module is not M:
            raise DocError(f"submodule {args.submodule} does not live in {args.module}")
        if not P.proper:
            raise DocError("proper submodule required")
        rows.append(classification_row(args.submodule, P))
    else:
        try:
            subs = all_submodules(M, doc.caps.max_module)
        except TooLargeError as e:
            subs, rows = [], [{"id": "all", "skipped": str(e)}]
        proper = [P for P in subs if P.proper]
        for i, P in enumerate(proper):
            if i >= doc.caps.max_submodules:
                rows.append({"id": f"S{i}", "skipped": f"beyond {doc.caps.max_submodules} submodules"})
                continue
            rows.append(classification_row(f"S{i}", P))
    closed = _mclosed_report(doc, M, args.set) if args.set else None
    if args.json:
        out = {"module": args.module, "rows": rows}
        if closed:
            out["set"] = closed
        print(json.dumps(out, sort_keys=True, indent=1))
    else:
        print(f"{args.module}: {M.size} elements over {doc.label(M.ring)}")
        print(render_rows(rows))
        for row in rows:
            if "elements" in row:
                print(f"{row['id']} = {{{', '.join(row['elements'])}}}")
        if not args.submodule and any(not P.proper for P in all_submodules(M, doc.caps.max_module)):
            print(f"(whole module {args.module} omitted: not proper)")
        if closed:
            print(f"set {args.set}: m-closed={str(closed['m_closed']).lower()}"
                  + "".join(f"; maximal disjoint {{{', '.join(x)}}}" for x in closed.get("maximal_disjoint", [])))
    return EXIT_OK


def _mclosed_report(doc: StructureDoc, M: FiniteModule, name: str) -> dict:
    owner, S = doc.named_set(name)
    if owner is not M:
        raise DocError(f"set {name} does not live in the classified module")
    chk = is_c1ap_m_closed(M, S, doc.caps.max_module, doc.caps.max_ideals)
    out = {"m_closed": chk.holds}
    if chk.holds:
        out["maximal_disjoint"] = [[M.show(m) for m in P.elements] for P in maximal_disjoint_submodules(M, S)]
    return out


def _doc_instances(doc: StructureDoc, config: CorpusConfig) -> list[Instance]:
    """Register every declared structure with the lab and describe it as instances."""
    out = []
    ring_key = {}
    for name in doc.declared("rings"):
        R = doc.ring(name)
        key = f"doc:{name}"
        ring_key[id(R)] = key
        register_ring(key, R, doc.amalgams.get(name))
        tags = ("amalgam",) if name in doc.amalgams else ()
        out.append(Instance(f"ring {name}", "ring", ("ring", key), key, R.size, tags=tags))
    for name in doc.declared("modules"):
        M = doc.module(name)
        spec = ("doc", name)
        register_module(spec, M)
        unit = ring_key.get(id(M.ring), f"doc:{name}.ring")
        tags = ("ring_module",) if "ring_module" in doc.decl["modules"][name] else ()
        skip = None if M.size <= config.max_module else f"module size {M.size} exceeds {config.max_module}"
        out.append(Instance(name, "module", spec, unit, M.size, skip, tags))
        if "tensor" in config.recipes:
            for k in config.tensor_ranks:
                n = M.size ** k
                tskip = None if n <= config.max_tensor else f"tensor size {n} exceeds {config.max_tensor}"
                out.append(Instance(f"({name})^{k}", "tensor", ("tensor", spec, k), unit, n, tskip))
        for iname in doc.declared("ideals"):
            I = doc.ideal(iname)
            if I.ring is not M.ring:
                continue
            AM = amalgamate_module(M, I, max(config.max_amalgam, MAX_CONSTRUCT))
            n = AM.result.size
            askip = None if n <= config.max_amalgam else f"amalgam size {n} exceeds {config.max_amalgam}"
            out.append(Instance(f"({name}) |><| {iname}", "amalgam", ("amalgam", spec, I.members),
                                unit, n, askip))
    return out


def _parse_theorems(raw: Optional[str]) -> tuple:
    if raw is None or raw == "all":
        return ()
    ids = tuple(t.strip() for t in raw.split(",") if t.strip())
    unknown = [t for t in ids if t not in THEOREM_IDS]
    if unknown:
        raise DocError(f"unknown theorem id {unknown[0]!r}; known: {', '.join(THEOREM_IDS)}")
    return ids


def cmd_verify(args) -> int:
    caps = caps_from_args(args)
    theorems = _parse_theorems(args.theorems)
    config = CorpusConfig(max_module=min(caps.max_module, 144) if args.max_module is None else caps.max_module,
                          max_submodules=caps.max_submodules, max_ideals=caps.max_ideals,
                          max_amalgam=caps.max_amalgam, max_tensor=caps.max_tensor,
                          seed=args.seed, theorems=theorems)
    if args.default_corpus == bool(args.file):
        raise DocError("give either a structure file or --default-corpus")
    if args.default_corpus:
        report = run_suite(config, jobs=args.jobs)
    else:
        doc = _load_valid(args)
        if doc is None:
            return EXIT_FAIL
        report = run_instances(_doc_instances(doc, config), config)
    print(report.table())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    if args.timings:
        with open(args.timings, "w", encoding="utf-8") as fh:
            fh.write(report.timings_json() + "\n")
    if args.verbose:
        for v in report.verdicts:
            print(json.dumps(v.as_dict(), sort_keys=True))
    return EXIT_OK if report.ok else EXIT_FAIL


def _resolve_ideal(doc: StructureDoc, R: FiniteRing, ref: str) -> Ideal:
    if ref in doc.decl["ideals"]:
        I = doc.ideal(ref)
        if I.ring is not R:
            raise DocError(f"ideal {ref} is not an ideal of the module's ring")
        return I
    try:
        gens = [int(g) for g in ref.strip("<>").split(",") if g.strip()]
    except ValueError:
        raise DocError(f"unknown ideal {ref!r}")
    if any(not 0 <= g < R.size for g in gens):
        raise DocError(f"ideal generator out of range in {ref!r}")
    return ideal_generated(R, gens)


def _flag_string(P: Submodule) -> str:
    r = classify(P)
    return "".join("1" if r.flags[f] else "0" for f in FLAGS)


def cmd_amalgamate(args) -> int:
    doc = _load_valid(args)
    if doc is None:
        return EXIT_FAIL
    M = doc.module(args.module)
    I = _resolve_ideal(doc, M.ring, args.ideal)
    cap = doc.caps.max_construct
    AR = amalgamate_ring(M.ring, I, cap)
    AM = amalgamate_module(M, I, cap)
    print(f"|A|><|I| = {AR.result.size}")
    print(f"|M|><|I| = {AM.result.size}")
    if not args.classify:
        return EXIT_OK
    subs = [P for P in all_submodules(M, doc.caps.max_module) if P.proper]
    print(f"flags in order: {', '.join(FLAGS)}")
    print(f"{'id':<6}{'popcount':>9}{'P':>9}{'P|><|I':>9}  equal")
    mismatch = 0
    for i, P in enumerate(subs):
        a, b = _flag_string(P), _flag_string(amalgamate_submodule(P, I, cap))
        mismatch += a != b
        print(f"S{i:<5}{len(P):>9}{a:>9}{b:>9}  {'yes' if a == b else 'no'}")
    return EXIT_OK


def cmd_product(args) -> int:
    doc = _load_valid(args)
    if doc is None:
        return EXIT_FAIL
    M1, M2 = doc.module(args.left), doc.module(args.right)
    if M1.size * M2.size > doc.caps.max_construct:
        raise TooLargeError(f"product exceeds {doc.caps.max_construct} elements")
    M = product_modules(M1, M2)
    print(f"|{args.left} x {args.right}| = {M.size} over a ring of size {M.ring.size}")
    if not args.classify:
        return EXIT_OK
    print(f"{'id':<6}{'P1':>8}{'P2':>8}{'c1ap':>8}{'cprime':>8}  shape")
    for i, P in enumerate(P for P in all_submodules(M, doc.caps.max_module) if P.proper):
        P1, P2 = _top_split(P)
        r = classify(P)

        def cp(Q):
            return Q.proper and classify(Q).flags["classical_prime"]

        shape = (not P1.proper and cp(P2)) or (not P2.proper and cp(P1))
        print(f"S{i:<5}{len(P1):>8}{len(P2):>8}{str(r.flags['classical_one_abs_prime']).lower():>8}"
              f"{str(r.flags['classical_prime']).lower():>8}  {str(shape).lower()}")
    return EXIT_OK


def cmd_export(args) -> int:
    doc = _load_valid(args)
    if doc is None:
        return EXIT_FAIL
    text = _compact(export_doc(doc))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="absorbkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check every declared structure against its axioms")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("classify", help="six-flag classification of submodules")
    c.add_argument("file")
    c.add_argument("module")
    c.add_argument("submodule", nargs="?")
    c.add_argument("--json", action="store_true")
    c.add_argument("--set", help="declared set to test for the m-closed property")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("verify", help="run the theorem suite")
    r.add_argument("file", nargs="?")
    r.add_argument("--default-corpus", action="store_true")
    r.add_argument("--theorems", default="all", help="comma-separated ids or 'all'")
    r.add_argument("--out", help="machine-readable report (no timings)")
    r.add_argument("--timings", help="per-theorem wall times")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--verbose", action="store_true", help="print every verdict as JSON")
    r.set_defaults(func=cmd_verify)

    a = sub.add_parser("amalgamate", help="amalgamated duplication of a module along an ideal")
    a.add_argument("file")
    a.add_argument("module")
    a.add_argument("ideal", help="declared ideal name or generator indices such as 2 or <2,4>")
    a.add_argument("--classify", action="store_true")
    a.set_defaults(func=cmd_amalgamate)

    q = sub.add_parser("product", help="cartesian product of two modules")
    q.add_argument("file")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--classify", action="store_true")
    q.set_defaults(func=cmd_product)

    e = sub.add_parser("export", help="rewrite a structure file with explicit tables")
    e.add_argument("file")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)

    for sp in (v, c, r, a, q, e):
        _add_cap_flags(sp)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except DocError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TooLargeError as e:
        print(f"error: {e} (raise the cap or use --force)", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
