"""Command-line interface.

Exit status: 0 on success or a positive verdict, 1 on a negative verdict,
2 on usage errors, unreadable input, parse errors and exceeded size guards.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path as FsPath

from .classify import UnsupportedPresentation, classify, is_clannish
from .blocks import rho_blocks
from .dsl import load_presentation, serialize_presentation
from .formats import FormatError, load_rep, parse_decomposition, serialize_rep
from .linalg import Field, Matrix
from .quiver import PresentationError, dimension_vector, weight
from .repvar import (
    NotGentleError,
    Representation,
    check_rep,
    hom_dim,
    idempotent_component,
    maximal_rank_sequences,
    orbit_dim,
    realize_rank_sequence,
    tangent_dim,
)
from .split import EnvelopeError, NotClannishError, envelope_details, split_presentation, split_rep
from .stability import GuardError, check_stability, moduli_shape
from .words import (
    BandWord,
    StringWord,
    band_module,
    enumerate_bands,
    enumerate_strings,
    parse_letters,
    string_module,
    word_dimension_vector,
)

CLASSES = {
    "gentle": "gentle_pair",
    "special-biserial": "special_biserial",
    "skewed-gentle": "skewed_gentle",
    "clannish": "clannish",
    "finite": "finite_dimensional",
}


class UsageError(Exception):
    pass


class Result:
    """Text and JSON renderings of one command's report, plus its exit code."""

    def __init__(self, text: str, data, code: int = 0):
        self.text, self.data, self.code = text, data, code


def _yn(v) -> str:
    return {True: "yes", False: "no", None: "undecided"}[v]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")] if text.strip() else []
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _dims(p, d: dict) -> str:
    return ",".join(str(d[v]) for v in p.quiver.vertices)


def _load_rep(pres, path):
    return load_rep(path, pres)


def cmd_classify(args):
    p = load_presentation(args.presentation)
    report = classify(p)
    lines = []
    for key in CLASSES.values():
        v = getattr(report, key)
        lines.append(f"{key}: {_yn(v.holds)}")
        lines += [f"  [{w.clause}] {w.message}" for w in v.witnesses]
    code = 0
    if args.cls:
        code = 0 if getattr(report, CLASSES[args.cls]).holds else 1
    return Result("\n".join(lines), {"presentation": p.name, **report.as_dict()}, code)


def cmd_split(args):
    p = load_presentation(args.presentation)
    try:
        out, smap = split_presentation(p)
    except NotClannishError as exc:
        return Result(str(exc), {"error": str(exc),
                                 "witnesses": [w.as_dict() for w in exc.witnesses]}, 1)
    rows = smap.rows()
    width = max((len(a) for a, _ in rows), default=0)
    text = serialize_presentation(out) + "\n" + "\n".join(
        f"{a.ljust(width)}  {b}" for a, b in rows)
    data = {"presentation": serialize_presentation(out),
            "map": [{"source": a, "image": b} for a, b in rows]}
    if args.rep:
        m = split_rep(_load_rep(p, args.rep))
        rep = serialize_rep(m)
        text += "\n\n" + rep.rstrip("\n")
        data["representation"] = rep
    return Result(text, data)


def cmd_envelope(args):
    p = load_presentation(args.presentation)
    try:
        res = envelope_details(p)
    except (NotClannishError, EnvelopeError) as exc:
        return Result(str(exc), {"error": str(exc),
                                 "witnesses": [w.as_dict() for w in exc.witnesses]}, 1)
    text = serialize_presentation(res.presentation).rstrip("\n")
    text += "\n# dropped: " + (", ".join(res.dropped) or "none")
    text += f"\n# unique: {_yn(res.unique)}"
    return Result(text, {"presentation": serialize_presentation(res.presentation),
                         "kept": list(res.kept), "dropped": list(res.dropped),
                         "unique": res.unique})


def cmd_blocks(args):
    p = load_presentation(args.presentation)
    dec = rho_blocks(p)
    lines, data = [], []
    for k, b in enumerate(dec.blocks):
        n = len(b.presentation.relations)
        lines.append(f"block {k}: arrows {{{','.join(b.arrows)}}} "
                     f"vertices {{{','.join(b.vertices)}}} relations {n}")
        data.append({"arrows": list(b.arrows), "vertices": list(b.vertices), "relations": n})
    if dec.isolated_vertices:
        lines.append(f"isolated vertices {{{','.join(dec.isolated_vertices)}}}")
    return Result("\n".join(lines), {"blocks": data, "isolated": list(dec.isolated_vertices)})


def _field(args):
    return Field.finite(args.prime) if args.prime else Field.rationals()


def cmd_strings(args):
    p = load_presentation(args.presentation)
    if args.module:
        w = StringWord((), args.module[2:]) if args.module.startswith("1_") \
            else StringWord(parse_letters(args.module))
        m = string_module(p, w, _field(args))
        return Result(serialize_rep(m).rstrip("\n"), {"representation": serialize_rep(m)})
    words = enumerate_strings(p, args.max_length)
    rows = [(str(w), _dims(p, word_dimension_vector(p, w))) for w in words]
    return Result("\n".join(f"{w}\t{d}" for w, d in rows),
                  {"strings": [{"word": w, "dim": d} for w, d in rows]})


def cmd_bands(args):
    p = load_presentation(args.presentation)
    if args.module:
        m = band_module(p, BandWord(parse_letters(args.module)), args.lam, _field(args))
        return Result(serialize_rep(m).rstrip("\n"), {"representation": serialize_rep(m)})
    words = enumerate_bands(p, args.max_length)
    rows = [(str(w), _dims(p, word_dimension_vector(p, w))) for w in words]
    return Result("\n".join(f"{w}\t{d}" for w, d in rows),
                  {"bands": [{"word": w, "dim": d} for w, d in rows]})


def cmd_check(args):
    p = load_presentation(args.presentation)
    res = check_rep(_load_rep(p, args.rep))
    text = "valid" if res.valid else f"invalid: violates {res.violated}"
    return Result(text, {"valid": res.valid, "violated": res.violated}, 0 if res.valid else 1)


def cmd_homdim(args):
    p = load_presentation(args.presentation)
    n = hom_dim(_load_rep(p, args.rep1), _load_rep(p, args.rep2))
    return Result(str(n), {"hom_dim": n})


def cmd_orbitdim(args):
    p = load_presentation(args.presentation)
    n = orbit_dim(_load_rep(p, args.rep))
    return Result(str(n), {"orbit_dim": n})


def cmd_tangent(args):
    p = load_presentation(args.presentation)
    n = tangent_dim(_load_rep(p, args.rep))
    return Result(str(n), {"tangent_dim": n})


def cmd_ranks(args):
    p = load_presentation(args.presentation)
    dim = dimension_vector(p.quiver, _int_list(args.dim))
    seqs = maximal_rank_sequences(p, dim)
    names = [a.name for a in p.quiver.arrows]
    lines, data = [], []
    rng = random.Random(args.seed)
    code = 0
    for s in seqs:
        line = " ".join(f"{a}={s[a]}" for a in names)
        entry = {"ranks": s}
        if args.verify:
            found = realize_rank_sequence(p, dim, s, Field.finite(args.prime), rng) is not None
            line += f"  attained={_yn(found)}"
            entry["attained"] = found
            code = code or (0 if found else 1)
        lines.append(line)
        data.append(entry)
    return Result("\n".join(lines), {"sequences": data}, code)


def cmd_idem(args):
    if args.enumerate is not None:
        n, f = args.enumerate, Field.finite(args.prime)
        counts: dict[int, int] = {}
        for entries in itertools.product(f.elements(), repeat=n * n):
            e = Matrix(n, n, tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n)))
            if e.matmul(e, f) == e:
                r = idempotent_component(e, f).rank
                counts[r] = counts.get(r, 0) + 1
        lines = [f"rank {r}: {counts[r]} points" for r in sorted(counts)]
        return Result("\n".join(lines), {"n": n, "prime": args.prime,
                                         "classes": {str(r): counts[r] for r in sorted(counts)}})
    if not (args.presentation and args.rep):
        raise UsageError("idem needs a presentation and a representation, or --enumerate N")
    p = load_presentation(args.presentation)
    m = _load_rep(p, args.rep)
    lines, data = [], []
    for loop in p.quiver.special_loops:
        e = m.matrices[loop.name]
        r, d = idempotent_component(e, m.field)
        lines.append(f"{loop.name}: rank={r} component_dim={d}")
        data.append({"loop": loop.name, "rank": r, "component_dim": d})
    return Result("\n".join(lines), {"loops": data})


def cmd_stability(args):
    p = load_presentation(args.presentation)
    m = _load_rep(p, args.rep)
    if m.field.is_finite:
        if args.prime and args.prime != m.field.prime:
            raise UsageError(f"representation is over {m.field.tag}, not F{args.prime}")
    else:
        f = Field.finite(args.prime or 2)
        m = Representation(p, f, m.dim, {a: Matrix.of(f, x.rows, x.ncols)
                                         for a, x in m.matrices.items()})
    theta = weight(p.quiver, _int_list(args.theta))
    v = check_stability(m, theta, args.max_total_dim)
    text = f"{v.status} over {m.field.tag}"
    c = v.certificate
    if c is not None:
        text += f"\ncertificate: {c.kind} dim=({','.join(map(str, c.dimension))}) theta={c.pairing}"
    return Result(text, v.as_dict(), 0 if v.semistable else 1)


def cmd_moduli(args):
    dec = parse_decomposition(FsPath(args.decomposition).read_text())
    if args.presentation:
        verdict = is_clannish(load_presentation(args.presentation))
        if not verdict:
            msg = "presentation is not clannish"
            return Result(msg, {"error": msg}, 1)
    shape = moduli_shape(dec, clannish=True)
    return Result(str(shape), {"shape": str(shape), "exponents": list(shape.exponents),
                               "dimension": shape.dimension})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clannish", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *positional):
        sp = sub.add_parser(name, help=help_)
        for arg in positional:
            sp.add_argument(arg)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("classify", cmd_classify, "class membership with witnesses", "presentation")
    sp.add_argument("--class", dest="cls", choices=sorted(CLASSES),
                    help="exit 0 iff this class holds")
    sp = add("split", cmd_split, "admissible presentation and split map", "presentation")
    sp.add_argument("--rep", help="also push this representation through the split")
    add("envelope", cmd_envelope, "skewed-gentle envelope", "presentation")
    add("blocks", cmd_blocks, "rho-blocks", "presentation")
    for name, fn in (("strings", cmd_strings), ("bands", cmd_bands)):
        sp = add(name, fn, f"enumerate {name}", "presentation")
        sp.add_argument("--max-length", type=int, default=4)
        sp.add_argument("--module", metavar="WORD", help="emit the module of this word")
        sp.add_argument("--prime", type=int, help="build modules over F_p instead of Q")
    sp.add_argument("--lambda", dest="lam", default="1", help="band parameter")
    add("check", cmd_check, "validate a representation", "presentation", "rep")
    add("homdim", cmd_homdim, "dim Hom(M, N)", "presentation", "rep1", "rep2")
    add("orbitdim", cmd_orbitdim, "orbit dimension", "presentation", "rep")
    add("tangent", cmd_tangent, "tangent space dimension", "presentation", "rep")
    sp = add("ranks", cmd_ranks, "maximal rank sequences", "presentation")
    sp.add_argument("--dim", required=True, help="dimension vector in vertex order")
    sp.add_argument("--verify", action="store_true", help="search for attaining representations")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--prime", type=int, default=2)
    sp = add("idem", cmd_idem, "idempotent components")
    sp.add_argument("presentation", nargs="?")
    sp.add_argument("rep", nargs="?")
    sp.add_argument("--enumerate", type=int, metavar="N", help="exhaustively count E_N over F_p")
    sp.add_argument("--prime", type=int, default=2)
    sp = add("stability", cmd_stability, "King stability by brute force", "presentation", "rep")
    sp.add_argument("--theta", required=True, help="weight in vertex order")
    sp.add_argument("--prime", type=int, help="field for representations given over Q (default 2)")
    sp.add_argument("--max-total-dim", type=int, default=8)
    sp = add("moduli", cmd_moduli, "moduli shape of a stable decomposition", "decomposition")
    sp.add_argument("--presentation", help="verify this presentation is clannish first")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        res = args.fn(args)
    except (UsageError, FileNotFoundError, IsADirectoryError, PresentationError, FormatError,
            GuardError, UnsupportedPresentation, NotGentleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(res.data, indent=2, default=str))
    else:
        print(res.text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
