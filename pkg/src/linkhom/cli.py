"""Command line interface.

Exit codes: 0 ok, 2 usage, 3 budget exceeded, 4 verification failure,
5 parse error.  With --json the output is machine-readable and byte-stable
across runs; the human-readable default is informational only.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import bounded as bnd
from . import chords as ch
from . import gauss
from . import hopf
from . import interchange
from . import relators as rel
from . import spaces
from .bases import enum_forests
from .diagrams import canonical_diagram, canonicalize, inject
from .errors import BudgetError, DiagramError, ParseError, VerificationError
from .lincomb import LinComb, terms_doc
from .qlinalg import certificate_doc, certificate_from_doc, verify_certificate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4
EXIT_PARSE = 5


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _budget(args):
    if args.budget_k or args.budget_d:
        return (args.budget_k or 10**9, args.budget_d or 10**9)
    return None


def _cmd_enumerate(args) -> int:
    space = args.space
    if space != "chord" and args.k is None:
        raise ParseError("this space needs -k")
    spaces.check_budget("chord" if space == "chord" else "bhl",
                        args.k, args.d, _budget(args))
    lines = []
    if space == "chord":
        for c in ch.enum_chord(args.d):
            lines.append(_dump({"key": ch.chord_key(c).hex(), "diagram": interchange.chord_doc(c)}))
    elif space == "forest":
        for sk in enum_forests(args.k, args.d):
            doc = interchange.serialize(canonical_diagram(sk.key))
            lines.append(_dump({"key": sk.hex, "diagram": doc}))
    else:
        for sk in bnd.enum_bounded(args.k, args.d):
            doc = interchange.bounded_doc(bnd.bounded_from_key(sk.key))
            lines.append(_dump({"key": sk.hex, "diagram": doc}))
    print("\n".join(lines) if lines else "", end="\n" if lines else "")
    return EXIT_OK


def _cmd_dim(args) -> int:
    report = spaces.dim_space(args.space, args.k, args.d, _budget(args))
    if args.json:
        doc = report.to_doc()
        del doc["seconds"]
        print(_dump(doc))
    else:
        print(report.dim)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.theorem != "main":
        raise ParseError(f"unknown theorem {args.theorem!r}")
    certs = spaces.verify_main_theorem(args.k, args.max_degree, _budget(args))
    written = []
    if args.certs:
        outdir = Path(args.certs)
        outdir.mkdir(parents=True, exist_ok=True)
        for cert in certs:
            key = cert.target.keys()[0]
            d = canonical_diagram(key).degree()
            doc = {"space": "bhl", "k": args.k, "d": d, **certificate_doc(cert)}
            path = outdir / f"cert-{key.hex()}.json"
            path.write_text(_dump(doc) + "\n")
            written.append(path.name)
    summary = {"theorem": "main", "k": args.k, "max_degree": args.max_degree,
               "certificates": len(certs), "files": sorted(written)}
    print(_dump(summary) if args.json else
          f"ok: {len(certs)} certificates" + (f", written to {args.certs}" if args.certs else ""))
    return EXIT_OK


def _cmd_check_cert(args) -> int:
    doc = json.loads(Path(args.cert).read_text())
    cert = certificate_from_doc(doc)
    k, d = doc["k"], doc["d"]
    _, by_id, _ = spaces.relation_matrix_bhl(k, d)
    if not verify_certificate(cert, by_id):
        raise VerificationError(f"certificate {args.cert} does not re-sum to its target")
    if not cert.is_member:
        raise VerificationError(f"certificate {args.cert} has a nonzero residual")
    print(_dump({"cert": Path(args.cert).name, "ok": True}) if args.json else "ok")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    D = interchange.parse(Path(args.input).read_text())
    if D.k != args.k:
        raise ParseError(f"diagram has k={D.k}, expected {args.k}")
    L = inject(D)
    monomials = spaces.reduce_to_monomials(L, args.k)
    if args.json:
        doc = [{"monomial": spaces.monomial_str(m), "coeff": str(c)}
               for m, c in sorted(monomials.items())]
        print(_dump(doc))
    else:
        if not monomials:
            print(0)
        else:
            bits = [f"{c}*{spaces.monomial_str(m)}" for m, c in sorted(monomials.items())]
            print(" + ".join(bits))
    return EXIT_OK


def _cmd_chi(args) -> int:
    D = interchange.parse(Path(args.input).read_text())
    if D.k != args.k:
        raise ParseError(f"diagram has k={D.k}, expected {args.k}")
    image = spaces.chi(D, args.k)
    if args.json:
        print(_dump(terms_doc(image)))
    else:
        if image.is_zero():
            print(0)
        else:
            for key, coeff in image.items():
                print(f"{coeff}  {key.hex()}")
    return EXIT_OK


def _cmd_lk(args) -> int:
    text = Path(args.input).read_text()
    L = gauss.parse_pd(text) if args.pd else gauss.parse_gauss(text)
    matrix = gauss.linking_matrix(L)
    fuzz_report = None
    if args.fuzz:
        rng = random.Random(args.seed)
        cur = L
        applied = 0
        for _ in range(args.fuzz):
            cur, move = gauss.random_homotopy_move(cur, rng)
            if move is not None:
                applied += 1
            if gauss.linking_matrix(cur) != matrix:
                raise VerificationError(
                    f"linking matrix changed after move {move} at step {applied}")
        fuzz_report = {"moves": args.fuzz, "applied": applied, "seed": args.seed, "stable": True}
    if args.json:
        doc = {"lk": matrix}
        if fuzz_report:
            doc["fuzz"] = fuzz_report
        print(_dump(doc))
    else:
        for row in matrix:
            print(" ".join(str(x) for x in row))
        if fuzz_report:
            print(f"stable under {args.fuzz} moves (seed {args.seed})")
    return EXIT_OK


def _cmd_hopf_check(args) -> int:
    checks = {}
    # chord compatibility, exhaustive at the configured degree
    pairs = 0
    for d1 in range(args.chord_degree + 1):
        for d2 in range(args.chord_degree + 1 - d1):
            for c1 in ch.enum_chord(d1):
                for c2 in ch.enum_chord(d2):
                    x, y = ch.inject_chord(c1), ch.inject_chord(c2)
                    lhs = hopf.coproduct(hopf.product(x, y))
                    rhs = hopf.tensor_product(hopf.coproduct(x), hopf.coproduct(y))
                    if lhs != rhs:
                        raise VerificationError(
                            f"chord compatibility fails at {ch.chord_key(c1).hex()} x {ch.chord_key(c2).hex()}")
                    pairs += 1
    checks["chord_pairs"] = pairs

    # forest compatibility
    pairs = 0
    k = args.forest_k
    for d1 in range(1, args.forest_degree):
        for d2 in range(1, args.forest_degree + 1 - d1):
            for a in enum_forests(k, d1):
                for b in enum_forests(k, d2):
                    x, y = LinComb.term(a.key), LinComb.term(b.key)
                    lhs = hopf.coproduct(hopf.product(x, y))
                    rhs = hopf.tensor_product(hopf.coproduct(x), hopf.coproduct(y))
                    if lhs != rhs:
                        raise VerificationError(
                            f"forest compatibility fails at {a.hex} x {b.hex}")
                    pairs += 1
    checks["forest_pairs"] = pairs

    # connect sum arc independence modulo 4T
    checked = 0
    for d1 in range(1, args.chord_degree + 1):
        for d2 in range(1, args.chord_degree + 2 - d1):
            basis = ch.enum_chord(d1 + d2)
            keys = [ch.chord_key(c) for c in basis]
            from .qlinalg import relator_matrix
            mat = relator_matrix(keys, rel.four_t_relators(basis))
            for c1 in ch.enum_chord(d1):
                for c2 in ch.enum_chord(d2):
                    base = ch.inject_chord(ch.connect_sum(c1, c2, 0, 0))
                    for a1 in range(2 * d1):
                        for a2 in range(2 * d2):
                            other = ch.inject_chord(ch.connect_sum(c1, c2, a1, a2))
                            diff = base - other
                            if diff and not mat.membership(diff).is_member:
                                raise VerificationError(
                                    "connect sum depends on the cut points beyond 4T "
                                    f"at {ch.chord_key(c1).hex()} x {ch.chord_key(c2).hex()}")
                    checked += 1
    checks["connect_sum_pairs"] = checked
    print(_dump({"ok": True, **checks}) if args.json else
          "ok: " + ", ".join(f"{k2}={v}" for k2, v in sorted(checks.items())))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linkhom",
                                description="diagram spaces for links up to link homotopy")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget-k", type=int, default=None, help="override the k budget")
    p.add_argument("--budget-d", type=int, default=None, help="override the degree budget")
    # the same flags are accepted after the subcommand; SUPPRESS keeps a
    # pre-subcommand occurrence from being reset to the default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--budget-k", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget-d", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common],
                       help="list a diagram basis, one document per line")
    e.add_argument("--space", choices=("forest", "bounded", "chord"), required=True)
    e.add_argument("-k", type=int, default=None)
    e.add_argument("-d", type=int, required=True)
    e.set_defaults(func=_cmd_enumerate)

    d = sub.add_parser("dim", parents=[common], help="dimension of one graded piece")
    d.add_argument("--space", choices=spaces.SPACES, required=True)
    d.add_argument("-k", type=int, default=None)
    d.add_argument("-d", type=int, required=True)
    d.set_defaults(func=_cmd_dim)

    v = sub.add_parser("verify", parents=[common], help="certify the main triviality statement")
    v.add_argument("--theorem", default="main")
    v.add_argument("-k", type=int, required=True)
    v.add_argument("--max-degree", type=int, required=True)
    v.add_argument("--certs", default=None, help="directory for certificate files")
    v.set_defaults(func=_cmd_verify)

    cc = sub.add_parser("check-cert", parents=[common], help="re-sum a certificate independently")
    cc.add_argument("--cert", required=True)
    cc.set_defaults(func=_cmd_check_cert)

    r = sub.add_parser("reduce", parents=[common], help="image of a diagram in the monomial algebra")
    r.add_argument("--input", required=True)
    r.add_argument("-k", type=int, required=True)
    r.set_defaults(func=_cmd_reduce)

    c = sub.add_parser("chi", parents=[common], help="average a diagram over leg attachments")
    c.add_argument("--input", required=True)
    c.add_argument("-k", type=int, required=True)
    c.set_defaults(func=_cmd_chi)

    l = sub.add_parser("lk", parents=[common], help="linking matrix of a link presentation")
    l.add_argument("--input", required=True)
    l.add_argument("--pd", action="store_true", help="input is PD text, not Gauss")
    l.add_argument("--fuzz", type=int, default=0, help="random homotopy moves to apply")
    l.add_argument("--seed", type=int, default=0)
    l.set_defaults(func=_cmd_lk)

    h = sub.add_parser("hopf-check", parents=[common], help="product/coproduct law checks")
    h.add_argument("--chord-degree", type=int, default=2)
    h.add_argument("--forest-k", type=int, default=3)
    h.add_argument("--forest-degree", type=int, default=3)
    h.set_defaults(func=_cmd_hopf_check)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, DiagramError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
