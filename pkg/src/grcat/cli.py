"""Command-line front end.

Exit codes: 0 success or true, 1 decision answered false, 2 invalid input,
3 size bound exceeded.
"""

import argparse
import sys

import numpy as np

from . import coherence, crossedmod, grcore, io, nerve, piccat
from .cohomology import Cochain, class_equal, cohomology_group
from .errors import ExpressionSyntaxError, GrcatError, SizeBound, ValidationError
from .fingroup import DEFAULT_MAX_ORDER, cyclic_decomposition

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_BOUND = 0, 1, 2, 3


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _seed(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _cochain_rows(c, indent="  "):
    return [indent + " ".join(map(str, args + (v,))) for args, v in c.items()]


def _describe_cat(cat):
    return [
        f"G: order {cat.G.order}",
        f"A: {' x '.join(f'Z/{m}' for m in cat.A.moduli) or '0'}",
        f"action: {'trivial' if cat.action.is_trivial else 'nontrivial'}",
    ]


# ---------------------------------------------------------------------------
# subcommands


def cmd_cohomology_compute(args, out):
    G = io.decode_group(_read(args.group))
    A = cyclic_decomposition(io.decode_group(_read(args.module)))
    action = io.decode_action(_read(args.action), G, A)
    rep = cohomology_group(action, args.n, method=args.method)
    out.append(f"H^{args.n} = {rep.describe()}")
    for i, (m, c) in enumerate(zip(rep.invariants, rep.representatives), start=1):
        out.append(f"generator {i} (order {m}):")
        out += _cochain_rows(c)
    return EXIT_OK


def cmd_grcat_equiv(args, out):
    a = io.decode_grcat(_read(args.first))
    b = io.decode_grcat(_read(args.second))
    res = grcore.equivalent(a, b, max_order=args.max_order)
    if not res:
        out.append(f"NOT EQUIVALENT: {res.reason}")
        return EXIT_FALSE
    out.append("EQUIVALENT")
    out.append("phi: " + io.format_hom(res.phi))
    out.append("psi: " + io.format_hom(res.psi))
    out.append("f:")
    out += _cochain_rows(res.f)
    return EXIT_OK


def cmd_grcat_invariant(args, out):
    cat = io.decode_grcat(_read(args.file))
    out += _describe_cat(cat)
    cls = grcore.sinh_invariant(cat)
    out.append(f"class: {'zero' if cls.is_zero else 'nonzero'}")
    return EXIT_OK


def cmd_xmod_skeletalize(args, out):
    X = io.decode_xmod(_read(args.file))
    sk = crossedmod.skeletalize(X)
    cat = sk.category
    out += _describe_cat(cat)
    zero = Cochain.zero(cat.action, 3)
    out.append(f"class: {'zero' if class_equal(zero, cat.assoc) else 'nonzero'}")
    out.append("associator:")
    out += _cochain_rows(cat.assoc)
    if args.rechoices:
        rng = np.random.default_rng(args.seed)
        agree = sum(
            bool(class_equal(crossedmod.skeletalize(X, rng).category.assoc, cat.assoc)) for _ in range(args.rechoices)
        )
        out.append(f"re-choices agreeing: {agree}/{args.rechoices}")
        if agree != args.rechoices:
            return EXIT_FALSE
    return EXIT_OK


def cmd_pic_invariants(args, out):
    C = io.decode_chain(_read(args.file))
    inv = piccat.pic_invariants(piccat.pic_from_chain(C))
    out.append(f"pi0 = {' x '.join(f'Z/{m}' for m in inv.pi0.moduli) or '0'}")
    out.append(f"pi1 = {' x '.join(f'Z/{m}' for m in inv.pi1.moduli) or '0'}")
    return EXIT_OK


def cmd_pic_equiv(args, out):
    M1 = piccat.pic_from_chain(io.decode_chain(_read(args.first)))
    M2 = piccat.pic_from_chain(io.decode_chain(_read(args.second)))
    if piccat.restrained_equivalent(M1, M2, args.max_order):
        out.append("EQUIVALENT")
        return EXIT_OK
    out.append("NOT EQUIVALENT")
    return EXIT_FALSE


def cmd_nerve_build(args, out):
    text = _read(args.file)
    kind = io.detect_kind(text)
    if kind == "group":
        S = nerve.nerve_group(io.decode_group(text), args.dim)
    elif kind == "xmod":
        S = nerve.nerve_two_group(crossedmod.to_strict_two_group(io.decode_xmod(text)), args.dim)
    else:
        raise ValidationError(f"nerve needs a group or xmod file, got {kind}")
    out.append(nerve.export(S).rstrip("\n"))
    check = nerve.check_simplicial(S)
    out.append(f"simplicial identities: {check.line()}")
    if args.homology:
        out += nerve.homology(S).lines()
    return EXIT_OK if check else EXIT_FALSE


def cmd_coherence_check(args, out):
    cat = io.decode_grcat(_read(args.file), check=not args.raw)
    rep = coherence.coherence_check(cat, args.n, rng=np.random.default_rng(args.seed))
    out += rep.lines()
    return EXIT_OK if rep else EXIT_FALSE


def cmd_coherence_path(args, out):
    t = coherence.strip_units(coherence.parse(args.expr))
    path = coherence.path_to_right_comb(t)
    cur = path.start
    out.append(coherence.to_text(cur))
    for pos, d in path.moves:
        cur = coherence.rotate(cur, pos, d)
        where = "".join("LR"[s] for s in pos) or "root"
        out.append(f"-> {coherence.to_text(cur)}  [{where}]")
    if args.grcat:
        cat = io.decode_grcat(_read(args.grcat))
        values = [int(v) for v in args.values.split(",")] if args.values else None
        if values is None:
            raise ValidationError("--values is required with --grcat")
        out.append(f"value: {coherence.evaluate_path(path, cat, values)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = argparse.ArgumentParser(prog="grcat", description="Finite Gr-categories and 2-groups.")
    sub = p.add_subparsers(dest="area", required=True)

    def common(sp):
        sp.add_argument("--seed", type=_seed, default=0)
        sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        sp.add_argument("--out", default=None)

    coh = sub.add_parser("cohomology").add_subparsers(dest="cmd", required=True)
    sp = coh.add_parser("compute", help="H^n(G, A) with generators")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=("snf", "exhaustive"), default="snf")
    sp.add_argument("group")
    sp.add_argument("module")
    sp.add_argument("action")
    common(sp)
    sp.set_defaults(func=cmd_cohomology_compute)

    gr = sub.add_parser("grcat").add_subparsers(dest="cmd", required=True)
    sp = gr.add_parser("equiv", help="decide equivalence of two skeletal Gr-categories")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp)
    sp.set_defaults(func=cmd_grcat_equiv)
    sp = gr.add_parser("invariant", help="whether the associator class vanishes")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_grcat_invariant)

    xm = sub.add_parser("xmod").add_subparsers(dest="cmd", required=True)
    sp = xm.add_parser("skeletalize", help="skeletal data of a crossed module")
    sp.add_argument("file")
    sp.add_argument("--rechoices", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_xmod_skeletalize)

    pic = sub.add_parser("pic").add_subparsers(dest="cmd", required=True)
    sp = pic.add_parser("invariants", help="pi0 and pi1 of a chain-complex model")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_pic_invariants)
    sp = pic.add_parser("equiv", help="compare two restrained models")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp)
    sp.set_defaults(func=cmd_pic_equiv)

    nv = sub.add_parser("nerve").add_subparsers(dest="cmd", required=True)
    sp = nv.add_parser("build", help="truncated nerve of a group or crossed module")
    sp.add_argument("file")
    sp.add_argument("--dim", type=int, default=3)
    sp.add_argument("--homology", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_nerve_build)

    co = sub.add_parser("coherence").add_subparsers(dest="cmd", required=True)
    sp = co.add_parser("check", help="compare rotation paths on all words of length n")
    sp.add_argument("file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--raw", action="store_true", help="skip the cocycle check on the associator")
    common(sp)
    sp.set_defaults(func=cmd_coherence_check)
    sp = co.add_parser("path", help="canonical path from a word to the right comb")
    sp.add_argument("expr")
    sp.add_argument("--grcat", default=None)
    sp.add_argument("--values", default=None, help="comma-separated leaf objects")
    common(sp)
    sp.set_defaults(func=cmd_coherence_path)
    return p


def run(argv):
    """Return ``(exit code, report text)`` without touching stdout."""
    args = build_parser().parse_args(argv)
    out = []
    try:
        code = args.func(args, out)
    except SizeBound as e:
        out.append(f"SIZE BOUND: {e}")
        code = EXIT_BOUND
    except (ValidationError, ExpressionSyntaxError) as e:
        witness = getattr(e, "witness", None)
        if isinstance(e, ExpressionSyntaxError):
            witness = e.position
        out.append(f"INVALID: {type(e).__name__}: {e}" + (f" [witness {witness}]" if witness is not None else ""))
        code = EXIT_INVALID
    except GrcatError as e:
        out.append(f"ERROR: {e}")
        code = EXIT_INVALID
    except OSError as e:
        out.append(f"INVALID: cannot read input: {e.strerror}: {e.filename}")
        code = EXIT_INVALID
    text = "\n".join(out) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    return code, text


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
