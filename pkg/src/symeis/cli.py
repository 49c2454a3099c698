"""Command line surface; every subcommand prints one JSON document."""

import argparse
import json
import os
import sys
from fractions import Fraction

import gmpy2

from .goncharov import delta_g
from .ihara import (
    RationalRing,
    goncharov_vs_ihara,
    ihara_compose,
    ihara_inverse,
    pair,
    random_grouplike,
    _words_of_length,
)
from .mes import (
    depth2_closed_form_deviation,
    gamma_me,
    gamma_me_composed,
    kaneko_sum_deviation,
    mes_numeric,
    smes,
    smes_via_ihara,
    verify_identity,
)
from .mzv import MzvContext, mzv, mzv_sym
from .polyspaces import fsh_lsh_iso, lsh_basis, lsh_dim, special_space_basis
from .qseries import discriminant, eisenstein_tilde, gtilde, gtilde_shuffle
from .ranks import appendix_reduction, binom_identity, matrices
from .relations import (
    SeriesFamily,
    cusp_expression,
    im_decomposition_deviation,
    integer_relation,
    numeric_rank,
    symbolic_upper_bound,
    theorem12_check,
)
from .words import HElem, reg0, shuffle, stuffle

DELTA12_INDICES = [
    (1, 1, 10), (1, 2, 9), (1, 3, 8), (1, 4, 7), (1, 5, 6), (1, 6, 5),
    (1, 7, 4), (1, 8, 3), (2, 2, 8), (2, 3, 7), (2, 4, 6), (2, 5, 5),
]


def _parse_index(text):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise SystemExit(usage_error(f"bad index {text!r}"))
    if not parts or min(parts) < 1:
        raise SystemExit(usage_error(f"bad index {text!r}"))
    return parts


def usage_error(msg):
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


def _sci(x):
    digits, exp, _ = x.digits(10)
    if digits.startswith("-"):
        mant = digits[0] + digits[1] + "." + (digits[2:] or "0")
    else:
        mant = digits[0] + "." + (digits[1:] or "0")
    return mant, exp - 1


def _num(x):
    x = gmpy2.mpfr(x)
    if gmpy2.is_zero(x):
        return "0"
    mant, exp = _sci(x)
    return f"{mant}e{exp}"


def _cnum(z):
    z = gmpy2.mpc(z)
    return {"re": _num(z.real), "im": _num(z.imag)}


class Config:
    def __init__(self, args):
        env = os.environ.get("SYMEIS_PREC")
        prec = args.prec if args.prec is not None else (
            int(env) if env else 256
        )
        if args.n < 1 or prec < 64:
            raise SystemExit(usage_error("need --n >= 1 and --prec >= 64"))
        self.n = args.n
        self.prec = prec
        self.tol = gmpy2.mpfr(2) ** (-args.tol_exp)
        self.seed = args.seed
        self.ctx = MzvContext(prec)


def emit(payload, args):
    if args.pretty:
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_words(args, cfg):
    if args.action in ("shuffle", "stuffle") and args.b is None:
        return 2, {"error": f"{args.action} needs two arguments"}
    if args.action == "shuffle":
        res = shuffle(HElem.word(args.a), HElem.word(args.b))
    elif args.action == "stuffle":
        res = stuffle(
            HElem.from_index(_parse_index(args.a)),
            HElem.from_index(_parse_index(args.b)),
        )
    else:
        res = reg0(HElem.word(args.a))
    return 0, {"op": args.action, "result": res.to_json()}


def cmd_coproduct(args, cfg):
    return 0, {"word": args.word, "result": delta_g(args.word).to_json()}


def cmd_ihara(args, cfg):
    trunc = args.trunc
    A = random_grouplike(RationalRing(), trunc, cfg.seed)
    if args.action == "inverse":
        return 0, {"op": "inverse", "result": ihara_inverse(A).to_json()}
    B = random_grouplike(RationalRing(), trunc, cfg.seed + 1)
    if args.action == "compose":
        return 0, {"op": "compose", "result": ihara_compose(A, B).to_json()}
    bad = []
    for n in range(trunc + 1):
        for t in _words_of_length(n):
            w = "".join(t)
            lhs, rhs = goncharov_vs_ihara(A, B, w)
            if lhs != rhs:
                bad.append(w)
    return (1 if bad else 0), {
        "op": "check",
        "trunc": trunc,
        "seed": cfg.seed,
        "ok": not bad,
        "failures": bad,
    }


def cmd_qexp(args, cfg):
    index = _parse_index(args.index)
    if args.kind == "g":
        out = gtilde(index, cfg.n).to_json()
    elif args.kind == "gsh":
        out = gtilde_shuffle(index, cfg.n).to_json()
    elif args.kind == "mes":
        out = mes_numeric(index, cfg.n, cfg.ctx).to_json()
    else:
        out = smes(index, cfg.n, cfg.ctx).to_json()
    return 0, {"kind": args.kind, "index": list(index), "series": out}


def cmd_mzv(args, cfg):
    index = _parse_index(args.index)
    with cfg.ctx.working_context():
        if args.action == "eval":
            return 0, {"index": list(index), "value": _num(mzv(index, cfg.ctx))}
        return 0, {"index": list(index), "value": _cnum(mzv_sym(index, cfg.ctx))}


def cmd_lsh(args, cfg):
    if args.action == "basis":
        basis = lsh_basis(args.depth, args.weight)
        return 0, {
            "depth": args.depth,
            "weight": args.weight,
            "basis": [p.to_json() for p in basis],
        }
    dims = [lsh_dim(args.depth, w - args.depth) for w in
            range(args.depth, args.max_weight + 1)]
    return 0, {
        "depth": args.depth,
        "weights": list(range(args.depth, args.max_weight + 1)),
        "dims": dims,
    }


def cmd_spaces(args, cfg):
    if args.action == "basis":
        basis = special_space_basis(args.kind, args.weight)
        return 0, {
            "kind": args.kind,
            "weight": args.weight,
            "basis": [p.to_json() for p in basis],
        }
    source = "FShPol" if args.direction == "fsh_to_lsh" else "LSh"
    if source == "LSh":
        basis = lsh_basis(2, args.weight)
    else:
        basis = special_space_basis("FShPol", args.weight)
    pairs = [
        {"input": p.to_json(), "image": fsh_lsh_iso(p, args.direction).to_json()}
        for p in basis
    ]
    return 0, {"direction": args.direction, "weight": args.weight, "map": pairs}


def cmd_ranks(args, cfg):
    if args.action == "appendix":
        k = args.k
        if k < 5 or k % 2 == 0:
            return 2, {"error": "need odd k >= 5"}
        ok = appendix_reduction(k)
        _, S = matrices(k)
        return (0 if ok else 1), {
            "k": k,
            "selected_rank": S.rank(),
            "expected": k // 3,
            "reduction_ok": ok,
        }
    bad = []
    for j in range(args.max + 1):
        for a in range(args.max + 1):
            lhs, rhs = binom_identity(j, a)
            if lhs != rhs:
                bad.append([j, a])
    return (1 if bad else 0), {"max": args.max, "ok": not bad, "failures": bad}


def _series_from_spec(spec, cfg):
    """mes:1,3  smes:2,2  qdq:10  eis:4  delta"""
    if spec == "delta":
        return discriminant(cfg.n).to_complex()
    if ":" not in spec:
        raise SystemExit(usage_error(f"bad series spec {spec!r}"))
    kind, _, idx = spec.partition(":")
    index = _parse_index(idx)
    if kind == "mes":
        return mes_numeric(index, cfg.n, cfg.ctx).series
    if kind == "smes":
        return smes(index, cfg.n, cfg.ctx).series
    if kind == "qdq":
        (k,) = index
        return mes_numeric((k,), cfg.n, cfg.ctx).series.qdq()
    if kind == "eis":
        (k,) = index
        return eisenstein_tilde(k, cfg.n).to_complex()
    raise SystemExit(usage_error(f"bad series spec {spec!r}"))


def cmd_relations(args, cfg):
    k = args.weight
    if args.action == "upper-bound":
        return 0, {"weight": k, "upper_bound": symbolic_upper_bound(k)}
    if args.action == "rank":
        depths = (args.depth,) if args.depth else None
        if args.family == "mes":
            fam = SeriesFamily.mes_admissible(k, cfg.n, cfg.ctx)
        else:
            fam = SeriesFamily.smes_weight(k, cfg.n, cfg.ctx, depths=depths)
        return 0, {
            "weight": k,
            "family": args.family,
            "size": len(fam.labels),
            "rank": numeric_rank(fam),
        }
    if args.action == "find":
        fam = SeriesFamily(
            args.series, [_series_from_spec(s, cfg) for s in args.series],
            cfg.prec,
        )
        try:
            rep = integer_relation(fam)
        except ValueError as exc:
            return 1, {"ok": False, "error": str(exc)}
        out = rep.to_json()
        out["ok"] = True
        return 0, out
    if args.action == "cusp":
        indices = DELTA12_INDICES if k == 12 else None
        targets = None
        if k == 12:
            targets = [
                ("delta*67/64800",
                 discriminant(cfg.n).scale(Fraction(67, 64800))),
            ]
        reps = cusp_expression(k, cfg.n, cfg.ctx, indices=indices,
                               targets=targets)
        ok = all(r.residual < cfg.tol for r in reps)
        return (0 if ok else 1), {
            "weight": k,
            "ok": ok,
            "reports": [r.to_json() for r in reps],
        }
    report = theorem12_check(k, cfg.n, cfg.ctx)
    return (0 if report["ok"] else 1), report


def _verify_duality(cfg):
    words = ["".join(t) for n in range(6) for t in _words_of_length(n)]
    coproducts = {w: delta_g(w) for w in words}
    bad = 0
    for trial in range(50):
        A = random_grouplike(RationalRing(), 5, cfg.seed + 2 * trial)
        B = random_grouplike(RationalRing(), 5, cfg.seed + 2 * trial + 1)
        C = ihara_compose(A, B)
        for w in words:
            rhs = Fraction(0)
            for (u, v), c in coproducts[w].terms.items():
                rhs += c * A.coeff(u) * B.coeff(v)
            if pair(C, w) != rhs:
                bad += 1
    return bad == 0, {"pairs": 50, "max_weight": 5, "mismatches": bad}


def _verify_gamma_me(cfg):
    direct = gamma_me(cfg.ctx, 5, cfg.n)
    composed = gamma_me_composed(cfg.ctx, 5, cfg.n)
    dev = gmpy2.mpfr(0)
    with cfg.ctx.working_context():
        for n in range(6):
            for t in _words_of_length(n):
                w = "".join(t)
                d = (direct.coeff(w) - composed.coeff(w)).max_abs()
                dev = max(dev, d)
    return dev < cfg.tol, {"max_weight": 5, "deviation": _num(dev)}


def _verify_smes_ihara(cfg):
    dev = gmpy2.mpfr(0)
    for index in [(2,), (3,), (2, 2), (1, 3), (2, 3), (1, 1, 2)]:
        a = smes(index, cfg.n, cfg.ctx)
        b = smes_via_ihara(index, cfg.n, cfg.ctx)
        dev = max(dev, verify_identity(a, b))
    return dev < cfg.tol, {"deviation": _num(dev)}


def _verify_kaneko(cfg):
    dev = gmpy2.mpfr(0)
    for k in range(4, 11):
        dev = max(dev, kaneko_sum_deviation(k, cfg.n, cfg.ctx))
        if k % 2 == 0:
            dev = max(dev, kaneko_sum_deviation(k, cfg.n, cfg.ctx,
                                                even_only=True))
    return dev < cfg.tol, {"weights": "4..10", "deviation": _num(dev)}


def _verify_depth2(cfg):
    dev = gmpy2.mpfr(0)
    for k in range(3, 11):
        for r in range(1, k):
            s = k - r
            if (k % 2 == 0 and (r == 1 or (r >= 2 and s >= 2))) or (
                k % 2 == 1 and r > s
            ):
                dev = max(dev, depth2_closed_form_deviation(r, s, cfg.n,
                                                            cfg.ctx))
    return dev < cfg.tol, {"weights": "3..10", "deviation": _num(dev)}


def _verify_im_decomposition(cfg):
    dev = gmpy2.mpfr(0)
    for k in (5, 7, 9):
        for ell in range(1, (k - 1) // 2 + 1):
            dev = max(dev, im_decomposition_deviation(k, ell, cfg.n, cfg.ctx))
    return dev < cfg.tol, {"weights": [5, 7, 9], "deviation": _num(dev)}


def _verify_delta(cfg):
    target = discriminant(cfg.n).scale(Fraction(67, 64800))
    reps = cusp_expression(12, cfg.n, cfg.ctx, indices=DELTA12_INDICES,
                           targets=[("delta*67/64800", target)])
    ok = reps[0].residual < cfg.tol
    return ok, reps[0].to_json()


VERIFIERS = {
    "duality": _verify_duality,
    "gamma-me": _verify_gamma_me,
    "smes-ihara": _verify_smes_ihara,
    "kaneko": _verify_kaneko,
    "depth2-closed-form": _verify_depth2,
    "im-decomposition": _verify_im_decomposition,
    "delta": _verify_delta,
}


def cmd_verify(args, cfg):
    ok, detail = VERIFIERS[args.name](cfg)
    return (0 if ok else 1), {"name": args.name, "ok": ok, "detail": detail}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=60)
    common.add_argument("--prec", type=int, default=None)
    common.add_argument("--tol-exp", type=int, default=128, dest="tol_exp")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--pretty", action="store_true")

    p = argparse.ArgumentParser(prog="symeis")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("words", parents=[common])
    w.add_argument("action", choices=["shuffle", "stuffle", "reg0"])
    w.add_argument("a")
    w.add_argument("b", nargs="?", default=None)
    w.set_defaults(func=cmd_words)

    c = sub.add_parser("coproduct", parents=[common])
    c.add_argument("word")
    c.set_defaults(func=cmd_coproduct)

    i = sub.add_parser("ihara", parents=[common])
    i.add_argument("action", choices=["compose", "inverse", "check"])
    i.add_argument("--trunc", type=int, default=5)
    i.set_defaults(func=cmd_ihara)

    q = sub.add_parser("qexp", parents=[common])
    q.add_argument("kind", choices=["g", "gsh", "mes", "smes"])
    q.add_argument("--index", required=True)
    q.set_defaults(func=cmd_qexp)

    z = sub.add_parser("mzv", parents=[common])
    z.add_argument("action", choices=["eval", "sym"])
    z.add_argument("--index", required=True)
    z.set_defaults(func=cmd_mzv)

    l = sub.add_parser("lsh", parents=[common])
    l.add_argument("action", choices=["basis", "dims"])
    l.add_argument("--depth", type=int, required=True)
    l.add_argument("--weight", type=int, default=0)
    l.add_argument("--max-weight", type=int, default=16, dest="max_weight")
    l.set_defaults(func=cmd_lsh)

    s = sub.add_parser("spaces", parents=[common])
    s.add_argument("action", choices=["basis", "iso"])
    s.add_argument("--kind", choices=["W", "FShPol", "OddPeriod"],
                   default="W")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--direction", choices=["fsh_to_lsh", "lsh_to_fsh"],
                   default="fsh_to_lsh")
    s.set_defaults(func=cmd_spaces)

    r = sub.add_parser("ranks", parents=[common])
    r.add_argument("action", choices=["appendix", "binom"])
    r.add_argument("--k", type=int, default=11)
    r.add_argument("--max", type=int, default=40)
    r.set_defaults(func=cmd_ranks)

    rel = sub.add_parser("relations", parents=[common])
    rel.add_argument(
        "action",
        choices=["rank", "upper-bound", "find", "cusp", "theorem12"],
    )
    rel.add_argument("--weight", type=int, default=12)
    rel.add_argument("--depth", type=int, default=None)
    rel.add_argument("--family", choices=["smes", "mes"], default="smes")
    rel.add_argument("series", nargs="*")
    rel.set_defaults(func=cmd_relations)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("name", choices=sorted(VERIFIERS))
    v.set_defaults(func=cmd_verify)
    return p


def dispatch(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = Config(args)
        gmpy2.get_context().precision = cfg.prec + 48
        code, payload = args.func(args, cfg)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ValueError, TypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if code == 2:
        print(f"usage error: {payload.get('error', 'bad arguments')}",
              file=sys.stderr)
        return 2
    emit(payload, args)
    return code


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
