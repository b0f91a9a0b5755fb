"""Command-line front end.

Exit status is 0 for a computed result or an affirmative verdict, 1 for a
negative verdict and 2 for malformed input.  ``--json`` prints a single
object with the fields ``command``, ``inputs``, ``result``,
``certificates`` and ``verified_to_order``; every value in it is the
canonical text of the underlying object and parses back to it.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from . import dop, glinf, highest_weight as hwm, parabolic
from .exact import InsufficientDataError, detect_recurrence, format_scalar, is_psd
from .parsing import ParseError, parse_number, parse_operator, parse_poly, parse_quasipoly

__all__ = ["main", "run", "Outcome"]


@dataclass
class Outcome:
    text: str
    result: Any
    status: int = 0
    certificates: dict = field(default_factory=dict)
    verified_to_order: int | None = None


class InputError(ValueError):
    pass


def _fmt_matrix(rows) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in rows]


def _matrix_text(rows) -> str:
    return "\n".join("[" + ", ".join(r) + "]" for r in _fmt_matrix(rows))


def _hw(args) -> hwm.HighestWeight:
    return hwm.HighestWeight(args.n, parse_number(args.c), parse_quasipoly(args.phi))


def _int_list(text: str) -> list:
    return [parse_number(p) for p in text.split(",") if p.strip()]


def _label_map(text: str) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"expected index:value, got {part!r}")
        i, v = part.split(":", 1)
        out[int(i)] = parse_number(v)
    return out


def parse_component(text: str):
    """``"s=1/2 c=-1 n=0:-2,1:1"`` or with ``lambda=...`` in place of ``n``."""
    fields = {}
    for tok in text.split():
        if "=" not in tok:
            raise InputError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    unknown = set(fields) - {"s", "c", "n", "lambda"}
    if unknown:
        raise InputError(f"unknown component keys {sorted(unknown)}")
    s = parse_number(fields.get("s", "0"))
    c = parse_number(fields.get("c", "0"))
    if "lambda" in fields:
        if "n" in fields:
            raise InputError("give either n= or lambda=, not both")
        return s, glinf.GlWeight(_label_map(fields["lambda"]), c)
    return s, glinf.GlWeight.from_n_labels(_label_map(fields.get("n", "")), c)


def _verdict(flag: bool, yes: str = "true", no: str = "false") -> tuple[str, int]:
    return (yes, 0) if flag else (no, 1)


# handlers -----------------------------------------------------------------

def cmd_bracket(args) -> Outcome:
    r = dop.bracket(parse_operator(args.a), parse_operator(args.b))
    return Outcome(r.format(), r.format())


def cmd_cocycle(args) -> Outcome:
    v = format_scalar(dop.cocycle(parse_operator(args.a), parse_operator(args.b)))
    return Outcome(v, v)


def cmd_member(args) -> Outcome:
    text, status = _verdict(dop.member_Wn(parse_operator(args.a), args.n))
    return Outcome(text, text == "true", status)


def cmd_charpoly(args) -> Outcome:
    b = hwm.char_poly(_hw(args)).format("w")
    return Outcome(b, b)


def cmd_labels(args) -> Outcome:
    labels = hwm.labels_from_phi(_hw(args), args.K).deltas
    vals = [format_scalar(v) for v in labels]
    return Outcome(", ".join(vals), vals, verified_to_order=args.K)


def cmd_quasifinite(args) -> Outcome:
    if args.labels is not None:
        labels = hwm.LabelSeq(args.n, tuple(_int_list(args.labels)))
    else:
        labels = hwm.labels_from_phi(_hw(args), args.K)
    v = hwm.quasifinite_check(labels, args.deg)
    if v.quasifinite:
        cert = v.certificate.format("w")
        return Outcome(f"quasifinite: certificate {cert}", True, 0,
                       {"annihilator": cert}, v.verified_to_order)
    return Outcome(f"no certificate of degree <= {args.deg}", False, 1, {},
                   v.verified_to_order)


def cmd_exponents(args) -> Outcome:
    data = hwm.exponents(_hw(args))
    rows = [[format_scalar(r), p.format("x")] for r, p in data]
    lines = [f"e({r}): {p}" for r, p in rows]
    lines.append(f"central charge: {format_scalar(data.central_charge)}")
    return Outcome("\n".join(lines), rows,
                   certificates={"central_charge": format_scalar(data.central_charge)})


def cmd_exponent_roots(args) -> Outcome:
    rep = hwm.exponent_root_check(_hw(args))
    rows = [[format_scalar(r), st] for r, st in rep.entries]
    lines = [f"e({r}): {st}" for r, st in rows]
    lines.append("ok" if rep.ok else "violated")
    return Outcome("\n".join(lines), rows, 0 if rep.ok else 1,
                   {"root_polynomial": rep.root_poly.format("w")})


def cmd_unitary(args) -> Outcome:
    if args.exponents is not None:
        data = []
        for part in args.exponents.split(","):
            r, p = part.split(":", 1)
            data.append((parse_number(r), parse_poly(p, "x")))
        v = hwm.classify_exponents(data)
    else:
        v = hwm.unitary_classify(_hw(args))
    text = "unitary" if v.unitary else "not unitary"
    detail = f"{v.reason}" + (f": {v.detail}" if v.detail else "")
    return Outcome(f"{text} ({detail})", v.unitary, 0 if v.unitary else 1,
                   {"reason": v.reason, "detail": v.detail})


def cmd_gram(args) -> Outcome:
    G = hwm.gram_level1(_hw(args), args.deg)
    psd = is_psd(G)
    text = _matrix_text(G) + f"\npsd: {'true' if psd else 'false'}"
    return Outcome(text, _fmt_matrix(G), certificates={"psd": psd})


def cmd_singular(args) -> Outcome:
    b = parse_poly(args.b)
    text, status = _verdict(hwm.singular_check(_hw(args), b, args.deg))
    return Outcome(text, status == 0, status, verified_to_order=args.deg)


def cmd_s_op(args) -> Outcome:
    if args.n != 1:
        raise InputError("s-op needs --n 1")
    S = hwm.S_operator(_hw(args)).format("w")
    return Outcome(S, S)


def cmd_embed(args) -> Outcome:
    a, s = parse_operator(args.a), parse_number(args.s)
    w = glinf.phi_s(a, s, args.N) if args.plain else glinf.hat_phi_s(a, s, args.N, args.K)
    return Outcome(w.format(), _window_json(w))


def _window_json(w) -> dict:
    return {
        "N": w.N,
        "margin": w.margin,
        "entries": [[i, j, format_scalar(v)] for (i, j), v in sorted(w.entries.items())],
        "central": format_scalar(w.central),
    }


def cmd_embed_rm(args) -> Outcome:
    r = glinf.phi_s_m(parse_operator(args.a), parse_number(args.s), args.m, args.N)
    return Outcome(r.format(), [_window_json(w) for w in r.layers])


def cmd_project(args) -> Outcome:
    s = parse_number(args.s)
    if not isinstance(s, int):
        raise InputError("the projection needs an integer --s")
    w = glinf.p_s_project(glinf.phi_s(parse_operator(args.a), s, args.N), s)
    return Outcome(w.format(), _window_json(w))


def cmd_glweight_to_phi(args) -> Outcome:
    comps = [parse_component(t) for t in args.components]
    hw = glinf.glweight_to_hw(comps)
    total = (hw.phi + hw.c).format()
    text = f"phi = {hw.phi.format()}\nc = {format_scalar(hw.c)}\nphi + c = {total}"
    return Outcome(text, {"phi": hw.phi.format(), "c": format_scalar(hw.c),
                          "phi_plus_c": total})


def cmd_gl_unitary(args) -> Outcome:
    s, gw = parse_component(args.component)
    v = glinf.gl_unitary_check(gw, s)
    text = "unitary" if v.unitary else "not unitary"
    detail = v.reason + (f": {v.detail}" if v.detail else "")
    return Outcome(f"{text} ({detail})", v.unitary, 0 if v.unitary else 1,
                   {"reason": v.reason, "detail": v.detail})


def _span_outcome(span, extra: dict | None = None) -> Outcome:
    basis = [p.format("w") for p in span.basis]
    text = span.format() + f"\ndim {span.dim}, codim {parabolic.codim(span)}"
    certs = {"dim": span.dim, "codim": parabolic.codim(span)}
    certs.update(extra or {})
    return Outcome(text, basis, certificates=certs, verified_to_order=span.ambient_deg)


def cmd_aspan(args) -> Outcome:
    return _span_outcome(parabolic.A_span(args.n, args.k, args.deg))


def cmd_parabolic(args) -> Outcome:
    if args.b is not None:
        return _span_outcome(parabolic.min_parabolic_level1(args.n, parse_poly(args.b), args.deg))
    if args.check:
        n = args.n
        rep = parabolic.closure_check(
            n, lambda k, d: parabolic.example_parabolic(n, k, d), args.k, args.deg)
        text = f"closure {'holds' if rep.ok else 'fails'} ({rep.checked} brackets checked)"
        return Outcome(text, rep.ok, 0 if rep.ok else 1,
                       {"checked": rep.checked, "failures": len(rep.failures)}, args.deg)
    return _span_outcome(parabolic.example_parabolic(args.n, args.k, args.deg))


def cmd_detect(args) -> Outcome:
    seq = _int_list(args.seq)
    cert = detect_recurrence(seq, args.deg)
    if cert is None:
        return Outcome(f"none (degree <= {args.deg}, verified to order {len(seq) - 1})",
                       None, 1, {}, len(seq) - 1)
    a = cert.annihilator.format("w")
    return Outcome(a, a, 0, {"annihilator": a}, cert.verified_to_order)


# argument parsing -----------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=1, help="order n (default 1)")
    p.add_argument("--c", default="0", help="central charge")
    p.add_argument("--phi", default="0", help="quasipolynomial, e.g. 'e(2) - 1'")
    p.add_argument("--K", type=int, default=16, help="series order (default 16)")
    p.add_argument("--deg", type=int, default=8, help="degree bound (default 8)")
    p.add_argument("--s", default="0", help="twist")
    p.add_argument("--N", type=int, default=12, help="window radius (default 12)")
    p.add_argument("--m", type=int, default=1, help="truncation order of R_m")
    p.add_argument("--json", action="store_true", help="print a JSON document")
    return p


COMMANDS: dict[str, tuple[Callable, str, Callable | None]] = {}


def _cmd(name: str, fn: Callable, helptext: str, extra: Callable | None = None):
    COMMANDS[name] = (fn, helptext, extra)


def _two_ops(p):
    p.add_argument("a")
    p.add_argument("b")


def _one_op(p):
    p.add_argument("a")


_cmd("bracket", cmd_bracket, "bracket of two operators", _two_ops)
_cmd("cocycle", cmd_cocycle, "central term of the bracket", _two_ops)
_cmd("member", cmd_member, "membership in the order-n subalgebra", _one_op)
_cmd("charpoly", cmd_charpoly, "characteristic polynomial of a highest weight")
_cmd("labels", cmd_labels, "labels Delta_0..Delta_K")
_cmd("quasifinite", cmd_quasifinite, "bounded quasifiniteness certificate",
     lambda p: p.add_argument("--labels", help="comma-separated labels instead of --phi"))
_cmd("exponents", cmd_exponents, "exponents and multiplicities of phi + c")
_cmd("cor49", cmd_exponent_roots, "check exponents against the root polynomial")
_cmd("unitary", cmd_unitary, "unitarity classification (n = 1)",
     lambda p: p.add_argument("--exponents", help="r:p(x),... instead of --phi"))
_cmd("gram", cmd_gram, "level-one Gram matrix of size --deg")
_cmd("singular", cmd_singular, "is t^-1 b(D) v singular (g degree --deg)",
     lambda p: p.add_argument("--b", required=True, help="polynomial in w"))
_cmd("s-op", cmd_s_op, "raising operator on level one (n = 1)")
_cmd("embed", cmd_embed, "image in a gl_infinity window",
     lambda p: (_one_op(p), p.add_argument("--plain", action="store_true",
                                          help="skip the central correction")))
_cmd("embed-rm", cmd_embed_rm, "image over C[u]/(u^(m+1))", _one_op)
_cmd("project", cmd_project, "image followed by the integer-twist projection", _one_op)
_cmd("glweight-to-phi", cmd_glweight_to_phi, "gl weights to a highest weight",
     lambda p: p.add_argument("components", nargs="*",
                              help="'s=1/2 c=-1 n=0:-2,1:1' per twist"))
_cmd("gl-unitary", cmd_gl_unitary, "unitarity of a gl weight",
     lambda p: p.add_argument("component", help="'s=1/2 c=-1 n=0:-2,1:1'"))


def _kflag(p):
    p.add_argument("--k", type=int, default=1, help="depth k (default 1)")


def _parabolic_flags(p):
    _kflag(p)
    p.add_argument("--b", help="generator polynomial in w")
    p.add_argument("--check", action="store_true",
                   help="check subalgebra closure for depths <= --k")


_cmd("aspan", cmd_aspan, "the span A_{n,k} up to degree --deg", _kflag)
_cmd("parabolic", cmd_parabolic, "negative parabolic pieces", _parabolic_flags)
_cmd("detect", cmd_detect, "minimal annihilator of a sequence",
     lambda p: p.add_argument("--seq", required=True, help="comma-separated values"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="winfinity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    common = _common()
    for name, (_, helptext, extra) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helptext)
        if extra:
            extra(p)
    return parser


def _inputs(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("command", "json")}


def run(argv: list[str]) -> tuple[int, str, str]:
    """Return ``(status, stdout, stderr)``; argparse usage errors still print directly."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), "", ""
    fn = COMMANDS[args.command][0]
    try:
        out = fn(args)
    except (ParseError, InputError, InsufficientDataError, ValueError,
            ZeroDivisionError) as exc:
        return 2, "", f"winfinity {args.command}: error: {exc}\n"
    if args.json:
        doc = {
            "command": args.command,
            "inputs": _inputs(args),
            "result": out.result,
            "certificates": out.certificates,
            "verified_to_order": out.verified_to_order,
        }
        return out.status, json.dumps(doc, sort_keys=True) + "\n", ""
    return out.status, out.text + "\n", ""


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
