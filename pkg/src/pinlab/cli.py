"""Command-line front end.

Stateless per invocation. Defaults come from, in increasing priority: the
built-ins, a config file ([pinlab] section of --config, $PINLAB_CONFIG or
./pinlab.ini), the PINLAB_SIGNATURE environment variable, explicit flags.

Exit status: 0 on success, 2 on a usage error, 1 when a computation fails.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

from . import handlers as h
from .clifford_builder import BASE_KINDS, base_rep
from .expr import ExprSyntaxError

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise h.UsageError(message)


def load_config(path: str | None) -> dict[str, str]:
    candidates = [path] if path else [os.environ.get("PINLAB_CONFIG"), "pinlab.ini"]
    for c in candidates:
        if not c:
            continue
        p = Path(c)
        if not p.is_file():
            if path:
                raise h.UsageError(f"config file {path} not found")
            continue
        cp = configparser.ConfigParser()
        try:
            cp.read(p, encoding="utf-8")
        except configparser.Error as e:
            raise h.UsageError(f"bad config file {p}: {e}")
        return dict(cp["pinlab"]) if cp.has_section("pinlab") else {}
    return {}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pinlab", description="Pin groups, gamma matrices and discrete symmetries")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--config", help="config file with a [pinlab] section")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rep_args(p, sig=True):
        if sig:
            p.add_argument("--sig", help="signature t,s (default 1,3)")
        p.add_argument("--rep", dest="kind", help="Chiral13, Dirac13, Majorana31 or HatFrom13")

    p = sub.add_parser("construct", help="build and verify a gamma representation")
    rep_args(p)
    p.add_argument("--extend", choices=["AddTime", "AddSpace"], help="extend to odd dimension")
    p.add_argument("--branch", choices=["PlusK", "MinusK"], default="PlusK")

    p = sub.add_parser("classify", help="matrix-algebra class of C(m,n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("cover", help="Pin-group covers")
    rep_args(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--named", action="store_true", help="named Lorentz covers and their squares (default)")
    g.add_argument("--table", action="store_true", help="the eight double-cover rows")
    g.add_argument("--parity", choices=["P1", "P3"], help="classify the cover with this parity")
    g.add_argument("--solve", type=int, nargs="+", metavar="D", help="cover a diagonal Lorentz matrix")

    p = sub.add_parser("conj", help="charge, hermitian and antiunitary conjugations")
    rep_args(p)
    p.add_argument("--what", choices=list(h.CONJ_WHAT), default="all")
    p.add_argument("--sign", choices=["Plus", "Minus"], help="sign convention for C")

    p = sub.add_parser("trace", help="trace of a product of gamma matrices")
    rep_args(p)
    p.add_argument("labels", type=int, nargs="*", help="generator labels")

    p = sub.add_parser("spinsum", help="plane waves and spin sums")
    rep_args(p)
    p.add_argument("--mass", default="1")
    p.add_argument("--p", nargs=3, default=["3/4", "0", "0"], metavar=("PX", "PY", "PZ"),
                   help="spatial momentum, rationals allowed")
    p.add_argument("--which", choices=["U", "V"], default="U")

    p = sub.add_parser("sigma", help="Sigma0 decay trace, standard versus hatted")
    p.add_argument("--hypothesis", choices=["Plus", "Minus"], default="Plus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=1)

    p = sub.add_parser("phases", help="intrinsic-parity ledgers and selection rules")
    p.add_argument("mode", choices=["pion", "positronium", "ledger", "reaction"])
    p.add_argument("--file", help="JSON document for ledger or reaction mode ('-' for stdin)")
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--eta-n", default="1", help="nucleon parity phase, e.g. 1 or -i")
    p.add_argument("--flag", action="append", default=[],
                   choices=["fermion_pair", "charge_conj_verified", "majorana"])

    p = sub.add_parser("klein", help="vacuum currents on the Klein bottle")
    p.add_argument("--pin", default=None, help="13 or 31")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--x3", type=float, default=0.3)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", help="write the table here instead of stdout")

    p = sub.add_parser("eval", help="evaluate a gamma expression")
    rep_args(p)
    p.add_argument("expression")
    p.add_argument("--float", action="store_true", help="floating-point evaluation")

    p = sub.add_parser("tables", help="emit golden tables")
    p.add_argument("name", nargs="?")
    p.add_argument("--out", help="write <name>.txt files into this directory")
    return ap


def _read_doc(path: str | None):
    if path is None:
        return None
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise h.UsageError(f"cannot read JSON document: {e}")


def dispatch(args, cfg: dict[str, str]) -> h.Result:
    sig = getattr(args, "sig", None) or os.environ.get("PINLAB_SIGNATURE") or cfg.get("signature") or "1,3"
    kind = getattr(args, "kind", None) or cfg.get("representation") or None
    if kind and getattr(args, "sig", None) is None and not os.environ.get("PINLAB_SIGNATURE") \
            and "signature" not in cfg:
        # a representation on its own fixes the signature
        if kind in BASE_KINDS:
            s = base_rep(kind).signature
            sig = f"{s.t},{s.s}"
    c = args.command
    if c == "construct":
        return h.construct(sig, kind, args.extend, args.branch)
    if c == "classify":
        return h.classify(args.m, args.n)
    if c == "cover":
        return h.cover(sig, kind, args.named, args.table, args.parity, args.solve)
    if c == "conj":
        return h.conj(sig, kind, args.what, args.sign)
    if c == "trace":
        return h.trace(sig, kind, args.labels)
    if c == "spinsum":
        return h.spinsum(sig, kind, args.mass, args.p, args.which)
    if c == "sigma":
        return h.sigma(args.hypothesis, args.seed, args.points)
    if c == "phases":
        return h.phases(args.mode, _read_doc(args.file), args.l, args.s, args.eta_n, args.flag)
    if c == "klein":
        def pick(name, conv, default):
            v = getattr(args, name)
            if v is not None:
                return v
            key = "klein_" + name.lower()
            try:
                return conv(cfg[key]) if key in cfg else default
            except ValueError:
                raise h.UsageError(f"bad config value for {key}")
        return h.klein(pick("pin", str, "13"), pick("a", float, 1.0), pick("b", float, 1.0), args.x3,
                       pick("N", int, 64), pick("tolerance", float, 1e-8))
    if c == "eval":
        return h.evaluate(args.expression, sig, kind, not args.float and cfg.get("exact", "true") != "false")
    if c == "tables":
        return h.tables(args.name)
    raise h.UsageError(f"unknown command {c}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config)
        result = dispatch(args, cfg)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (h.UsageError, ExprSyntaxError) as e:
        print(f"pinlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        print(f"pinlab: computation failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_COMPUTE

    as_json = args.json or cfg.get("output") == "json"
    if args.command == "klein":
        fmt = args.format or ("json" if as_json else cfg.get("klein_format", "csv"))
        out = json.dumps(result.data, indent=2) if fmt == "json" else result.text
    elif args.command == "tables" and args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in result.data.items():
            (d / f"{name}.txt").write_text(text, encoding="utf-8")
        out = result.render(as_json) if as_json else "\n".join(str(d / f"{n}.txt") for n in result.data)
    else:
        out = result.render(as_json)
    if args.command == "klein" and args.out:
        Path(args.out).write_text(out if out.endswith("\n") else out + "\n", encoding="utf-8")
    else:
        print(out)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
