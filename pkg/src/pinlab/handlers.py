"""Operations shared by the command line and the HTTP service.

Each handler takes plain values and returns a Result holding a JSON-ready
dict and a human-readable text rendering.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import clifford_builder as cb
from . import conjugation_suite as cs
from . import klein_currents as kc
from . import pin_cover as pc
from . import qft_engine as qe
from . import tables as tb
from .exact_core import GaussScalar
from .expr import SessionConfig, eval_expr, parse_expr, to_text


class UsageError(ValueError):
    """Bad or inconsistent user input, as opposed to a failed computation."""


@dataclass
class Result:
    data: Any
    text: str

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.data, indent=2, ensure_ascii=False, sort_keys=False)
        return self.text.rstrip("\n")


def parse_signature(sig: str) -> tuple[int, int]:
    try:
        t, s = (int(x) for x in str(sig).replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"signature must look like '1,3', got {sig!r}")
    if t < 0 or s < 0 or t + s < 1:
        raise UsageError("signature needs t, s >= 0 and t + s >= 1")
    return t, s


def rep_for(sig: str, kind: str | None = None) -> cb.GammaRep:
    """Dirac13 for (1,3), HatFrom13 for (3,1), a built representation otherwise."""
    t, s = parse_signature(sig)
    if kind is None:
        kind = {(1, 3): "Dirac13", (3, 1): "HatFrom13"}.get((t, s))
    if kind is None:
        return cb.build_rep(t, s)
    if kind not in cb.BASE_KINDS:
        raise UsageError(f"unknown representation {kind!r}; choose from {', '.join(cb.BASE_KINDS)}")
    rep = cb.base_rep(kind)
    if (rep.signature.t, rep.signature.s) != (t, s):
        raise UsageError(f"representation {kind} has signature {rep.signature}, not ({t},{s})")
    return rep


def _four_d(rep: cb.GammaRep) -> None:
    if (rep.signature.t, rep.signature.s) not in ((1, 3), (3, 1)):
        raise UsageError("this operation needs signature 1,3 or 3,1")


# builder


def construct(sig: str | None = None, kind: str | None = None, extend: str | None = None,
              branch: str = "PlusK") -> Result:
    if sig is None and kind is None:
        raise UsageError("give --sig or --rep")
    if kind is not None and sig is None:
        if kind not in cb.BASE_KINDS:
            raise UsageError(f"unknown representation {kind!r}")
        rep = cb.base_rep(kind)
    else:
        rep = rep_for(sig, kind)
    if extend:
        try:
            rep = cb.extend_to_odd(rep, extend, branch)
        except ValueError as e:
            raise UsageError(str(e))
    data = rep.to_json()
    census = cb.reality_census(rep)
    data["clifford"] = cb.verify_clifford(rep)
    data["reality_census"] = {"real": census[0], "imaginary": census[1], "mixed": census[2]}
    data["irreducible"] = cb.is_irreducible(rep)
    lines = [f"{rep.kind} representation of C{rep.signature} ({rep.signature.convention.value}), dim {rep.dim}",
             f"clifford relations: {'ok' if data['clifford'] else 'FAILED'}",
             f"reality census: {census[0]} real, {census[1]} imaginary, {census[2]} mixed",
             f"irreducible: {data['irreducible']}"]
    for i, g in enumerate(rep.matrices):
        lines.append(f"{rep.symbol}{rep.signature.label(i)} =")
        lines.append(g.pretty())
    return Result(data, "\n".join(lines))


def classify(m: int, n: int) -> Result:
    if m < 0 or n < 0 or m + n < 1:
        raise UsageError("need m, n >= 0 and m + n >= 1")
    c = cb.classify(m, n)
    data = {"m": m, "n": n, "label": c.label, "ascii": c.ascii, "field": c.field_, "k": c.k, "split": c.split}
    return Result(data, c.label)


# covers


def cover(sig: str = "1,3", kind: str | None = None, named: bool = False, table: bool = False,
          parity: str | None = None, solve: Sequence[int] | None = None) -> Result:
    if table:
        rows = [cc.to_json() for cc in pc.double_cover_table()]
        return Result({"double_covers": rows}, tb.double_covers_text())
    rep = rep_for(sig, kind)
    if parity:
        _four_d(rep)
        if parity not in ("P1", "P3"):
            raise UsageError("parity must be P1 or P3")
        cc = pc.cover_group_classify(rep, parity)
        text = (f"a={cc.a:+d} b={cc.b:+d} c={cc.c:+d} {'commute' if cc.commute == 1 else 'anticommute'} "
                f"{cc.group_name} cliffordian={'yes' if cc.cliffordian else 'no'}")
        return Result(cc.to_json(), text)
    if solve is not None:
        if len(solve) != rep.d:
            raise UsageError(f"--solve needs {rep.d} diagonal entries")
        L = pc.LorentzMatrix.diag(list(solve), rep.signature)
        if not L.is_orthogonal():
            raise UsageError("diagonal entries must be +-1")
        sols = pc.solve_cover(rep, L)
        data = {"lorentz_diag": list(solve), "covers": [e.to_json() for e in sols]}
        text = ", ".join(e.text for e in sols) if sols else "no cover"
        return Result(data, text)
    _four_d(rep)
    entries = pc.named_elements(rep)
    data = {"signature": str(rep.signature), "representation": rep.kind,
            "named": {k: v.to_json() for k, v in entries.items()}}
    lines = [f"{rep.kind} {rep.signature}"]
    for k, v in entries.items():
        lines.append(f"  Lambda_{k} = +-{rep.monomial_text(v.solutions.plus.indices)}   square {v.square.short()}")
    return Result(data, "\n".join(lines))


# conjugations


CONJ_WHAT = ("C", "H+", "H-", "adjoint", "majorana", "AT", "kramers", "cpt", "parity", "all")


def conj(sig: str = "1,3", kind: str | None = None, what: str = "all", sign: str | None = None) -> Result:
    if what not in CONJ_WHAT:
        raise UsageError(f"unknown item {what!r}; choose from {', '.join(CONJ_WHAT)}")
    rep = rep_for(sig, kind)
    items = [w for w in CONJ_WHAT if w != "all"] if what == "all" else [what]
    if (rep.signature.t, rep.signature.s) not in ((1, 3), (3, 1)):
        if what == "all":
            items = ["C", "H+", "H-"]
        elif what not in ("C", "H+", "H-"):
            raise UsageError(f"{what} needs signature 1,3 or 3,1")
    data: dict[str, Any] = {"representation": rep.kind, "signature": str(rep.signature)}
    lines = [f"{rep.kind} {rep.signature}"]
    for w in items:
        if w == "C":
            r = cs.charge_conj(rep, sign) if rep.d % 2 == 0 or sign else None
            if r is None:
                rs = [cs.charge_conj(rep, s) for s in ("Plus", "Minus")]
                data["C"] = [x.to_json() for x in rs]
                lines.append("  C: " + ", ".join(f"{x.sign_convention.value}={'exists ' + x.text if x.exists else 'none'}"
                                                  for x in rs))
            else:
                data["C"] = r.to_json()
                lines.append(f"  C ({r.sign_convention.value}): {r.text if r.exists else 'none'}"
                             + (f", CC* = {r.cc_star.short()}" if r.exists else ""))
        elif w in ("H+", "H-"):
            r = cs.hermitian_similarity(rep, "Plus" if w == "H+" else "Minus")
            data[w] = r.to_json()
            lines.append(f"  {w}: {r.text if r.exists else 'none'}")
        elif w == "adjoint":
            t = cs.adjoint_sign_table(rep)
            data["adjoint"] = t
            lines.append("  a(Lambda): " + " ".join(f"{k}:{v:+d}" for k, v in t.items()))
        elif w == "majorana":
            r = cs.majorana_parity_test(rep)
            data["majorana"] = r.to_json()
            lines.append(f"  Majorana with parity: {r.verdict.value}")
        elif w == "AT":
            r = cs.antiunitary_T(rep)
            data["AT"] = r.to_json()
            lines.append(f"  A_T = {r.text}" + (f"  (Peskin-Schroeder choice {r.peskin_schroeder})"
                                                 if r.peskin_schroeder else ""))
        elif w == "kramers":
            v = cs.kramers_check(rep)
            lt = pc.named_elements(rep)["T"].square
            data["kramers"] = {"A_T_A_T_star": v.short(), "Lambda_T_squared": lt.short()}
            lines.append(f"  A_T A_T* = {v.short()}, Lambda_T^2 = {lt.short()}")
        elif w == "cpt":
            r = cs.cpt_composite(rep)
            data["cpt"] = r.to_json()
            lines.append(f"  CPT composite = {r.scalar.short()} x all-generator product"
                         f" (Lorentz image -1, det {r.pt_image_det.short()})")
        elif w == "parity":
            ev = cs.parity_eigenvalues(rep)
            data["parity_eigenvalues"] = ev
            lines.append("  parity eigenvalues: " + ", ".join(f"{k} (x{v})" for k, v in ev.items()))
    return Result(data, "\n".join(lines))


# traces and spin sums


def trace(sig: str = "1,3", kind: str | None = None, labels: Sequence[int] = ()) -> Result:
    rep = rep_for(sig, kind)
    try:
        v = qe.trace_product(rep, list(labels))
    except IndexError as e:
        raise UsageError(str(e))
    data: dict[str, Any] = {"labels": list(labels), "trace": v.canonical()}
    text = f"tr({' '.join(rep.symbol + str(l) for l in labels)}) = {v.short()}"
    if len(labels) % 2 == 0:
        data["hat_over_standard"] = qe.trace_sign_law(len(labels))
    return Result(data, text)


def _momentum(mass, p: Sequence) -> qe.FourMomentum:
    try:
        return qe.FourMomentum.on_shell(Fraction(mass), *(Fraction(x) for x in p))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e))


def spinsum(sig: str = "1,3", kind: str | None = None, mass="1", p: Sequence = ("3/4", "0", "0"),
            which: str = "U") -> Result:
    rep = rep_for(sig, kind)
    _four_d(rep)
    mom = _momentum(mass, p)
    if which not in ("U", "V"):
        raise UsageError("which must be U or V")
    pw = qe.plane_wave_solutions(rep, mom)
    ss = qe.spin_sum(rep, mom, which)
    expected = qe.expected_spin_sum(rep, mom, which)
    data = {"momentum": mom.to_json(), "which": which, "spin_sum": ss.to_json(), "matches_expected": ss == expected,
            "normalized": pw.normalized, "plane_waves": pw.to_json()}
    form = ("pslash" if not rep.hatted else "-i pslash") + (" + m" if which == "U" else " - m")
    text = f"sum over spins ({which}) at E={mom.E} equals {form}: {ss == expected}\n{ss.pretty()}"
    return Result(data, text)


def sigma(hypothesis: str = "Plus", seed: int = 0, points: int = 1) -> Result:
    if hypothesis not in ("Plus", "Minus"):
        raise UsageError("hypothesis must be Plus or Minus")
    if points < 1:
        raise UsageError("points must be positive")
    rng = random.Random(seed)
    rows = []
    for _ in range(points):
        kin = qe.sigma_kinematics_sample(rng)
        std = qe.sigma_decay_trace("Standard", hypothesis, kin)
        hat = qe.sigma_decay_trace("Hat", hypothesis, kin)
        ratio = std / hat
        rows.append({"standard": std.canonical(), "hat": hat.canonical(), "ratio": ratio.canonical()})
    text = "\n".join(f"{i}: standard/hat = {GaussScalar.parse(r['ratio']).short()}" for i, r in enumerate(rows))
    return Result({"hypothesis": hypothesis, "seed": seed, "points": rows}, text)


# phases


def phases(mode: str, document: dict | None = None, l: int = 0, s: int = 0, eta_n: str = "1",
           flags: Sequence[str] = ()) -> Result:
    if mode == "pion":
        eta = qe.pion_capture(GaussScalar.parse(eta_n))
        states = qe.pion_final_state(1)
        data = {"eta_n": GaussScalar.parse(eta_n).short(), "eta_pi": eta.short(),
                "nn_states_j1": [list(x) for x in states]}
        return Result(data, f"eta_pi = {eta.short()} (nn final state l,s = {states})")
    if mode == "positronium":
        r = qe.positronium_phases(l, s)
        return Result(r.to_json(), f"l={l} s={s}: P={r.p_parity:+d} C={r.c_parity:+d} -> {r.photons} photons")
    if mode == "ledger":
        if document is None:
            raise UsageError("ledger mode needs a JSON document")
        ledger = qe.PhaseLedger.from_json(document.get("ledger", {}))
        fl = set(flags) | set(document.get("flags", []))
        unknown = fl - {"fermion_pair", "charge_conj_verified", "majorana"}
        if unknown:
            raise UsageError(f"unknown flags {sorted(unknown)}")
        r = qe.ledger_constraints(ledger, "fermion_pair" in fl, "charge_conj_verified" in fl, "majorana" in fl)
        text = "consistent" if r.consistent else "inconsistent: " + "; ".join(r.violations)
        return Result(r.to_json(), text)
    if mode == "reaction":
        if document is None:
            raise UsageError("reaction mode needs a JSON document")
        try:
            reaction = qe.Reaction.from_json(document)
        except (KeyError, TypeError) as e:
            raise UsageError(f"malformed reaction: {e}")
        r = qe.parity_conservation_check(reaction)
        if not r.applicable:
            text = "parity law not applicable (amplitude not symmetric)"
        elif r.solved:
            text = ", ".join(f"{k} = {v.short()}" for k, v in r.solved.items())
        else:
            text = "parity conserved" if r.holds else "parity violated"
        return Result(r.to_json(), text)
    raise UsageError("mode must be pion, positronium, ledger or reaction")


# Klein bottle


def klein(pin: str = "13", a: float = 1.0, b: float = 1.0, x3: float = 0.3, N: int = 64,
          tolerance: float = 1e-8) -> Result:
    try:
        cfg = kc.KleinConfig(kc.PinKind.parse(pin), a, b, N, tolerance, (0.0, 0.0, 0.0, x3))
    except ValueError as e:
        raise UsageError(str(e))
    table = kc.current_table(cfg)
    return Result(table.to_json(), table.to_csv())


# expressions and tables


def evaluate(expression: str, sig: str = "1,3", kind: str | None = None, exact: bool = True) -> Result:
    session = SessionConfig(sig, kind, exact)
    rep = rep_for(sig, kind)
    ast = parse_expr(expression, rep.signature)
    r = eval_expr(ast, session)
    data = {"expression": to_text(ast), **r.to_json()}
    if r.matrix is None:
        text = "\n".join(" ".join(f"{z:.6g}" for z in row) for row in r.complex_matrix)
    else:
        text = (f"{r.monomial}\n" if r.monomial else "") + r.matrix.pretty()
    return Result(data, text)


def tables(name: str | None = None) -> Result:
    names = [name] if name else list(tb.TABLES)
    try:
        rendered = {n: tb.render(n) for n in names}
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    text = "\n".join(f"== {n} ==\n{t}" for n, t in rendered.items())
    return Result(rendered, text)
