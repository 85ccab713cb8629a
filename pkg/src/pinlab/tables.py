"""Golden tables, regenerated from the algebra modules on every call."""

from __future__ import annotations

import argparse
from pathlib import Path

from .clifford_builder import (
    LOW_DIM_TYPE_TO_CLASS,
    Branch,
    OddTarget,
    base_rep,
    build_rep,
    classify,
    extend_to_odd,
    low_dim_rep,
    low_dim_rows,
)
from .conjugation_suite import adjoint_sign_table, charge_conj, hermitian_similarity, kramers_check, odd_conj_choice
from .pin_cover import named_elements, planar_cover, double_cover_table


def _rows(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
    line = "  ".join("-" * w for w in widths)
    return "\n".join([fmt(header), line] + [fmt(r) for r in rows]) + "\n"


def _compact(m) -> str:
    return "[" + ",".join("[" + ",".join(x.short() for x in row) + "]" for row in m.rows) + "]"


def named_table() -> str:
    """Cover elements and their squares for (1,3) and (3,1)."""
    rows = []
    for kind in ("Dirac13", "HatFrom13"):
        rep = base_rep(kind)
        for name, entry in named_elements(rep).items():
            diag = ",".join(entry.L.matrix.rows[i][i].short() for i in range(4))
            e = entry.solutions.plus
            rows.append([str(rep.signature), name, f"diag({diag})", "+-" + rep.monomial_text(e.indices),
                         entry.square.short()])
    return _rows(["sig", "L", "matrix", "Lambda_L", "Lambda_L^2"], rows)


def rotation_table() -> str:
    rows = []
    for kind in ("Dirac13", "HatFrom13"):
        rep = base_rep(kind)
        axes = (1, 2)
        for turns, label in ((0, "0"), (1, "pi"), (2, "2pi"), (4, "4pi")):
            e = planar_cover(rep, axes, turns)
            rows.append([str(rep.signature), f"R({label})", f"{axes[0]}{axes[1]}", e.text])
    return _rows(["sig", "rotation", "plane", "Lambda_R"], rows)


def classification_table() -> str:
    rows = []
    for r in range(8):
        cells = [classify(n + r, n).label for n in (1, 2, 3)]
        rows.append([str(r)] + cells)
    return _rows(["m-n mod 8", "C(r+1,1)", "C(r+2,2)", "C(r+3,3)"], rows)


def low_dim_text() -> str:
    rows = []
    for t, s in low_dim_rows():
        rep, typ = low_dim_rep(t, s)
        gens = "; ".join(_compact(g) for g in rep.matrices)
        rows.append([f"C({t},{s})", typ, LOW_DIM_TYPE_TO_CLASS[typ], classify(t, s).label, gens])
    return _rows(["algebra", "type", "as class", "classify", "generators"], rows)


def odd_table() -> str:
    """Odd-dimensional extensions with the surviving hermitian and charge conjugations."""
    rows = []
    for t, s in ((1, 1), (2, 0), (0, 2)):
        base = build_rep(t, s)
        for target in OddTarget:
            for branch in Branch:
                rep = extend_to_odd(base, target, branch)
                tt, ss = rep.signature.t, rep.signature.s
                h = [x for x in ("Plus", "Minus") if hermitian_similarity(rep, x).exists]
                c = [x for x in ("Plus", "Minus") if charge_conj(rep, x).exists]
                pred = odd_conj_choice(tt, ss)
                rows.append([f"C({t},{s})", target.value, branch.value, rep.provenance["k"], f"C({tt},{ss})",
                             "H" + "/".join("+" if x == "Plus" else "-" for x in h),
                             "C" + "/".join("+" if x == "Plus" else "-" for x in c),
                             f"H{'+' if pred['H'].value == 'Plus' else '-'} C{'+' if pred['C'].value == 'Plus' else '-'}"])
    return _rows(["from", "target", "branch", "k", "result", "H found", "C found", "rule"], rows)


def double_covers_text() -> str:
    rows = []
    for cc in double_cover_table():
        rows.append([f"{cc.a:+d}", f"{cc.b:+d}", f"{cc.c:+d}", "commute" if cc.commute == 1 else "anticommute",
                     cc.group_name, "yes" if cc.cliffordian else "no"])
    return _rows(["a", "b", "c", "P,T", "group", "cliffordian"], rows)


def conjugation_table() -> str:
    rows = []
    for kind in ("Dirac13", "HatFrom13"):
        rep = base_rep(kind)
        c = charge_conj(rep)
        a = adjoint_sign_table(rep)
        rows.append([kind, c.sign_convention.value, c.text, c.cc_star.short(), kramers_check(rep).short(),
                     " ".join(f"{k}:{v:+d}" for k, v in a.items())])
    return _rows(["rep", "C sign", "C", "CC*", "A_T A_T*", "a(Lambda)"], rows)


TABLES = {
    "named": named_table,
    "rotations": rotation_table,
    "classification": classification_table,
    "low_dim": low_dim_text,
    "odd": odd_table,
    "double_covers": double_covers_text,
    "conjugation": conjugation_table,
}


def render(name: str) -> str:
    if name not in TABLES:
        raise KeyError(f"unknown table {name!r}; choose from {', '.join(TABLES)}")
    return TABLES[name]()


def write_all(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in TABLES:
        p = directory / f"{name}.txt"
        p.write_text(render(name), encoding="utf-8")
        out.append(p)
    return out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description="regenerate golden table fixtures")
    ap.add_argument("directory", type=Path)
    for p in write_all(ap.parse_args(argv).directory):
        print(p)


if __name__ == "__main__":
    main()
