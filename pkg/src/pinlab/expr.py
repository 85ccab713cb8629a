"""A small Pratt-style parser and evaluator for gamma-monomial arithmetic.

Tokens: g0..g9, gh1..gh9, G5, P1 P3 T PT C AT H+ H-, integers, i, + - *,
^, postfix ' (reversion) and the dagger sign, adj(...).  Juxtaposition
multiplies.  Unary minus binds tighter than ^, which binds tighter than
products, which bind tighter than sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exact_core import I_UNIT, ONE, ExactMatrix, GaussScalar, dagger, gs, inverse, matmul, trace

NAMED = ("P1", "P3", "PT", "T", "G5", "C", "AT", "H+", "H-")


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        caret = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{msg} at position {pos}{caret}")


class ExprEvalError(ValueError):
    pass


# AST


@dataclass(frozen=True)
class GammaSym:
    index: int
    hatted: bool = False


@dataclass(frozen=True)
class NamedOp:
    name: str


@dataclass(frozen=True)
class ScalarLit:
    value: GaussScalar


@dataclass(frozen=True)
class Neg:
    item: "Node"


@dataclass(frozen=True)
class Product:
    items: tuple


@dataclass(frozen=True)
class Sum:
    items: tuple


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Dagger:
    item: "Node"


@dataclass(frozen=True)
class Reversion:
    item: "Node"


Node = Union[GammaSym, NamedOp, ScalarLit, Neg, Product, Sum, Power, Dagger, Reversion]


# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # GAMMA, NAMED, INT, I, OP, LPAREN, RPAREN, ADJ, EOF
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if src.startswith("gh", i) and i + 2 < n and src[i + 2].isdigit():
            toks.append(Token("GAMMA", src[i:i + 3], i))
            i += 3
            continue
        if c == "g" and i + 1 < n and src[i + 1].isdigit():
            toks.append(Token("GAMMA", src[i:i + 2], i))
            i += 2
            continue
        if src.startswith("adj", i):
            toks.append(Token("ADJ", "adj", i))
            i += 3
            continue
        if c == "H":
            if i + 1 < n and src[i + 1] in "+-−":
                toks.append(Token("NAMED", "H+" if src[i + 1] == "+" else "H-", i))
                i += 2
                continue
            raise ExprSyntaxError("H must be followed directly by + or -", i, src)
        matched = False
        for name in ("P1", "P3", "PT", "G5", "AT", "T", "C"):
            if src.startswith(name, i):
                end = i + len(name)
                if end < n and (src[end].isalnum() or src[end] == "_"):
                    continue
                toks.append(Token("NAMED", name, i))
                i = end
                matched = True
                break
        if matched:
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("INT", src[i:j], i))
            i = j
            continue
        if c == "i" and not (i + 1 < n and src[i + 1].isalnum()):
            toks.append(Token("I", "i", i))
            i += 1
            continue
        if c in "+-*^'":
            toks.append(Token("OP", c, i))
            i += 1
            continue
        if c == "−":
            toks.append(Token("OP", "-", i))
            i += 1
            continue
        if c == "†":
            toks.append(Token("OP", "dag", i))
            i += 1
            continue
        if c == "(":
            toks.append(Token("LPAREN", c, i))
            i += 1
            continue
        if c == ")":
            toks.append(Token("RPAREN", c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i, src)
    toks.append(Token("EOF", "", n))
    return toks


# parser

_SUM_BP, _PROD_BP, _POW_BP = 10, 20, 30
_STARTS = ("GAMMA", "NAMED", "INT", "I", "LPAREN", "ADJ")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.k = 0

    def peek(self) -> Token:
        return self.toks[self.k]

    def next(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.next()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind.lower()
            raise ExprSyntaxError(f"expected {want!r}, found {t.text or 'end of input'!r}", t.pos, self.src)
        return t

    def parse(self) -> Node:
        if self.peek().kind == "EOF":
            raise ExprSyntaxError("empty expression", 0, self.src)
        node = self.expr(0)
        t = self.peek()
        if t.kind != "EOF":
            raise ExprSyntaxError(f"unexpected {t.text!r}", t.pos, self.src)
        return node

    def expr(self, min_bp: int) -> Node:
        left = self.prefix()
        while True:
            t = self.peek()
            if t.kind == "OP" and t.text in "+-":
                bp = _SUM_BP
                if bp < min_bp:
                    break
                self.next()
                right = self.expr(bp + 1)
                left = _sum(left, Neg(right) if t.text == "-" else right)
            elif (t.kind == "OP" and t.text == "*") or t.kind in _STARTS:
                bp = _PROD_BP
                if bp < min_bp:
                    break
                if t.kind == "OP":
                    self.next()
                right = self.expr(bp + 1)
                left = _product(left, right)
            elif t.kind == "OP" and t.text == "^":
                bp = _POW_BP
                if bp < min_bp:
                    break
                self.next()
                sign = 1
                if self.peek().kind == "OP" and self.peek().text == "-":
                    self.next()
                    sign = -1
                e = self.expect("INT")
                left = Power(left, sign * int(e.text))
            else:
                break
        return left

    def prefix(self) -> Node:
        t = self.peek()
        if t.kind == "OP" and t.text == "-":
            self.next()
            return Neg(self.prefix())
        return self.postfix(self.atom())

    def postfix(self, node: Node) -> Node:
        while self.peek().kind == "OP" and self.peek().text in ("'", "dag"):
            t = self.next()
            node = Reversion(node) if t.text == "'" else Dagger(node)
        return node

    def atom(self) -> Node:
        t = self.next()
        if t.kind == "GAMMA":
            hatted = t.text.startswith("gh")
            idx = int(t.text[2:] if hatted else t.text[1:])
            return GammaSym(idx, hatted)
        if t.kind == "NAMED":
            return NamedOp(t.text)
        if t.kind == "INT":
            return ScalarLit(gs(int(t.text)))
        if t.kind == "I":
            return ScalarLit(I_UNIT)
        if t.kind == "LPAREN":
            inner = self.expr(0)
            self.expect("RPAREN")
            return inner
        if t.kind == "ADJ":
            self.expect("LPAREN")
            inner = self.expr(0)
            self.expect("RPAREN")
            return Dagger(inner)
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos, self.src)


def _product(a: Node, b: Node) -> Product:
    items = (a.items if isinstance(a, Product) else (a,)) + (b.items if isinstance(b, Product) else (b,))
    return Product(items)


def _sum(a: Node, b: Node) -> Sum:
    items = (a.items if isinstance(a, Sum) else (a,)) + (b.items if isinstance(b, Sum) else (b,))
    return Sum(items)


def _gammas(node: Node):
    if isinstance(node, GammaSym):
        yield node
    for attr in ("item", "base"):
        if hasattr(node, attr):
            yield from _gammas(getattr(node, attr))
    if isinstance(node, (Product, Sum)):
        for x in node.items:
            yield from _gammas(x)


def parse_expr(text: str, signature=None) -> Node:
    """Parse; with ``signature`` given, also check generator labels against it."""
    node = _Parser(text).parse()
    gs_ = list(_gammas(node))
    if len({g.hatted for g in gs_}) > 1:
        raise ExprSyntaxError("hatted and unhatted generators cannot be mixed", 0, text)
    if signature is not None:
        for g in gs_:
            try:
                signature.index(g.index)
            except IndexError:
                raise ExprSyntaxError(f"unknown generator index {g.index} for signature {signature}", 0, text)
    return node


# printer


def _atomic(node: Node) -> bool:
    return isinstance(node, (GammaSym, NamedOp)) or (
        isinstance(node, ScalarLit) and (node.value == I_UNIT or (node.value.is_real and node.value.re >= 0
                                                                  and node.value.re.denominator == 1)))


def to_text(node: Node) -> str:
    if isinstance(node, GammaSym):
        return f"{'gh' if node.hatted else 'g'}{node.index}"
    if isinstance(node, NamedOp):
        return node.name
    if isinstance(node, ScalarLit):
        v = node.value
        if v == I_UNIT:
            return "i"
        if v.is_real and v.re.denominator == 1 and v.re >= 0:
            return str(v.re)
        raise ExprEvalError(f"scalar {v.short()} has no literal form")
    if isinstance(node, Neg):
        inner = node.item
        s = to_text(inner)
        return f"-{s}" if _atomic(inner) or isinstance(inner, (Reversion, Dagger, Neg)) else f"-({s})"
    if isinstance(node, Product):
        parts = []
        for x in node.items:
            s = to_text(x)
            parts.append(f"({s})" if isinstance(x, (Sum, Neg)) else s)
        return " ".join(parts)
    if isinstance(node, Sum):
        out = to_text(node.items[0]) if not isinstance(node.items[0], Sum) else f"({to_text(node.items[0])})"
        for x in node.items[1:]:
            if isinstance(x, Neg):
                s = to_text(x.item)
                out += f" - ({s})" if isinstance(x.item, (Sum, Neg)) else f" - {s}"
            else:
                out += f" + ({to_text(x)})" if isinstance(x, Sum) else f" + {to_text(x)}"
        return out
    if isinstance(node, Power):
        b = to_text(node.base)
        return f"{b}^{node.exponent}" if _atomic(node.base) else f"({b})^{node.exponent}"
    if isinstance(node, Reversion):
        s = to_text(node.item)
        return f"{s}'" if _atomic(node.item) or isinstance(node.item, (Reversion, Dagger)) else f"({s})'"
    if isinstance(node, Dagger):
        return f"adj({to_text(node.item)})"
    raise TypeError(f"unknown node {node!r}")


# evaluation


@dataclass
class SessionConfig:
    signature: str = "1,3"
    rep_kind: str | None = None
    exact: bool = True
    output: str = "text"

    def rep(self):
        from .clifford_builder import base_rep, build_rep

        t, s = (int(x) for x in self.signature.split(","))
        kind = self.rep_kind
        if kind is None:
            kind = {(1, 3): "Dirac13", (3, 1): "HatFrom13"}.get((t, s))
        if kind is None:
            return build_rep(t, s)
        rep = base_rep(kind)
        if (rep.signature.t, rep.signature.s) != (t, s):
            raise ExprEvalError(f"representation {kind} does not match signature ({t},{s})")
        return rep


@dataclass
class EvalResult:
    matrix: ExactMatrix | None
    monomial: str | None
    complex_matrix: list | None = None

    def to_json(self) -> dict:
        if self.matrix is None:
            return {"matrix": [[[z.real, z.imag] for z in row] for row in self.complex_matrix], "monomial": None}
        return {"matrix": self.matrix.to_json(), "monomial": self.monomial}


def _reversed_node(rep, node: Node) -> ExactMatrix:
    """Reversion as an anti-automorphism: reverse products, fix generators and scalars."""
    if isinstance(node, Product):
        out = ExactMatrix.identity(rep.dim)
        for x in reversed(node.items):
            out = matmul(out, _reversed_node(rep, x))
        return out
    if isinstance(node, Sum):
        acc = ExactMatrix.zeros(rep.dim)
        for x in node.items:
            acc = acc + _reversed_node(rep, x)
        return acc
    if isinstance(node, Neg):
        return -_reversed_node(rep, node.item)
    if isinstance(node, Power):
        m = _reversed_node(rep, node.base)
        return m ** node.exponent
    if isinstance(node, Reversion):
        return _eval(rep, node.item, True)
    if isinstance(node, (GammaSym, ScalarLit)):
        return _eval(rep, node, True)
    return _reverse_matrix(rep, _eval(rep, node, True))


def _reverse_matrix(rep, m: ExactMatrix) -> ExactMatrix:
    """Expand in the monomial basis and reverse every basis element."""
    from .clifford_builder import _inverse_monomial

    out = recon = ExactMatrix.zeros(rep.dim)
    for sub in rep.subsets():
        c = trace(matmul(_inverse_monomial(rep, sub), m)) / rep.dim
        if c:
            recon = recon + rep.monomial(sub).scale(c)
            out = out + rep.monomial(tuple(reversed(sub))).scale(c)
    if recon != m:
        raise ExprEvalError("value is not in the span of the generator monomials")
    return out


_EXACT_ONLY = ("C", "AT", "H+", "H-")


def _named(rep, name: str) -> ExactMatrix:
    from .clifford_builder import chirality
    from .conjugation_suite import antiunitary_T, charge_conj, hermitian_similarity
    from .pin_cover import CoverError, named_element

    if name in ("P1", "P3", "T", "PT"):
        try:
            return named_element(rep, name).matrix
        except CoverError as e:
            raise ExprEvalError(str(e))
    if name == "G5":
        return chirality(rep)
    if name == "C":
        c = charge_conj(rep)
        if not c.exists:
            raise ExprEvalError("no charge conjugation matrix in this representation")
        return c.matrix
    if name == "AT":
        return antiunitary_T(rep).matrix
    if name in ("H+", "H-"):
        h = hermitian_similarity(rep, "Plus" if name == "H+" else "Minus")
        if not h.exists:
            raise ExprEvalError(f"{name} does not exist in this representation")
        return h.matrix
    raise ExprEvalError(f"unknown operator {name}")


def _eval(rep, node: Node, exact: bool) -> ExactMatrix:
    n = rep.dim
    if isinstance(node, GammaSym):
        if node.hatted != rep.hatted:
            raise ExprEvalError(f"{to_text(node)} does not belong to a {'hatted' if rep.hatted else 'standard'} session")
        try:
            return rep.gamma(node.index)
        except IndexError as e:
            raise ExprEvalError(str(e))
    if isinstance(node, NamedOp):
        if not exact and node.name in _EXACT_ONLY:
            raise ExprEvalError(f"{node.name} comes from an exact monomial search and needs exact mode")
        return _named(rep, node.name)
    if isinstance(node, ScalarLit):
        return ExactMatrix.identity(n).scale(node.value)
    if isinstance(node, Neg):
        return -_eval(rep, node.item, exact)
    if isinstance(node, Product):
        out = ExactMatrix.identity(n)
        for x in node.items:
            out = matmul(out, _eval(rep, x, exact))
        return out
    if isinstance(node, Sum):
        acc = ExactMatrix.zeros(n)
        for x in node.items:
            acc = acc + _eval(rep, x, exact)
        return acc
    if isinstance(node, Power):
        m = _eval(rep, node.base, exact)
        if node.exponent < 0:
            m = inverse(m)
        out = ExactMatrix.identity(n)
        for _ in range(abs(node.exponent)):
            out = matmul(out, m)
        return out
    if isinstance(node, Dagger):
        return dagger(_eval(rep, node.item, exact))
    if isinstance(node, Reversion):
        return _reversed_node(rep, node.item)
    raise TypeError(f"unknown node {node!r}")


def monomial_text(rep, m: ExactMatrix) -> str | None:
    from .clifford_builder import monomial_decompose

    if m.is_zero():
        return "0"
    found = monomial_decompose(rep, m)
    if found is None:
        return None
    c, sub = found
    body = rep.monomial_text(sub)
    if c == ONE:
        return "+" + body
    if c == -ONE:
        return "-" + body
    return f"{c.short()} {body}" if sub else c.short()


def eval_expr(node: Node | str, session: SessionConfig | None = None) -> EvalResult:
    session = session or SessionConfig()
    rep = session.rep()
    if isinstance(node, str):
        node = parse_expr(node, rep.signature)
    m = _eval(rep, node, session.exact)
    if not session.exact:
        return EvalResult(None, None, m.to_complex())
    return EvalResult(m, monomial_text(rep, m))
