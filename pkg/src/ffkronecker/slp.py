"""Straight-line programs: parsing, generic evaluation, Jacobians, linear changes.

A program is a list of nodes, each referring only to earlier nodes:

    ("in", i)        the i-th input variable
    ("const", c)     a raw field constant
    ("add", a, b)    ("sub", a, b)    ("mul", a, b)    ("div", a, b)

Programs are built through :class:`SlpBuilder`, which hashes nodes
structurally so that equal subexpressions are shared, and folds arithmetic on
constants. Division by a constant is rewritten as multiplication by its
inverse, so every program produced by the parser is division-free.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import (
    DivisionByZero,
    NonPolynomial,
    SingularMatrix,
    SyntaxError as SlpSyntaxError,
    UnknownVariable,
)
from .field import Field, make_field
from .rings import DualRing

_ADD, _SUB, _MUL, _DIV, _IN, _CONST = range(6)
_OPCODE = {"add": _ADD, "sub": _SUB, "mul": _MUL, "div": _DIV, "in": _IN, "const": _CONST}


class Slp:
    """An immutable straight-line program over ``field`` in ``n_vars`` inputs."""

    def __init__(
        self,
        field: Field,
        n_vars: int,
        nodes: Sequence[tuple],
        outputs: Sequence[int],
        degrees: Sequence[int] | None = None,
        var_names: Sequence[str] | None = None,
    ):
        self.field = field
        self.n_vars = n_vars
        self.nodes = tuple(nodes)
        self.outputs = tuple(outputs)
        self.var_names = tuple(var_names) if var_names else tuple(f"X{i + 1}" for i in range(n_vars))
        for idx, nd in enumerate(self.nodes):
            if nd[0] in ("add", "sub", "mul", "div"):
                if not (0 <= nd[1] < idx and 0 <= nd[2] < idx):
                    raise ValueError(f"node {idx} references a later node")
            elif nd[0] == "in":
                if not 0 <= nd[1] < n_vars:
                    raise ValueError(f"node {idx} reads a missing input")
            elif nd[0] != "const":
                raise ValueError(f"unknown node kind {nd[0]!r}")
        self.degrees = tuple(degrees) if degrees is not None else tuple(self._degree_bounds())
        self._code = [(_OPCODE[nd[0]],) + tuple(nd[1:]) for nd in self.nodes]

    # metrics
    @property
    def time(self) -> int:
        return sum(1 for nd in self.nodes if nd[0] in ("add", "sub", "mul", "div"))

    @property
    def space(self) -> int:
        last = {}
        for idx, nd in enumerate(self.nodes):
            if nd[0] in ("add", "sub", "mul", "div"):
                last[nd[1]] = idx
                last[nd[2]] = idx
        for o in self.outputs:
            last[o] = len(self.nodes)
        live = peak = 0
        for idx in range(len(self.nodes)):
            live += 1
            peak = max(peak, live)
            nd = self.nodes[idx]
            if nd[0] in ("add", "sub", "mul", "div"):
                for a in {nd[1], nd[2]}:
                    if last.get(a) == idx:
                        live -= 1
            if idx not in last:
                live -= 1
        return peak

    @property
    def division_free(self) -> bool:
        return all(nd[0] != "div" for nd in self.nodes)

    @property
    def degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def _degree_bounds(self) -> list[int]:
        deg: list[int] = []
        for nd in self.nodes:
            k = nd[0]
            if k == "in":
                deg.append(1)
            elif k == "const":
                deg.append(0)
            elif k in ("add", "sub"):
                deg.append(max(deg[nd[1]], deg[nd[2]]))
            elif k == "mul":
                deg.append(deg[nd[1]] + deg[nd[2]])
            else:
                deg.append(deg[nd[1]] + 64 * deg[nd[2]])
        return [deg[o] for o in self.outputs]

    def __len__(self) -> int:
        return len(self.outputs)

    def output(self, i: int) -> "Slp":
        """The single-output program for output i."""
        return Slp(self.field, self.n_vars, self.nodes, [self.outputs[i]], [self.degrees[i]], self.var_names)

    def evaluate(self, point: Sequence) -> list:
        """Evaluate over the field; accepts raw values or FieldElements."""
        F = self.field
        return eval_generic(self, [F.normalize(x) for x in point], F)

    def __repr__(self) -> str:
        return f"Slp(n_vars={self.n_vars}, nodes={len(self.nodes)}, outputs={len(self.outputs)}, T={self.time})"


# ---------------------------------------------------------------------------
# construction with sharing and folding
# ---------------------------------------------------------------------------


class SlpBuilder:
    def __init__(self, field: Field, n_vars: int, var_names: Sequence[str] | None = None):
        self.field = field
        self.n_vars = n_vars
        self.var_names = var_names
        self.nodes: list[tuple] = []
        self.deg: list[int] = []
        self._index: dict[tuple, int] = {}
        self._const_of: dict[int, Any] = {}

    def _intern(self, nd: tuple, deg: int) -> int:
        idx = self._index.get(nd)
        if idx is None:
            idx = len(self.nodes)
            self.nodes.append(nd)
            self.deg.append(deg)
            self._index[nd] = idx
            if nd[0] == "const":
                self._const_of[idx] = nd[1]
        return idx

    def var(self, i: int) -> int:
        return self._intern(("in", i), 1)

    def const(self, c: Any) -> int:
        return self._intern(("const", self.field.normalize(c)), 0)

    def const_value(self, idx: int):
        return self._const_of.get(idx)

    def _binary_key(self, kind: str, a: int, b: int) -> tuple:
        if kind in ("add", "mul") and b < a:
            a, b = b, a
        return (kind, a, b)

    def add(self, a: int, b: int) -> int:
        F = self.field
        ca, cb = self.const_value(a), self.const_value(b)
        if ca is not None and cb is not None:
            return self.const(F.add(ca, cb))
        if ca is not None and ca == F.zero:
            return b
        if cb is not None and cb == F.zero:
            return a
        return self._intern(self._binary_key("add", a, b), max(self.deg[a], self.deg[b]))

    def sub(self, a: int, b: int) -> int:
        F = self.field
        ca, cb = self.const_value(a), self.const_value(b)
        if ca is not None and cb is not None:
            return self.const(F.sub(ca, cb))
        if cb is not None and cb == F.zero:
            return a
        if a == b:
            return self.const(F.zero)
        return self._intern(("sub", a, b), max(self.deg[a], self.deg[b]))

    def neg(self, a: int) -> int:
        return self.sub(self.const(self.field.zero), a)

    def mul(self, a: int, b: int) -> int:
        F = self.field
        ca, cb = self.const_value(a), self.const_value(b)
        if ca is not None and cb is not None:
            return self.const(F.mul(ca, cb))
        for c, other in ((ca, b), (cb, a)):
            if c is not None:
                if c == F.zero:
                    return self.const(F.zero)
                if c == F.one:
                    return other
        return self._intern(self._binary_key("mul", a, b), self.deg[a] + self.deg[b])

    def div(self, a: int, b: int, allow_general: bool = False) -> int:
        F = self.field
        cb = self.const_value(b)
        if cb is not None:
            if cb == F.zero:
                raise DivisionByZero("division by the constant 0")
            return self.mul(a, self.const(F.inv(cb)))
        if not allow_general:
            raise NonPolynomial("division by a non-constant expression")
        return self._intern(("div", a, b), self.deg[a] + 64 * self.deg[b])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise NonPolynomial("negative exponent")
        result = self.const(self.field.one)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def linear(self, coeffs: Sequence[tuple[Any, int]], const: Any = None) -> int:
        """sum c_i * node_i + const."""
        F = self.field
        acc = self.const(const if const is not None else F.zero)
        for c, node in coeffs:
            if c == F.zero:
                continue
            acc = self.add(acc, self.mul(self.const(c), node))
        return acc

    def copy_program(self, slp: Slp, inputs: Sequence[int]) -> list[int]:
        """Replay slp with its inputs bound to the given builder nodes."""
        mapping: list[int] = []
        for nd in slp.nodes:
            k = nd[0]
            if k == "in":
                mapping.append(inputs[nd[1]])
            elif k == "const":
                mapping.append(self.const(nd[1]))
            elif k == "add":
                mapping.append(self.add(mapping[nd[1]], mapping[nd[2]]))
            elif k == "sub":
                mapping.append(self.sub(mapping[nd[1]], mapping[nd[2]]))
            elif k == "mul":
                mapping.append(self.mul(mapping[nd[1]], mapping[nd[2]]))
            else:
                mapping.append(self.div(mapping[nd[1]], mapping[nd[2]], allow_general=True))
        return [mapping[o] for o in slp.outputs]

    def build(self, outputs: Sequence[int], degrees: Sequence[int] | None = None) -> Slp:
        # drop nodes that no output depends on
        needed = set()
        stack = list(outputs)
        while stack:
            i = stack.pop()
            if i in needed:
                continue
            needed.add(i)
            nd = self.nodes[i]
            if nd[0] in ("add", "sub", "mul", "div"):
                stack.extend((nd[1], nd[2]))
        order = sorted(needed)
        remap = {old: new for new, old in enumerate(order)}
        nodes = []
        for old in order:
            nd = self.nodes[old]
            if nd[0] in ("add", "sub", "mul", "div"):
                nodes.append((nd[0], remap[nd[1]], remap[nd[2]]))
            else:
                nodes.append(nd)
        if degrees is None:
            degrees = [self.deg[o] for o in outputs]
        return Slp(self.field, self.n_vars, nodes, [remap[o] for o in outputs], degrees, self.var_names)


def combine(slps: Sequence[Slp]) -> Slp:
    """One multi-output program sharing the common subexpressions of all inputs."""
    if not slps:
        raise ValueError("nothing to combine")
    F, n = slps[0].field, slps[0].n_vars
    b = SlpBuilder(F, n, slps[0].var_names)
    inputs = [b.var(i) for i in range(n)]
    outs, degs = [], []
    for s in slps:
        if s.n_vars != n or s.field != F:
            raise ValueError("programs over different inputs")
        outs.extend(b.copy_program(s, inputs))
        degs.extend(s.degrees)
    return b.build(outs, degs)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_generic(slp: Slp, assignment: Sequence, ring: Any) -> list:
    """Evaluate every output of ``slp`` with inputs bound to ring elements."""
    if len(assignment) != slp.n_vars:
        raise ValueError(f"expected {slp.n_vars} inputs, got {len(assignment)}")
    add, sub, mul = ring.add, ring.sub, ring.mul
    tape: list = []
    push = tape.append
    from_field = ring.from_field
    for op in slp._code:
        code = op[0]
        if code == _MUL:
            push(mul(tape[op[1]], tape[op[2]]))
        elif code == _ADD:
            push(add(tape[op[1]], tape[op[2]]))
        elif code == _SUB:
            push(sub(tape[op[1]], tape[op[2]]))
        elif code == _IN:
            push(assignment[op[1]])
        elif code == _CONST:
            push(from_field(op[1]))
        else:
            div = getattr(ring, "div", None)
            if div is None:
                raise NonPolynomial("this ring does not support division")
            push(div(tape[op[1]], tape[op[2]]))
    return [tape[o] for o in slp.outputs]


def jacobian_at(slps: Sequence[Slp] | Slp, point: Sequence, ring: Any = None, wrt: Sequence[int] | None = None):
    """Matrix of partial derivatives by forward-mode dual numbers.

    Returns (values, jacobian) when ``ring`` is given explicitly and the plain
    Jacobian otherwise; ``wrt`` restricts the differentiation variables.
    """
    explicit = ring is not None
    prog = slps if isinstance(slps, Slp) else combine(list(slps))
    if ring is None:
        ring = prog.field
        point = [ring.normalize(x) for x in point]
    wrt = list(range(prog.n_vars)) if wrt is None else list(wrt)
    D = DualRing(ring, len(wrt))
    pos = {v: j for j, v in enumerate(wrt)}
    assign = [D.variable(x, pos[i]) if i in pos else D.const(x) for i, x in enumerate(point)]
    out = eval_generic(prog, assign, D)
    jac = [D.gradient(o) for o in out]
    if explicit:
        return [o[0] for o in out], jac
    return jac


# ---------------------------------------------------------------------------
# linear changes of variables
# ---------------------------------------------------------------------------


def mat_inverse(F: Field, M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    A = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != F.zero), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(x, inv) for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != F.zero:
                f = A[r][c]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def mat_mul(F: Field, A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[F.dot(row, col) for col in zip(*B)] for row in A]


def mat_vec(F: Field, A: Sequence[Sequence], v: Sequence) -> list:
    return [F.dot(row, v) for row in A]


def random_matrix(F: Field, n: int, rng: random.Random, rows: int | None = None) -> list[list]:
    return [[F.random(rng) for _ in range(n)] for _ in range(rows if rows is not None else n)]


@dataclass(frozen=True)
class LinearForms:
    """Affine map X -> matrix * X + shift (Y-coordinates from X-coordinates)."""

    field: Field
    matrix: tuple
    shift: tuple

    @classmethod
    def make(cls, field: Field, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "LinearForms":
        M = tuple(tuple(field.normalize(x) for x in row) for row in matrix)
        n_cols = len(M[0]) if M else 0
        if any(len(r) != n_cols for r in M):
            raise ValueError("ragged matrix")
        g = tuple(field.normalize(x) for x in shift) if shift is not None else tuple(field.zero for _ in M)
        lf = cls(field, M, g)
        if lf.is_square:
            lf.inverse  # noqa: B018 - raises SingularMatrix
        return lf

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearForms":
        return cls.make(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return len(self.matrix) == (len(self.matrix[0]) if self.matrix else 0)

    @property
    def n(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def inverse(self) -> tuple:
        cache = self.__dict__.get("_inv")
        if cache is None:
            if not self.is_square:
                raise SingularMatrix("only square forms are invertible")
            inv = mat_inverse(self.field, self.matrix)
            prod = mat_mul(self.field, self.matrix, inv)
            F = self.field
            if any(prod[i][j] != (F.one if i == j else F.zero) for i in range(len(prod)) for j in range(len(prod))):
                raise SingularMatrix("inverse verification failed")  # pragma: no cover
            cache = tuple(tuple(r) for r in inv)
            object.__setattr__(self, "_inv", cache)
        return cache

    def apply(self, x: Sequence) -> list:
        F = self.field
        return [F.add(F.dot(row, x), g) for row, g in zip(self.matrix, self.shift)]

    def apply_inverse(self, y: Sequence) -> list:
        F = self.field
        return mat_vec(F, self.inverse, [F.sub(a, g) for a, g in zip(y, self.shift)])

    def to_json(self) -> dict:
        F = self.field
        return {
            "matrix": [[F.to_json(x) for x in row] for row in self.matrix],
            "shift": [F.to_json(x) for x in self.shift],
        }

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> "LinearForms":
        return cls.make(
            field,
            [[field.from_json(x) for x in row] for row in obj["matrix"]],
            [field.from_json(x) for x in obj["shift"]],
        )


def map_field(slp: Slp, target: Field, embed: Any) -> Slp:
    """The same program with every constant sent through ``embed`` into ``target``."""
    nodes = [("const", embed(nd[1])) if nd[0] == "const" else nd for nd in slp.nodes]
    return Slp(target, slp.n_vars, nodes, slp.outputs, slp.degrees, slp.var_names)


def apply_linear_change(slp: Slp, forms: LinearForms) -> Slp:
    """The program in Y computing F(matrix^-1 (Y - shift))."""
    F = slp.field
    if forms.field != F:
        raise ValueError("forms and program over different fields")
    inv = forms.inverse
    n = slp.n_vars
    b = SlpBuilder(F, n, [f"Y{i + 1}" for i in range(n)])
    ys = [b.var(i) for i in range(n)]
    c = mat_vec(F, inv, forms.shift)
    xs = [b.linear([(inv[i][j], ys[j]) for j in range(n)], F.neg(c[i])) for i in range(n)]
    outs = b.copy_program(slp, xs)
    return b.build(outs, list(slp.degrees))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SlpSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), col0 + start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col0 + start))
        else:
            op = m.group(3)
            toks.append(_Tok("op", "^" if op == "**" else op, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    """Recursive descent over + - * / ^ with the usual precedences."""

    def __init__(self, toks: list[_Tok], builder: SlpBuilder, names: dict[str, int], line: int):
        self.toks = toks
        self.i = 0
        self.b = builder
        self.names = names
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise SlpSyntaxError(msg, self.line, tok.col)

    def parse(self) -> int:
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> int:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            node = self.b.add(node, rhs) if op == "+" else self.b.sub(node, rhs)
        return node

    def term(self) -> int:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                node = self.b.mul(node, rhs)
            else:
                try:
                    node = self.b.div(node, rhs)
                except NonPolynomial:
                    raise NonPolynomial(f"line {self.line}, col {op.col}: division by a non-constant expression")
        return node

    def unary(self) -> int:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            node = self.unary()
            return node if t.text == "+" else self.b.neg(node)
        return self.power()

    def power(self) -> int:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind == "int":
                self.take()
                e = int(t.text)
            elif t.kind == "op" and t.text == "(":
                self.take()
                t2 = self.take()
                if t2.kind != "int":
                    self.error("exponent must be a nonnegative integer literal", t2)
                if self.take().text != ")":
                    self.error("expected ')'")
                e = int(t2.text)
            elif t.kind == "op" and t.text == "-":
                raise NonPolynomial(f"line {self.line}, col {t.col}: negative exponent")
            else:
                self.error("exponent must be a nonnegative integer literal", t)
            return self.b.pow(base, e)
        return base

    def atom(self) -> int:
        t = self.take()
        if t.kind == "int":
            return self.b.const(self.b.field.from_int(int(t.text)))
        if t.kind == "name":
            if t.text not in self.names:
                raise UnknownVariable(f"line {self.line}, col {t.col}: unknown variable {t.text!r}")
            return self.b.var(self.names[t.text])
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            close = self.take()
            if close.text != ")":
                self.error("expected ')'", close)
            return node
        self.error(f"unexpected {t.text or 'end of input'!r}", t)
        raise AssertionError  # unreachable


def parse_polynomial(text: str, field: Field, var_names: Sequence[str], line: int = 1, col0: int = 1) -> Slp:
    """Parse one infix polynomial into a single-output program."""
    names = {v: i for i, v in enumerate(var_names)}
    b = SlpBuilder(field, len(var_names), var_names)
    node = _Parser(_tokenize(text, line, col0), b, names, line).parse()
    return b.build([node])


@dataclass
class ParsedSystem:
    field: Field
    var_names: list[str]
    polys: list[Slp]
    texts: list[str]


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_system_full(text: str) -> ParsedSystem:
    field: Field | None = None
    names: list[str] | None = None
    polys: list[Slp] = []
    texts: list[str] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line)
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        word, _, rest = stripped.partition(" ")
        word = word.strip()
        if field is None:
            if word != "field":
                raise SlpSyntaxError("expected a 'field p=<prime> ext=<k>' header", lineno, indent + 1)
            kv: dict[str, int] = {}
            for tok in rest.split():
                key, eq, val = tok.partition("=")
                if not eq or not val.isdigit() or key not in ("p", "ext"):
                    col = line.find(tok) + 1
                    raise SlpSyntaxError(f"bad field parameter {tok!r}", lineno, col)
                kv[key] = int(val)
            if "p" not in kv:
                raise SlpSyntaxError("field header needs p=<prime>", lineno, indent + 1)
            p, k = kv["p"], kv.get("ext", 1)
            if k < 1:
                raise SlpSyntaxError("ext must be positive", lineno, indent + 1)
            field = make_field(p, k, random.Random(p * 7919 + k))
        elif names is None:
            if word != "vars":
                raise SlpSyntaxError("expected a 'vars' line", lineno, indent + 1)
            names = rest.split()
            if not names:
                raise SlpSyntaxError("no variables declared", lineno, indent + 1)
            for v in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise SlpSyntaxError(f"bad variable name {v!r}", lineno, line.find(v) + 1)
            if len(set(names)) != len(names):
                raise SlpSyntaxError("duplicate variable name", lineno, indent + 1)
        else:
            if word != "poly":
                raise SlpSyntaxError(f"expected 'poly', found {word!r}", lineno, indent + 1)
            col0 = indent + len(word) + 2
            polys.append(parse_polynomial(rest, field, names, lineno, col0))
            texts.append(rest.strip())
    if field is None:
        raise SlpSyntaxError("empty input", 1, 1)
    if names is None:
        raise SlpSyntaxError("missing 'vars' line", 1, 1)
    if not polys:
        raise SlpSyntaxError("no polynomials given", 1, 1)
    return ParsedSystem(field, names, polys, texts)


def parse_system(text: str) -> tuple[Field, list[Slp]]:
    ps = parse_system_full(text)
    return ps.field, ps.polys


def format_system(field: Field, var_names: Sequence[str], poly_texts: Iterable[str]) -> str:
    """Text form accepted by parse_system (handy for tests and fixtures)."""
    head = f"field p={field.p} ext={field.k}\nvars {' '.join(var_names)}\n"
    return head + "".join(f"poly {t}\n" for t in poly_texts)
