"""Line-oriented network description language (``.mzn`` files).

One statement per line, ``#`` starts a comment::

    input 1 0 0 0                 # upper re, upper im, lower re, lower im
    bs
    phase lower ZETA
    mzi phi=pi/2
    chain n=3 psi=pi phi=PHI
    fig1 zeta=0 phi=PHI

Phase expressions are a decimal literal, ``pi``, ``pi/INT``, ``INT*pi`` or
``INT*pi/INT`` (optionally negated), or an uppercase parameter name. Elements
act in source order: the first element listed is the first one the light meets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .networks import MZI, BeamSplitter, CbwChainSpec, Fig1Spec, Network, PhaseShift
from .xfer import FieldPair

MAX_PARAMS = 8

_NAME = re.compile(r"[A-Z][A-Z0-9_]*\Z")
_NUM = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")
_PI = re.compile(r"(?P<sign>-)?(?:(?P<num>\d+)\*)?pi(?:/(?P<den>\d+))?\Z")
_INT = re.compile(r"\d+\Z")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class BindError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class PiFrac:
    """``num * pi / den``."""

    num: int = 1
    den: int = 1

    @property
    def value(self) -> float:
        return self.num * math.pi / self.den

    def __str__(self):
        sign = "-" if self.num < 0 else ""
        k = abs(self.num)
        head = "pi" if k == 1 else f"{k}*pi"
        return sign + head + ("" if self.den == 1 else f"/{self.den}")


@dataclass(frozen=True)
class Param:
    name: str

    def __str__(self):
        return self.name


Expr = Union[Num, PiFrac, Param]


@dataclass(frozen=True)
class Bs:
    def __str__(self):
        return "bs"


@dataclass(frozen=True)
class Phase:
    arm: str
    theta: Expr

    def __str__(self):
        return f"phase {self.arm} {self.theta}"


@dataclass(frozen=True)
class Mzi:
    phi: Expr

    def __str__(self):
        return f"mzi phi={self.phi}"


@dataclass(frozen=True)
class Chain:
    n: int
    psi: Expr
    phi: Expr

    def __str__(self):
        return f"chain n={self.n} psi={self.psi} phi={self.phi}"


@dataclass(frozen=True)
class Fig1:
    zeta: Expr
    phi: Expr

    def __str__(self):
        return f"fig1 zeta={self.zeta} phi={self.phi}"


Statement = Union[Bs, Phase, Mzi, Chain, Fig1]


@dataclass(frozen=True)
class Program:
    input: tuple  # four constant Exprs: upper re/im, lower re/im
    elements: tuple

    @property
    def parameters(self) -> tuple[str, ...]:
        """Parameter names in order of first use."""
        seen: dict[str, None] = {}
        for stmt in self.elements:
            for v in vars(stmt).values():
                if isinstance(v, Param):
                    seen.setdefault(v.name)
        return tuple(seen)

    def to_source(self) -> str:
        lines = ["input " + " ".join(str(e) for e in self.input)]
        lines += [str(s) for s in self.elements]
        return "\n".join(lines) + "\n"


def parse_expr(text: str, allow_params: bool = True) -> Expr:
    """Parse a single phase expression; raises ValueError on bad input."""
    if _NUM.match(text):
        value = float(text)
        if not math.isfinite(value):
            raise ValueError(f"non-finite literal {text!r}")
        return Num(value)
    m = _PI.match(text)
    if m:
        num = int(m["num"]) if m["num"] else 1
        den = int(m["den"]) if m["den"] else 1
        if den == 0:
            raise ValueError("division by zero in phase expression")
        return PiFrac(-num if m["sign"] else num, den)
    if _NAME.match(text):
        if not allow_params:
            raise ValueError(f"parameter {text!r} not allowed here")
        return Param(text)
    raise ValueError(f"malformed expression {text!r}")


def eval_expr(expr: Expr, bindings: Mapping[str, float] | None = None):
    if isinstance(expr, Param):
        if bindings is None or expr.name not in bindings:
            raise BindError(f"unbound parameter {expr.name}")
        return bindings[expr.name]
    return expr.value


def const_value(text: str) -> float:
    """Numeric value of a parameter-free expression (used for CLI values)."""
    return float(eval_expr(parse_expr(text.strip(), allow_params=False)))


_KEYWORD_ARGS = {"mzi": ("phi",), "chain": ("n", "psi", "phi"), "fig1": ("zeta", "phi")}


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse(source: str) -> Program:
    """Parse program text; raises ParseError with the offending position."""
    lines = source.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    input_decl = None
    elements = []
    params: list[str] = []

    for lineno, raw in enumerate(lines, start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        kw, kcol = toks[0]
        args = toks[1:]

        def fail(msg, col=kcol):
            raise ParseError(lineno, col, msg)

        def expr(text, col, allow_params=True):
            try:
                e = parse_expr(text, allow_params)
            except ValueError as err:
                fail(str(err), col)
            if isinstance(e, Param) and e.name not in params:
                if len(params) >= MAX_PARAMS:
                    fail(f"too many parameters (at most {MAX_PARAMS})", col)
                params.append(e.name)
            return e

        if kw == "input":
            if input_decl is not None:
                fail("duplicate input declaration")
            if elements:
                fail("late input declaration: input must precede all elements")
            if len(args) != 4:
                fail("input takes 4 numbers: upper re, upper im, lower re, lower im")
            input_decl = tuple(expr(t, c, allow_params=False) for t, c in args)
            continue

        if kw == "bs":
            if args:
                fail("bs takes no arguments", args[0][1])
            elements.append(Bs())
        elif kw == "phase":
            if len(args) != 2:
                fail("phase takes an arm and an expression")
            (arm, acol), (e, ecol) = args
            if arm not in ("upper", "lower"):
                fail(f"arm must be 'upper' or 'lower', got {arm!r}", acol)
            elements.append(Phase(arm, expr(e, ecol)))
        elif kw in _KEYWORD_ARGS:
            wanted = _KEYWORD_ARGS[kw]
            got = {}
            for tok, col in args:
                key, eq, val = tok.partition("=")
                if not eq or not val:
                    fail(f"expected key=value, got {tok!r}", col)
                if key not in wanted:
                    fail(f"unknown argument {key!r} for {kw}", col)
                if key in got:
                    fail(f"duplicate argument {key!r}", col)
                vcol = col + len(key) + 1
                if key == "n":
                    if not _INT.match(val):
                        fail(f"n must be an integer, got {val!r}", vcol)
                    if int(val) < 1:
                        fail("n must be >= 1", vcol)
                    got[key] = int(val)
                else:
                    got[key] = expr(val, vcol)
            missing = [k for k in wanted if k not in got]
            if missing:
                fail(f"{kw} is missing {', '.join(missing)}")
            cls = {"mzi": Mzi, "chain": Chain, "fig1": Fig1}[kw]
            elements.append(cls(**got))
        else:
            fail(f"unknown keyword {kw!r}")

    if input_decl is None:
        raise ParseError(1, 1, "missing input declaration")
    return Program(input_decl, tuple(elements))


def load(path) -> Program:
    return parse(Path(path).read_bytes().decode("utf-8"))


def bind(program: Program, bindings: Mapping[str, float] | None = None) -> Network:
    """Substitute parameter values and build a numeric Network.

    Values may be numpy arrays, which yields a batched network (used by scans).
    """
    bindings = dict(bindings or {})
    unknown = sorted(set(bindings) - set(program.parameters))
    if unknown:
        raise BindError(f"unknown parameter(s): {', '.join(unknown)}")
    missing = [p for p in program.parameters if p not in bindings]
    if missing:
        raise BindError(f"unbound parameter(s): {', '.join(missing)}")

    def ev(e):
        return eval_expr(e, bindings)

    u_re, u_im, l_re, l_im = (ev(e) for e in program.input)
    elements = []
    for s in program.elements:
        if isinstance(s, Bs):
            elements.append(BeamSplitter())
        elif isinstance(s, Phase):
            elements.append(PhaseShift(s.arm, ev(s.theta)))
        elif isinstance(s, Mzi):
            elements.append(MZI(ev(s.phi)))
        elif isinstance(s, Chain):
            elements.append(CbwChainSpec(s.n, ev(s.phi), ev(s.psi)))
        else:
            elements.append(Fig1Spec(ev(s.zeta), ev(s.phi)))
    return Network(FieldPair(complex(u_re, u_im), complex(l_re, l_im)), tuple(elements))
