"""Quantifier-free arithmetic formulas over counting variables."""

from dataclasses import dataclass
from operator import add, eq, ge, gt, le, lt, mul, ne
from typing import Callable, Dict, Final, FrozenSet, Mapping

from vrhr.errors import MissingVariableError

Valuation = Mapping[str, int]

COMPARISON_OPERATORS: Final[Dict[str, Callable[[int, int], bool]]] = {
    "=": eq,
    "!=": ne,
    "<": lt,
    "<=": le,
    ">": gt,
    ">=": ge,
}


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Const:
    value: int


@dataclass(frozen=True, slots=True)
class Add:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True, slots=True)
class Compare:
    op: str
    left: "Expression"
    right: "Expression"

    def __post_init__(self) -> None:
        if self.op not in COMPARISON_OPERATORS:
            raise ValueError(f"unknown comparison {self.op!r}")


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True, slots=True)
class BoolConst:
    value: bool


Expression = Var | Const | Add | Mul
Formula = Compare | And | Or | Not | BoolConst

_ARITHMETIC: Final = {Add: add, Mul: mul}


def eval_expression(e: Expression, v: Valuation) -> int:
    if isinstance(e, Var):
        if e.name not in v:
            raise MissingVariableError(e.name)
        return v[e.name]
    if isinstance(e, Const):
        return e.value
    return _ARITHMETIC[type(e)](eval_expression(e.left, v), eval_expression(e.right, v))


def eval_formula(f: Formula, v: Valuation) -> bool:
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, Compare):
        return COMPARISON_OPERATORS[f.op](
            eval_expression(f.left, v), eval_expression(f.right, v)
        )
    if isinstance(f, Not):
        return not eval_formula(f.operand, v)
    if isinstance(f, And):
        return eval_formula(f.left, v) and eval_formula(f.right, v)
    return eval_formula(f.left, v) or eval_formula(f.right, v)


def free_variables(f: Formula | Expression) -> FrozenSet[str]:
    if isinstance(f, Var):
        return frozenset({f.name})
    if isinstance(f, (Const, BoolConst)):
        return frozenset()
    if isinstance(f, Not):
        return free_variables(f.operand)
    return free_variables(f.left) | free_variables(f.right)


# binding strength, loosest first
_PRECEDENCE: Final = {Or: 1, And: 2, Not: 3, Compare: 4, Add: 5, Mul: 6}
_ATOM: Final = 7
_SYMBOL: Final = {Or: "or", And: "and", Add: "+", Mul: "*"}


def _precedence(f: Formula | Expression) -> int:
    return _PRECEDENCE.get(type(f), _ATOM)


def _wrapped(f: Formula | Expression, minimum: int) -> str:
    text = render_formula(f)
    return f"({text})" if _precedence(f) < minimum else text


def render_formula(f: Formula | Expression) -> str:
    """Surface syntax; binary connectives associate to the left."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return str(f.value)
    if isinstance(f, BoolConst):
        return "true" if f.value else "false"
    level = _precedence(f)
    if isinstance(f, Not):
        return f"not {_wrapped(f.operand, level)}"
    if isinstance(f, Compare):
        return f"{_wrapped(f.left, level + 1)} {f.op} {_wrapped(f.right, level + 1)}"
    symbol = _SYMBOL[type(f)]
    return f"{_wrapped(f.left, level)} {symbol} {_wrapped(f.right, level + 1)}"
