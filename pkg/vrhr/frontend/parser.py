"""Recursive-descent parser for spec files.

Statements::

    import "common.spec";
    process P { places a, b; init a; obs t: a -> b; int u: b -> a; }
    port pi: P;
    vars x, y;
    vr grammar G { axiom S; S -> relab[](K); K -> vertex[pi]; }
    labeling L { a -> x; }
    formula alpha = y >= x + 2;
    analysis main { grammar G; labeling L; formula alpha; max_steps = 6; }
"""

import logging
from pathlib import Path
from typing import Dict, Final, FrozenSet, List, Optional, Tuple, Union

from vrhr._enum import Algebra
from vrhr.algebra.portmap import PortMap
from vrhr.algebra.terms import (
    AddEdge,
    Compose,
    Edge,
    Empty,
    NonterminalRef,
    Relab,
    Term,
    Union as UnionTerm,
    Vertex,
)
from vrhr.errors import QuantifierError, ResolutionError, SpecSyntaxError
from vrhr.frontend.lexer import column_of, tokenize
from vrhr.frontend.spec import Analysis, SpecFile, resolve_spec
from vrhr.grammar.grammar import Grammar, Rule
from vrhr.graph.alphabet import EdgeLabel
from vrhr.petri.process import LocalTransition, ProcessType
from vrhr.reach.formula import (
    Add,
    And,
    BoolConst,
    Compare,
    Const,
    Expression,
    Formula,
    Mul,
    Not,
    Or,
    Var,
)

_LOGGER: Final = logging.getLogger(__name__)

_COMPARISONS: Final = frozenset({"EQUAL", "NE", "LT", "LE", "GT", "GE"})
_BOOLEAN: Final = (Compare, And, Or, Not, BoolConst)
_ARITHMETIC: Final = (Var, Const, Add, Mul)

Node = Union[Formula, Expression]


class _Parser:
    def __init__(self, text: str) -> None:
        self._text = text
        self._tokens = tokenize(text)
        self._pos = 0
        self.imports: List[str] = []

    # token stream

    def _peek(self, offset: int = 0):
        index = self._pos + offset
        return self._tokens[index] if index < len(self._tokens) else None

    def _at(self, *types: str) -> bool:
        token = self._peek()
        return token is not None and token.type in types

    def _error(self, message: str, token=None, exc_type=SpecSyntaxError) -> SpecSyntaxError:
        token = token or self._peek()
        if token is None:
            line = self._text.count("\n") + 1
            return exc_type(f"{message} at end of input", line, 1)
        return exc_type(message, token.lineno, column_of(self._text, token.lexpos))

    def _expect(self, type_: str):
        token = self._peek()
        if token is None or token.type != type_:
            found = "end of input" if token is None else repr(token.value)
            raise self._error(f"expected {type_.lower()}, found {found}")
        self._pos += 1
        return token

    def _accept(self, type_: str) -> bool:
        if self._at(type_):
            self._pos += 1
            return True
        return False

    def _id(self) -> str:
        return self._expect("ID").value

    def _id_list(self) -> List[str]:
        names = [self._id()]
        while self._accept("COMMA"):
            names.append(self._id())
        return names

    def done(self) -> None:
        if self._peek() is not None:
            raise self._error(f"unexpected {self._peek().value!r}")

    # statements

    def spec(self) -> SpecFile:
        processes: Dict[str, ProcessType] = {}
        ports: Dict[str, str] = {}
        variables: List[str] = []
        grammars: Dict[str, Grammar] = {}
        labelings: Dict[str, Dict[str, str]] = {}
        formulas: Dict[str, Formula] = {}
        analyses: Dict[str, Analysis] = {}

        def _declare(table: dict, name: str, value: object, kind: str, token) -> None:
            if name in table:
                raise self._error(f"{kind} {name} declared twice", token)
            table[name] = value

        while self._peek() is not None:
            token = self._peek()
            if self._accept("IMPORT"):
                self.imports.append(self._expect("STRING").value)
                self._expect("SEMI")
            elif self._at("PROCESS"):
                ptype = self.process()
                _declare(processes, ptype.name, ptype, "process", token)
            elif self._accept("PORT"):
                names = self._id_list()
                self._expect("COLON")
                ptype_name = self._id()
                self._expect("SEMI")
                for name in names:
                    _declare(ports, name, ptype_name, "port", token)
            elif self._accept("VARS"):
                variables.extend(self._id_list())
                self._expect("SEMI")
            elif self._at("VR", "HR"):
                grammar = self.grammar()
                _declare(grammars, grammar.name, grammar, "grammar", token)
            elif self._at("LABELING"):
                name, labeling = self.labeling()
                _declare(labelings, name, labeling, "labeling", token)
            elif self._accept("FORMULA"):
                name = self._id()
                self._expect("EQUAL")
                formula = self.formula()
                self._expect("SEMI")
                _declare(formulas, name, formula, "formula", token)
            elif self._at("ANALYSIS"):
                analysis = self.analysis()
                _declare(analyses, analysis.name, analysis, "analysis", token)
            else:
                raise self._error(f"unexpected {token.value!r}")

        return SpecFile(
            processes=processes,
            ports=ports,
            variables=tuple(dict.fromkeys(variables)),
            grammars=grammars,
            labelings=labelings,
            formulas=formulas,
            analyses=analyses,
            imports=tuple(self.imports),
        )

    def process(self) -> ProcessType:
        start = self._expect("PROCESS")
        name = self._id()
        self._expect("LBRACE")
        places: List[str] = []
        init: Optional[str] = None
        transitions: List[Tuple[LocalTransition, bool]] = []
        while not self._accept("RBRACE"):
            if self._accept("PLACES"):
                places.extend(self._id_list())
            elif self._accept("INIT"):
                init = self._id()
            elif self._at("OBS", "INT"):
                observable = self._expect(self._peek().type).type == "OBS"
                t = self._id()
                self._expect("COLON")
                source = self._id()
                self._expect("ARROW")
                target = self._id()
                transitions.append(((t, source, target), observable))
            else:
                raise self._error("expected places, init, obs or int")
            self._expect("SEMI")
        if init is None:
            raise self._error(f"process {name} has no init place", start)
        return ProcessType.from_ordered(name, places, init, transitions)

    def grammar(self) -> Grammar:
        algebra = Algebra.from_keyword(self._expect(self._peek().type).value)
        self._expect("GRAMMAR")
        name = self._id()
        self._expect("LBRACE")
        axioms: List[str] = []
        rules: List[Rule] = []
        while not self._accept("RBRACE"):
            if self._accept("AXIOM"):
                axioms.extend(self._id_list())
            else:
                lhs = self._id()
                self._expect("ARROW")
                rules.append(Rule(lhs, self.term()))
            self._expect("SEMI")
        return Grammar.build(name, algebra, rules, axioms)

    def labeling(self) -> Tuple[str, Dict[str, str]]:
        self._expect("LABELING")
        name = self._id()
        self._expect("LBRACE")
        mapping: Dict[str, str] = {}
        while not self._accept("RBRACE"):
            place = self._id()
            self._expect("ARROW")
            mapping[place] = self._id()
            self._expect("SEMI")
        return name, mapping

    def analysis(self) -> Analysis:
        self._expect("ANALYSIS")
        name = self._id()
        self._expect("LBRACE")
        refs: Dict[str, str] = {}
        settings: List[Tuple[str, Optional[int]]] = []
        while not self._accept("RBRACE"):
            if self._at("GRAMMAR", "LABELING", "FORMULA"):
                kind = self._expect(self._peek().type).type.lower()
                refs[kind] = self._id()
            else:
                key = self._id()
                self._expect("EQUAL")
                value = None if self._accept("UNBOUNDED") else self._expect("NUMBER").value
                settings.append((key, value))
            self._expect("SEMI")
        if "grammar" not in refs or "formula" not in refs:
            raise self._error(f"analysis {name} needs a grammar and a formula")
        return Analysis(
            name, refs["grammar"], refs["formula"], refs.get("labeling"), tuple(settings)
        )

    # terms

    def _label(self) -> EdgeLabel:
        if self._accept("LPAREN"):
            left = self._id()
            self._expect("COMMA")
            right = self._id()
            self._expect("RPAREN")
            return left, right
        return self._id()

    def _edge_head(self) -> Tuple[EdgeLabel, str, str]:
        self._expect("LBRACKET")
        label = self._label()
        self._expect("SEMI")
        source = self._id()
        self._expect("ARROW")
        target = self._id()
        self._expect("RBRACKET")
        return label, source, target

    def _pair(self) -> Tuple[Term, Term]:
        self._expect("LPAREN")
        left = self.term()
        self._expect("COMMA")
        right = self.term()
        self._expect("RPAREN")
        return left, right

    def _argument(self) -> Term:
        self._expect("LPAREN")
        child = self.term()
        self._expect("RPAREN")
        return child

    def term(self) -> Term:
        if self._accept("VERTEX"):
            self._expect("LBRACKET")
            port = self._id()
            self._expect("RBRACKET")
            return Vertex(port)
        if self._accept("EDGE"):
            return Edge(*self._edge_head())
        if self._accept("UNION"):
            return UnionTerm(*self._pair())
        if self._accept("COMPOSE"):
            return Compose(*self._pair())
        if self._accept("ADD_EDGE"):
            label, source, target = self._edge_head()
            return AddEdge(label, source, target, self._argument())
        if self._accept("RELAB"):
            self._expect("LBRACKET")
            pairs: List[Tuple[str, str]] = []
            while not self._accept("RBRACKET"):
                if pairs:
                    self._expect("COMMA")
                source = self._id()
                self._expect("ARROW")
                pairs.append((source, self._id()))
            return Relab(PortMap.from_pairs(pairs), self._argument())
        if self._accept("EMPTY"):
            return Empty()
        if self._at("ID"):
            return NonterminalRef(self._id())
        raise self._error("expected a term")

    # formulas

    def _require(self, node: Node, kinds: tuple, what: str, token) -> None:
        if not isinstance(node, kinds):
            raise self._error(f"expected {what}", token)

    def formula(self) -> Formula:
        token = self._peek()
        node = self._or()
        self._require(node, _BOOLEAN, "a condition", token)
        return node  # type: ignore[return-value]

    def _or(self) -> Node:
        token = self._peek()
        node = self._and()
        while self._accept("OR"):
            right_token = self._peek()
            right = self._and()
            self._require(node, _BOOLEAN, "a condition", token)
            self._require(right, _BOOLEAN, "a condition", right_token)
            node = Or(node, right)
        return node

    def _and(self) -> Node:
        token = self._peek()
        node = self._not()
        while self._accept("AND"):
            right_token = self._peek()
            right = self._not()
            self._require(node, _BOOLEAN, "a condition", token)
            self._require(right, _BOOLEAN, "a condition", right_token)
            node = And(node, right)
        return node

    def _not(self) -> Node:
        if self._accept("NOT"):
            token = self._peek()
            operand = self._not()
            self._require(operand, _BOOLEAN, "a condition", token)
            return Not(operand)
        return self._comparison()

    def _comparison(self) -> Node:
        token = self._peek()
        left = self._sum()
        if not self._at(*_COMPARISONS):
            return left
        op = self._expect(self._peek().type).value
        right_token = self._peek()
        right = self._sum()
        self._require(left, _ARITHMETIC, "a number", token)
        self._require(right, _ARITHMETIC, "a number", right_token)
        return Compare(op, left, right)

    def _sum(self) -> Node:
        token = self._peek()
        node = self._product()
        while self._accept("PLUS"):
            right_token = self._peek()
            right = self._product()
            self._require(node, _ARITHMETIC, "a number", token)
            self._require(right, _ARITHMETIC, "a number", right_token)
            node = Add(node, right)
        return node

    def _product(self) -> Node:
        token = self._peek()
        node = self._atom()
        while self._accept("STAR"):
            right_token = self._peek()
            right = self._atom()
            self._require(node, _ARITHMETIC, "a number", token)
            self._require(right, _ARITHMETIC, "a number", right_token)
            node = Mul(node, right)
        return node

    def _atom(self) -> Node:
        if self._at("FORALL", "EXISTS"):
            raise self._error("quantified formulas unsupported", exc_type=QuantifierError)
        if self._at("NUMBER"):
            return Const(self._expect("NUMBER").value)
        if self._at("ID"):
            return Var(self._id())
        if self._accept("TRUE"):
            return BoolConst(True)
        if self._accept("FALSE"):
            return BoolConst(False)
        if self._accept("LPAREN"):
            node = self._or()
            self._expect("RPAREN")
            return node
        raise self._error("expected a formula")


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    term = parser.term()
    parser.done()
    return term


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    formula = parser.formula()
    parser.done()
    return formula


def _parse_with_imports(
    text: str, base_dir: Optional[Path], loading: FrozenSet[Path]
) -> SpecFile:
    parser = _Parser(text)
    own = parser.spec()
    spec = SpecFile()
    for name in own.imports:
        if base_dir is None:
            raise ResolutionError(f"cannot resolve import {name!r} without a file location")
        path = (base_dir / name).resolve()
        if path in loading:
            raise ResolutionError(f"import cycle through {path}")
        if not path.is_file():
            raise ResolutionError(f"imported file {name!r} not found")
        _LOGGER.debug("importing %s", path)
        imported = _parse_with_imports(
            path.read_text(encoding="utf-8"), path.parent, loading | {path}
        )
        spec = spec.merged(imported)
    return spec.merged(own)


def parse_spec(text: str, base_dir: Optional[Path] = None) -> SpecFile:
    """Parse and resolve a spec; imports are looked up relative to ``base_dir``.

    Raises ``SpecSyntaxError`` (``QuantifierError`` for quantified formulas)
    or ``ResolutionError`` for dangling references.
    """
    spec = _parse_with_imports(text, base_dir, frozenset())
    resolve_spec(spec).raise_if_failed(ResolutionError)
    return spec


def load_spec(path: Union[str, Path], resolve: bool = True) -> SpecFile:
    """Read a spec file; with ``resolve=False`` dangling references are left for the caller."""
    path = Path(path).resolve()
    spec = _parse_with_imports(path.read_text(encoding="utf-8"), path.parent, frozenset({path}))
    if resolve:
        resolve_spec(spec).raise_if_failed(ResolutionError)
    return spec
