from typing import Final, List

import ply.lex as lex

from vrhr.errors import SpecSyntaxError

keywords: Final = [
    "IMPORT",
    "PROCESS",
    "PLACES",
    "INIT",
    "OBS",
    "INT",
    "PORT",
    "VARS",
    "VR",
    "HR",
    "GRAMMAR",
    "AXIOM",
    "VERTEX",
    "EDGE",
    "UNION",
    "COMPOSE",
    "ADD_EDGE",
    "RELAB",
    "EMPTY",
    "LABELING",
    "FORMULA",
    "ANALYSIS",
    "UNBOUNDED",
    "AND",
    "OR",
    "NOT",
    "TRUE",
    "FALSE",
    "FORALL",
    "EXISTS",
]

tokens = keywords + [
    "ID",
    "NUMBER",
    "STRING",
    "ARROW",
    "LE",
    "GE",
    "NE",
    "LT",
    "GT",
    "EQUAL",
    "PLUS",
    "STAR",
    "LPAREN",
    "RPAREN",
    "LBRACKET",
    "RBRACKET",
    "LBRACE",
    "RBRACE",
    "COMMA",
    "SEMI",
    "COLON",
    "DOT",
]

t_ARROW = r"->"
t_LE = r"<="
t_GE = r">="
t_NE = r"!="
t_LT = r"<"
t_GT = r">"
t_EQUAL = r"="
t_PLUS = r"\+"
t_STAR = r"\*"
t_LPAREN = r"\("
t_RPAREN = r"\)"
t_LBRACKET = r"\["
t_RBRACKET = r"\]"
t_LBRACE = r"{"
t_RBRACE = r"}"
t_COMMA = r","
t_SEMI = r";"
t_COLON = r":"
t_DOT = r"\."
t_ignore_COMMENT = r"\#.*"

keywords_map: Final = {k.lower(): k for k in keywords}


def t_ID(t):
    r"[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z0-9_]+)*"
    t.type = keywords_map.get(t.value, "ID")
    return t


def t_NUMBER(t):
    r"\d+"
    t.value = int(t.value)
    return t


def t_STRING(t):
    r'"[^"\n]*"'
    t.value = t.value[1:-1]
    return t


t_ignore = " \t\r"


def t_newline(t):
    r"\n+"
    t.lexer.lineno += t.value.count("\n")


def column_of(text: str, position: int) -> int:
    return position - text.rfind("\n", 0, position)


def t_error(t):
    column = column_of(t.lexer.lexdata, t.lexpos)
    raise SpecSyntaxError(f"illegal character {t.value[0]!r}", t.lineno, column)


def build():
    return lex.lex()


def tokenize(text: str) -> List[lex.LexToken]:
    lexer = build()
    lexer.input(text)
    return list(lexer)
