import pytest

from vrhr._enum import Algebra
from vrhr.algebra.terms import AddEdge, NonterminalRef, Relab
from vrhr.config import Bounds, get_bundled_spec
from vrhr.errors import QuantifierError, ResolutionError, SpecSyntaxError
from vrhr.frontend.lexer import tokenize
from vrhr.frontend.parser import load_spec, parse_formula, parse_spec, parse_term
from vrhr.frontend.printer import print_spec
from vrhr.frontend.spec import Analysis, resolve_spec

BUNDLED = ["processes", "k_nm", "clique", "star", "azure"]

DANGLING = """\
process A { places a, b; init a; obs t: a -> b; }
port p: A;
vars x;
labeling L { c -> x; a -> z; }
formula f = w >= 1;
analysis main { grammar G; labeling M; formula g; max_steps = unbounded; depth = 3; }
"""


def test_tokens():
    assert [t.type for t in tokenize("x >= 2 # trailing")] == ["ID", "GE", "NUMBER"]
    assert [t.value for t in tokenize("pi.send.bar -> q")] == ["pi.send.bar", "->", "q"]
    assert tokenize("grammar")[0].type == "GRAMMAR"


def test_indexed_nonterminals_are_single_tokens():
    tokens = tokenize("S.0 -> K.2; t.12.bar")
    assert [(t.type, t.value) for t in tokens] == [
        ("ID", "S.0"),
        ("ARROW", "->"),
        ("ID", "K.2"),
        ("SEMI", ";"),
        ("ID", "t.12.bar"),
    ]
    assert parse_term("union(S.0, vertex[pi])").left == NonterminalRef("S.0")


def test_illegal_character_position():
    with pytest.raises(SpecSyntaxError) as info:
        tokenize("vars x;\n  @")
    assert (info.value.line, info.value.column) == (2, 3)
    assert str(info.value).startswith("2:3: illegal character")


def test_k_nm_parses(k_nm_spec):
    assert set(k_nm_spec.processes) == {"Once", "Loop"}
    assert len(k_nm_spec.grammars) == len(k_nm_spec.formulas) == 1
    assert k_nm_spec.ports == {"pi": "Once", "pi2": "Loop"}
    assert k_nm_spec.variables == ("x", "y")
    gamma = k_nm_spec.grammar()
    assert gamma.algebra is Algebra.VR
    assert gamma.axioms == ("S",)
    assert len(gamma.rules) == 4
    assert k_nm_spec.labelings["L"] == {"on": "x", "off": "y"}
    assert k_nm_spec.analysis().bounds() == Bounds(max_steps=6)


def test_term_syntax():
    term = parse_term("relab[pi -> pi](add_edge[(send, recv); pi -> pi2](K))")
    assert isinstance(term, Relab)
    assert isinstance(term.child, AddEdge)
    assert term.child.label == ("send", "recv")
    assert term.child.child == NonterminalRef("K")


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("vars x", "expected semi"),
        ("process A { places a; }", "no init place"),
        ("process A { init a; obs t a -> b; }", "expected colon"),
        ("port p: A; frobnicate;", "unexpected 'frobnicate'"),
        ("vr grammar G { S -> vertex[]; }", "expected id"),
        ("analysis main { grammar G; }", "needs a grammar and a formula"),
        ("vars x; formula a = x = 1; formula a = x = 2;", "formula a declared twice"),
        ("port p: A; port p: B;", "port p declared twice"),
    ],
)
def test_syntax_errors(text, message):
    with pytest.raises(SpecSyntaxError, match=message):
        parse_spec(text)


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("x + 1", "expected a condition"),
        ("x = 1 and y", "expected a condition"),
        ("(x = 1) + 2 = 3", "expected a number"),
        ("x = ", "expected a formula"),
        ("x = 1 y", "unexpected 'y'"),
    ],
)
def test_formula_errors(text, message):
    with pytest.raises(SpecSyntaxError, match=message):
        parse_formula(text)


@pytest.mark.parametrize("text", ["forall x . x = 1", "y = 1 and exists x . x = y"])
def test_quantifiers_rejected(text):
    with pytest.raises(QuantifierError):
        parse_formula(text)


def test_dangling_references(tmp_path):
    path = tmp_path / "dangling.spec"
    path.write_text(DANGLING, encoding="utf-8")
    with pytest.raises(ResolutionError):
        load_spec(path)
    report = resolve_spec(load_spec(path, resolve=False))
    assert set(report.codes()) == {
        "unknown-place",
        "unknown-variable",
        "unknown-grammar",
        "unknown-formula",
        "unknown-labeling",
        "unknown-bound",
    }
    assert report.codes().count("unknown-variable") == 2
    assert report.codes().count("unknown-bound") == 2


def test_imports(tmp_path):
    (tmp_path / "types.spec").write_text(
        "process A { places a; init a; }\nport p: A;\n", encoding="utf-8"
    )
    (tmp_path / "main.spec").write_text(
        'import "types.spec";\nvars x;\nlabeling L { a -> x; }\n', encoding="utf-8"
    )
    spec = load_spec(tmp_path / "main.spec")
    assert spec.ports == {"p": "A"}
    assert spec.imports == ("types.spec",)


def test_import_cycle(tmp_path):
    (tmp_path / "a.spec").write_text('import "b.spec";\n', encoding="utf-8")
    (tmp_path / "b.spec").write_text('import "a.spec";\n', encoding="utf-8")
    with pytest.raises(ResolutionError, match="import cycle"):
        load_spec(tmp_path / "a.spec")


def test_missing_import(tmp_path):
    (tmp_path / "a.spec").write_text('import "nowhere.spec";\n', encoding="utf-8")
    with pytest.raises(ResolutionError, match="not found"):
        load_spec(tmp_path / "a.spec")
    with pytest.raises(ResolutionError, match="without a file location"):
        parse_spec('import "nowhere.spec";')


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_specs(name):
    spec = load_spec(get_bundled_spec(name))
    assert resolve_spec(spec).ok
    assert parse_spec(print_spec(spec)) == spec


def test_analysis_selection():
    clique = load_spec(get_bundled_spec("clique"))
    with pytest.raises(ResolutionError, match="2 analyses"):
        clique.analysis()
    with pytest.raises(ResolutionError, match="unknown analysis"):
        clique.analysis("nope")
    assert clique.analysis("parity").formula == "odd_high"


def test_analysis_bounds():
    analysis = Analysis("a", "G", "f", settings=(("max_steps", 3), ("max_vertices", None)))
    bounds = analysis.bounds(Bounds(max_states=10))
    assert bounds == Bounds(max_steps=3, max_vertices=None, max_states=10)
