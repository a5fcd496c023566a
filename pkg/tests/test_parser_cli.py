import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import elements, signatures
from bvloop import bv, cli
from bvloop.config import RunConfig
from bvloop.parser import Bracket, Delta, ExpressionError, Product, Sum, eval_expr, parse, tokenize
from bvloop.render import render
from bvloop.superalgebra import AlgebraError, Basis, Signature, generator
from bvloop.tables import emit_table, table_entries

S1, S2 = Signature(1), Signature(2)


# -- parsing --------------------------------------------------------------


def test_parse_shapes():
    node = parse("a3*e2 + 2*e4")
    assert isinstance(node, Sum) and len(node.terms) == 2
    assert isinstance(node.terms[0][1], Product)
    assert isinstance(parse("{a3*e2, e2}"), Bracket)
    assert isinstance(parse(" D ( a3 ) "), Delta)


def test_tokens_keep_positions():
    toks = tokenize("a3 * 1/2")
    assert toks[0] == ("sym", "a3", 0)
    assert toks[2] == ("rat", "1/2", 5)


@pytest.mark.parametrize("src,col", [("a3*(e2 + ", 10), ("a3 ? e2", 4), ("{a3 e2}", 5), ("e2^x3", 4), ("", 1), ("e2)", 3)])
def test_syntax_errors_point_at_column(src, col):
    with pytest.raises(ExpressionError) as info:
        parse(src)
    assert info.value.pos + 1 == col


def test_symbols_are_checked_at_evaluation():
    node = parse("a9 + e2")  # parses for any signature
    assert isinstance(node, Sum)
    with pytest.raises(ExpressionError, match="a9"):
        eval_expr("a9 + e2", S2)
    with pytest.raises(ExpressionError):
        eval_expr("e3", S2)
    with pytest.raises(ExpressionError):
        eval_expr("e2", Signature(2, 2))
    with pytest.raises(ExpressionError, match="mix"):
        eval_expr("x3*a5", S2)


# -- evaluation ------------------------------------------------------------


def test_eval_examples():
    assert eval_expr("D(a3*e2)", S1) == 1
    assert eval_expr("{a3*e2, e2}", S1) == -generator(S1, "e", 1)
    assert eval_expr("e2*e2 - e2^2", S1) == 0
    assert eval_expr("a3^2", S2) == 0
    assert eval_expr("a3^1", S2) == generator(S2, "a", 1)
    assert eval_expr("1/2*e2 + 1/2*e2", S1) == generator(S1, "e", 1)


def test_eval_h_and_x():
    assert eval_expr("h4", S2) == bv.newton_primitive(2, S2)
    assert eval_expr("D(e4)", S2) == 0
    z = eval_expr("D(x3*e4)", S2)
    assert z.basis is Basis.PONTRJAGIN
    assert z == -(generator(S2, "x", 1) * generator(S2, "x", 2))
    sym = eval_expr("h4", RunConfig(n=2, basis="symplectic"))
    assert sym == generator(S2, "h", 2)


@given(st.data())
def test_render_parse_round_trip(data):
    sig = data.draw(signatures(max_n=4, stiefel=True))
    x = data.draw(elements(sig, bound=6, max_terms=5))
    x = x.scale(data.draw(st.sampled_from([1, -1, 2, 3])))
    assert eval_expr(render(x), sig) == x
    half = x.scale(Fraction(1, 2))
    assert eval_expr(render(half), sig) == half
    assert eval_expr(f"1/2*({render(x)})", sig) == half


@given(st.data())
def test_reassociation_up_to_sign(data):
    sig = data.draw(signatures())
    pool = ["a%d" % (2 * l + 1) for l in sig.indices] + ["e%d" % (2 * l) for l in sig.indices]
    fs = data.draw(st.lists(st.sampled_from(pool), min_size=3, max_size=5))
    left = "(" * (len(fs) - 1) + fs[0] + "".join(f"*{f})" for f in fs[1:])
    right = "*".join(fs)
    assert eval_expr(left, sig) == eval_expr(right, sig)
    # swapping two neighbours multiplies by the Koszul sign
    i = data.draw(st.integers(0, len(fs) - 2))
    swapped = fs[:i] + [fs[i + 1], fs[i]] + fs[i + 2:]
    sign = -1 if fs[i][0] == "a" and fs[i + 1][0] == "a" else 1
    assert eval_expr("*".join(swapped), sig) == eval_expr(right, sig).scale(sign)


# -- tables ------------------------------------------------------------------


def _find(entries, op, alpha, e, other=None):
    for entry in entries:
        if entry["op"] != op or entry["monomial"] != {"alpha": alpha, "e": e}:
            continue
        if other is None or entry.get("other") == other:
            return entry["value"]
    raise KeyError((op, alpha, e, other))


def test_table_examples():
    entries = table_entries(RunConfig(n=1, bound=4))
    assert _find(entries, "delta", [3], {"2": 1}) == [{"monomial": {"alpha": [], "e": {}}, "coeff": "1"}]
    value = _find(entries, "bracket", [3], {"2": 2}, {"alpha": [3], "e": {"2": 3}})
    assert value == [{"monomial": {"alpha": [3], "e": {"2": 4}}, "coeff": "-1"}]
    unit_only = table_entries(RunConfig(n=1, bound=0))
    assert {json.dumps(x["monomial"]) for x in unit_only} == {json.dumps({"alpha": [], "e": {}})}


def test_table_symplectic_uses_h_keys():
    entries = table_entries(RunConfig(n=2, bound=2, basis="symplectic"))
    keys = {tuple(sorted(x["monomial"])) for x in entries}
    assert keys == {("alpha", "h")}


def test_table_rationals_are_strings(tmp_path):
    out = tmp_path / "t.json"
    emit_table(RunConfig(n=2, bound=3, basis="symplectic", out=str(out)))
    doc = json.loads(out.read_text())
    coeffs = {c["coeff"] for entry in doc["entries"] for c in entry["value"]}
    assert all(isinstance(c, str) for c in coeffs)
    assert doc["signature"] == {"n": 2, "k": 1}


def test_latex_table():
    text = emit_table(RunConfig(n=1, bound=2, fmt="latex"))
    assert r"\alpha_{3}" in text and r"\{" in text


def test_run_config_validation():
    with pytest.raises(AlgebraError):
        RunConfig(n=2, k=3)
    with pytest.raises(AlgebraError):
        RunConfig(n=2, bound=-1)
    with pytest.raises(AlgebraError):
        RunConfig(n=2, basis="polar")


# -- command line ---------------------------------------------------------------


def test_cli_eval(capsys):
    assert cli.main(["eval", "--n", "1", "--expr", "{a3*e2, e2}"]) == 0
    assert capsys.readouterr().out.strip() == "-e2"
    assert cli.main(["eval", "--n", "2", "--expr", "h4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["coeff"] in ("1", "-1/2")


def test_cli_usage_errors(capsys):
    assert cli.main(["eval", "--n", "2", "--expr", "a3 +"]) == 2
    assert cli.main(["eval", "--n", "2", "--k", "3", "--expr", "1"]) == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["table", "--n", "1"])
    assert info.value.code == 2
    assert cli.main(["verify", "--n", "1", "--suite", "nope"]) == 2


def test_cli_verify_single_suite(capsys):
    assert cli.main(["verify", "--n", "2", "--bound", "4", "--suite", "delta-squared"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "delta-squared" in out


def test_cli_table_is_byte_stable(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        r = subprocess.run([sys.executable, "-m", "bvloop", "table", "--n", "2", "--bound", "3", "--out", str(p)],
                           capture_output=True)
        assert r.returncode == 0, r.stderr
    assert paths[0].read_bytes() == paths[1].read_bytes()
