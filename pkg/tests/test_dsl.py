"""The script language: tokenizer, parser, evaluator, and commands."""
import pytest

from tangentia.dsl import DslError, parse, run_source, tokenize


def run(src, **kw):
    return run_source(src, **kw)


def outputs(src, **kw):
    return [rec["output"] for rec in run(src, **kw)]


# -- tokenizer and statement splitting --------------------------------------


def test_tokenize_positions_and_comments():
    toks = tokenize("let f = x # trailing comment\n")
    assert [t.value for t in toks] == ["let", "f", "=", "x"]
    assert toks[0].line == 1 and toks[0].col == 1


def test_tokenize_rejects_stray_characters():
    with pytest.raises(DslError, match="line 1"):
        tokenize("let f = x $ y")


def test_statements_split_on_semicolons_and_newlines():
    a = run("variety polynomial(1) vars x; eval x; eval x*x")
    b = run("variety polynomial(1) vars x\neval x\neval x*x")
    assert a == b
    # newlines inside open parens do not split
    c = run("variety polynomial(1) vars x\nphi := auto(\n  x + x^2\n)\nia-level phi")
    assert c[0]["command"] == "ia-level"


# -- parser errors ----------------------------------------------------------


def test_unknown_statement():
    with pytest.raises(DslError, match="unknown statement"):
        run("variety polynomial(1) vars x; frobnicate x")


def test_unknown_variety_kind():
    with pytest.raises(DslError, match="unknown variety kind"):
        run("variety quantum(2)")


def test_variety_declared_twice():
    with pytest.raises(DslError, match="already declared"):
        run("variety polynomial(1) vars x; variety polynomial(1) vars y")


def test_command_before_variety():
    with pytest.raises(DslError, match="no variety declared"):
        run("eval 1")


def test_undefined_name_with_position():
    with pytest.raises(DslError, match="undefined name 'q'"):
        run("variety polynomial(1) vars x; eval q")


def test_empty_expression_in_let():
    with pytest.raises(DslError):
        run("variety polynomial(1) vars x; let f =")


def test_unbalanced_brackets():
    with pytest.raises(DslError):
        run("variety lie(2); eval [x1, x2")


# -- expressions ------------------------------------------------------------


def test_arithmetic_and_rationals():
    out = outputs(
        "variety polynomial(2) vars x,y\n"
        "let f = 1/2 + x - 3*x*y + y^2\n"
        "eval f\n"
        "eval -f\n"
        "eval 2/3 * f - f * 2/3"
    )
    assert out[0]["value"] == "1/2 + x + y^2 - 3*x*y"
    assert out[1]["value"] == "-1/2 - x - y^2 + 3*x*y"
    assert out[2]["value"] == "0"


def test_bracket_is_commutator_in_unital_varieties():
    out = outputs("variety assoc(2)\neval [x1,x2]\neval x1*x2 - x2*x1")
    assert out[0]["value"] == out[1]["value"] == "x1*x2 - x2*x1"


def test_bracket_is_product_in_lie_varieties():
    out = outputs("variety lie(2)\neval [x1,[x1,x2]]")
    assert out[0]["value"] == "[x1,[x1,x2]]"


def test_printed_elements_reparse_to_themselves():
    cases = [
        ("polynomial(2) vars x,y", "1/2 + x - 3*x*y + y^2"),
        ("assoc(2)", "x1*x2*x1 - 3*x2 + [x1,x2]"),
        ("lie(2)", "[x1,[x1,x2]] - 2*[x1,x2]"),
        ("metabelian(3)", "[[y2,y1],y3] + y1"),
    ]
    for decl, expr in cases:
        first = outputs(f"variety {decl}\neval {expr}")[0]["value"]
        second = outputs(f"variety {decl}\neval {first}")[0]["value"]
        assert first == second


def test_constants_rejected_in_lie_varieties():
    with pytest.raises(DslError, match="no constants"):
        run("variety lie(2); let c = 1")
    with pytest.raises(DslError):
        run("variety metabelian(2); eval y1 + 1")


def test_powers_rejected_in_lie_varieties():
    with pytest.raises(DslError):
        run("variety lie(2); eval x1^2")


# -- definitions and commands -----------------------------------------------


def test_auto_and_apply():
    out = outputs(
        "variety polynomial(2) vars x,y\n"
        "phi := auto(x + y^2, y)\n"
        "apply phi x*y"
    )
    assert out[0]["value"] == "x*y + y^3"


def test_deriv_and_divergence():
    out = outputs(
        "variety polynomial(2) vars x,y\n"
        "E := deriv(x, y)\n"
        "divergence E"
    )
    assert out[0]["divergence"] == "2"
    assert out[0]["is_zero"] is False


def test_ia_level_and_tangent():
    out = outputs(
        "variety polynomial(2) vars x,y\n"
        "phi := auto(x + y^2 + y^3, y)\n"
        "ia-level phi\n"
        "tangent phi as T\n"
        "divergence phi"
    )
    assert out[0]["status"] == "level" and out[0]["i"] == 1
    assert out[0]["text"] == "IA(1)"
    assert out[1]["coords"] == ["y^2", "0"]
    assert out[2]["is_zero"] is True


def test_jacobian_output():
    out = outputs(
        "variety polynomial(2) vars x,y\nphi := auto(x + y^2, y)\njacobian phi"
    )
    mat = out[0]["matrix"]
    # rows follow the coordinates: entry [i][j] differentiates f_i by x_j
    assert mat[0][0] == "1" and mat[0][1] == "2*y" and mat[1][1] == "1"
    assert mat[1][0] == "0"


def test_compose_invert_commutator():
    out = outputs(
        "variety polynomial(2) vars x,y\n"
        "phi := auto(x + y^2, y)\n"
        "psi := auto(x, y + x^2)\n"
        "compose phi psi as prod\n"
        "invert phi --degree 6 as phi_inv\n"
        "compose phi phi_inv as check\n"
        "ia-level check --max-degree 6\n"
        "commutator phi psi --degree 6 as comm\n"
        "ia-level comm --max-degree 6"
    )
    assert out[0]["images"][1] == "y + x^2 + 2*x*y^2 + y^4"
    assert out[1]["identity_through_degree"] is True
    assert out[3]["status"] == "identity"
    assert out[5]["status"] == "level" and out[5]["i"] == 2


def test_detect_wild_metabelian():
    out = outputs(
        "variety metabelian(3)\n"
        "phi := auto(y1 + [[y1,y2],y2], y2, y3)\n"
        "detect-wild phi --context metabelian"
    )
    rec = out[0]
    assert rec["verdict"] == "AbsolutelyWild"
    assert rec["min_degree"] == 4
    assert rec["reasons"] == []


def test_detect_wild_rank2_associative():
    out = outputs(
        "variety assoc(2)\n"
        "phi := auto(x1 + [x1,x2]*[x1,x2], x2)\n"
        "detect-wild phi --context var-m2k"
    )
    assert out[0]["verdict"] == "AbsolutelyWild"
    assert out[0]["min_degree"] == 5


def test_detect_wild_inconclusive_with_reasons():
    out = outputs(
        "variety metabelian(3)\n"
        "tau := auto(y1 + [y2,y3], y2, y3)\n"
        "detect-wild tau --context metabelian"
    )
    assert out[0]["verdict"] == "Inconclusive"
    assert "divergence of the tangent is zero" in out[0]["reasons"]


def test_build_polynilpotent_command():
    out = outputs(
        "variety lie(3)\nbuild-polynilpotent --c 2,1 --rank 3 as psi\nia-level psi"
    )
    rec = out[0]
    assert rec["c"] == [2, 1]
    assert rec["product_bound"] == 6
    assert rec["inequality_holds"] is True
    assert rec["materialized"] is True
    assert out[1]["status"] == "level" and out[1]["i"] == 4


def test_build_polynilpotent_rejects_1_1():
    with pytest.raises(DslError, match=r"inequality \(99\)"):
        run("variety lie(3)\nbuild-polynilpotent --c 1,1")


def test_span_command():
    out = outputs(
        "variety polynomial(3) vars x,y,z\n"
        "a := auto(x + y^2, y, z)\n"
        "b := auto(x, y + z^2, z)\n"
        "span --gens a,b --degree 1 --samples 30 --seed 5"
    )
    rec = out[0]
    assert rec["degree"] == 1 and rec["samples"] == 30 and rec["seed"] == 5
    assert 0 < rec["rank"] <= rec["oracle_kernel_rank"]
    assert rec["oracle_kernel_rank"] == 15


def test_run_source_is_deterministic():
    src = (
        "variety polynomial(3) vars x,y,z\n"
        "a := auto(x + y^2, y, z)\n"
        "b := auto(x, y + z^2, z)\n"
        "tangent a\n"
        "span --gens a,b --degree 1 --samples 25 --seed 11"
    )
    assert run(src) == run(src)


def test_session_seed_flag_feeds_span_default():
    src = (
        "variety polynomial(3) vars x,y,z\n"
        "a := auto(x + y^2, y, z)\n"
        "span --gens a --degree 1 --samples 10"
    )
    assert outputs(src, seed=3)[0]["seed"] == 3
