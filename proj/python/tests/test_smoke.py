import pathlib

import pytest

import weilreg

SESSIONS = pathlib.Path(__file__).resolve().parents[2] / "tests" / "sessions"


def test_groebner_basis():
    assert weilreg.groebner_basis(["x^2-y", "x*y-1"], ["x", "y"], "lex") == ["-y^2+x", "y^3-1"]
    assert weilreg.is_empty_variety(["x", "x-1"], ["x"])
    assert not weilreg.is_empty_variety(["x*y-1"], ["x", "y"])


def test_normal_form_and_elimination():
    assert weilreg.normal_form("x^2", ["x^2-y"], ["x", "y"]) == "y"
    assert weilreg.eliminate(["x-t^2", "y-t^3"], ["t", "x", "y"], ["t"]) == ["x^3-y^2"]
    assert weilreg.saturate(["x*y"], ["x", "y"], "x") == ["y"]


def test_cremona_map():
    assert weilreg.biregular_complement(["x", "y"], "(1/x, 1/y)") == ["x*y"]
    assert weilreg.inverse(["x", "y"], "(1/x, 1/y)") == "(1/x, 1/y)"


def test_certify():
    cert = weilreg.certify("(a*y^2+y)/y", ["a"], ["y"], "y", [[0], [1]])
    assert cert["regular_form"] == "a*y+1"
    assert cert["coefficients"] == [["-1", "1"], ["1", "0"]]
    with pytest.raises(weilreg.Error) as info:
        weilreg.certify("1/y", ["a"], ["y"], "y", [[0], [1], [2]])
    assert info.value.kind == "SliceNotRegular"


def test_run_session():
    assert weilreg.run_session("") == {"version": 1, "session": "", "records": []}
    report = weilreg.run_session((SESSIONS / "cremona.session").read_text())
    assert report["session"] == "cremona"
    assert all(r["status"] == "ok" for r in report["records"])
    regularize = next(r for r in report["records"] if r["command"].startswith("regularize"))
    assert regularize["payload"]["presentation"] == ["u1*u3-1", "u2*u4-1"]


def test_errors_carry_kind():
    with pytest.raises(weilreg.Error) as info:
        weilreg.format_session("var x\ncmd breg s\n")
    assert info.value.kind == "UseBeforeDeclare"
    text = weilreg.format_session("var x y\nvariety X = affine(x,y)\n")
    assert "variety X = affine(x, y)" in text
