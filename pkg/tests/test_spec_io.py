from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from amono.catalog import catalog, names
from amono.errors import ParseError, UnknownExample, ValidationError
from amono.spec_io import emit_spec, load_spec, parse_rational, parse_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def test_shipped_g3_file():
    spec = load_spec(SPECS / "g3.toml")
    assert spec.A == [[-1, 0, 1, 2], [2, 1, 0, -1]]
    assert spec.alpha == [F(-1, 3), F(-1, 5)]
    assert spec.mb_thetas[1] == [F(3, 5), 0, 0, F(-2, 5)]


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.toml")), ids=lambda p: p.stem)
def test_shipped_files_match_catalog(path):
    spec = load_spec(path)
    assert emit_spec(spec) == emit_spec(catalog(spec.name))


def test_parse_rational():
    assert parse_rational("3", "x") == 3
    assert parse_rational("-4/6", "x") == F(-2, 3)
    assert parse_rational(" 1 / 2 ", "x") == F(1, 2)
    assert parse_rational(7, "x") == 7
    for bad in ("1/0", "0.5", "1/2/3", "", "a"):
        with pytest.raises(ParseError):
            parse_rational(bad, "x")
    with pytest.raises(ParseError):
        parse_rational(0.5, "x")
    with pytest.raises(ParseError):
        parse_rational(True, "x")


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_spec('A = [[1, 1]]\nalpha = ["1/0"]\n')
    with pytest.raises(ParseError):
        parse_spec("A = [[1, 1]]\nalpha = [0.5]\n")
    with pytest.raises(ParseError):
        parse_spec('A = [[1, 1]\nalpha = ["1/2"]\n')
    with pytest.raises(ParseError):
        parse_spec('alpha = ["1/2"]\n')
    with pytest.raises(ParseError):
        parse_spec('A = [[1, 1]]\nalpha = ["1/2"]\nfoo = 1\n')
    with pytest.raises(ParseError):
        parse_spec('A = [[1, 1]]\nalpha = ["1/2"]\n[options]\ntolerance = "x"\n')
    with pytest.raises(ValidationError):
        parse_spec('A = [[1, 1, 0], [0, 1, 1]]\nalpha = ["1/2"]\n')
    with pytest.raises(ValidationError):
        parse_spec('A = [[1, 1], [0]]\nalpha = ["1/2", "1"]\n')


def test_bad_encoding(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_bytes(b'name = "\xff"\n')
    with pytest.raises(ParseError):
        load_spec(p)


@pytest.mark.parametrize("name", ["g3", "e36", "appell_f1", "appell_f4", "gauss_2f1", "lauricella_fd(4)"])
def test_round_trip(name):
    spec = catalog(name)
    spec.options = {"tolerance": 1e-7, "skip_hermitian": True}
    text = emit_spec(spec)
    back = parse_spec(text)
    assert back == spec
    assert emit_spec(back) == text


def test_catalog_names():
    assert "g3" in names() and "lauricella_fd(d)" in names()
    assert catalog("Lauricella_FD(3)").name == "lauricella_fd(3)"
    with pytest.raises(UnknownExample):
        catalog("nope")


rat = st.fractions(min_value=-5, max_value=5, max_denominator=40)


@given(st.lists(rat, min_size=1, max_size=4), st.text(max_size=12))
def test_emit_parse_property(alpha, name):
    from amono.spec_io import SystemSpec

    spec = SystemSpec(name=name, A=[[1] * 5 for _ in alpha], alpha=alpha)
    assert parse_spec(emit_spec(spec)) == spec
