import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohoptics import oracle
from cohoptics.netdsl import (
    BindError,
    Bs,
    Chain,
    Fig1,
    Mzi,
    Num,
    Param,
    ParseError,
    Phase,
    PiFrac,
    Program,
    bind,
    const_value,
    load,
    parse,
    parse_expr,
)
from cohoptics.networks import first_stage_matrix
from cohoptics.observables import intensities
from cohoptics.xfer import unitarity_residual

PI = math.pi
NETWORK_DIR = Path(__file__).resolve().parents[1] / "networks"


def test_parse_chain_program():
    p = parse("input 1 0 0 0\nchain n=3 psi=pi phi=PHI")
    assert p.elements == (Chain(3, PiFrac(1, 1), Param("PHI")),)
    assert p.parameters == ("PHI",)


def test_first_stage_program_compiles_to_scheme():
    p = parse("input 1 0 1 0\nphase lower ZETA\nbs")
    for zeta in np.linspace(0, 2 * PI, 25):
        net = bind(p, {"ZETA": zeta})
        np.testing.assert_allclose(net.matrix(), first_stage_matrix(zeta), atol=1e-15)
        i_a, i_b = intensities(net.matrix(), net.input)
        assert i_a * i_b == pytest.approx(oracle.r_alphabeta_eq1(zeta), abs=1e-12)


def test_input_after_element_is_error():
    with pytest.raises(ParseError) as exc:
        parse("bs\ninput 1 0 0 0")
    assert exc.value.line == 2
    assert "late input" in exc.value.message


def test_missing_input():
    with pytest.raises(ParseError, match="missing input"):
        parse("bs\nmzi phi=0")


def test_duplicate_input_reports_second_line():
    with pytest.raises(ParseError) as exc:
        parse("input 1 0 0 0\ninput 1 0 0 0\nbs")
    assert exc.value.line == 2
    assert "duplicate" in exc.value.message


def test_late_input_reports_its_line():
    with pytest.raises(ParseError) as exc:
        parse("input 1 0 0 0\nbs\ninput 0 0 1 0")
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "src, line, col",
    [
        ("input 1 0 0 0\nwarp 3", 2, 1),
        ("input 1 0 0 0\nphase middle 0.1", 2, 7),
        ("input 1 0 0 0\nphase upper 3pi", 2, 13),
        ("input 1 0 0 0\nchain n=0 psi=pi phi=0", 2, 9),
        ("input 1 0 0 0\nchain n=2 psi=pi", 2, 1),
        ("input 1 0 0 0\nchain n=2 psi=pi phi=0 phi=1", 2, 24),
        ("input 1 0 0 0\n  mzi theta=1", 2, 7),
        ("input 1 0 0 0\nbs extra", 2, 4),
        ("input 1 0 0\nbs", 1, 1),
        ("input 1 0 0 X", 1, 13),
        ("input 1 0 0 0\nphase upper pi/0", 2, 13),
        ("input 1 0 0 0\nphase upper phi", 2, 13),
        ("# only a comment\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(src, line, col):
    with pytest.raises(ParseError) as exc:
        parse(src)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert f"line {line}" in str(exc.value)


def test_parameter_limit():
    names = [f"P{i}" for i in range(9)]
    src = "input 1 0 0 0\n" + "\n".join(f"phase upper {n}" for n in names)
    with pytest.raises(ParseError) as exc:
        parse(src)
    assert exc.value.line == 10
    parse("input 1 0 0 0\n" + "\n".join(f"phase upper {n}" for n in names[:8]))


def test_comments_blank_lines_and_crlf():
    src = "# header\r\n\r\ninput 1 0 0 0   # upper port\r\n  bs\r\nmzi phi=-3*pi/4 # tail\r\n"
    p = parse(src)
    assert p.elements == (Bs(), Mzi(PiFrac(-3, 4)))


def test_keyword_arguments_any_order():
    assert parse("input 1 0 0 0\nchain phi=PHI n=2 psi=pi").elements == (Chain(2, PiFrac(1, 1), Param("PHI")),)


@pytest.mark.parametrize(
    "text, value",
    [("pi", PI), ("pi/2", PI / 2), ("3*pi/4", 3 * PI / 4), ("-pi/3", -PI / 3), ("2*pi", 2 * PI), ("0.25", 0.25), ("1e-3", 1e-3)],
)
def test_const_values(text, value):
    assert const_value(text) == value


def test_pi_forms_are_exact():
    assert parse_expr("pi/2").value == math.pi / 2
    assert parse_expr("3*pi/4").value == 3 * math.pi / 4


def test_bind_chain_matches_closed_form():
    p = parse("input 1 0 0 0\nchain n=3 psi=pi phi=PHI")
    net = bind(p, {"PHI": PI / 4})
    i_a, i_b = intensities(net.matrix(), net.input)
    assert (i_a, i_b) == pytest.approx(oracle.cbw_intensities_eq12_eq13(3, PI / 4), abs=1e-12)


def test_bind_parameter_free_empty_program():
    net = bind(parse("input 1 0 0 0\n"), {})
    np.testing.assert_array_equal(net.matrix(), np.eye(2))


def test_bind_missing_parameter_named():
    p = parse("input 1 0 0 0\nchain n=3 psi=pi phi=PHI")
    with pytest.raises(BindError, match="PHI"):
        bind(p, {})


def test_bind_unknown_name_rejected():
    p = parse("input 1 0 0 0\nmzi phi=PHI")
    with pytest.raises(BindError, match="OTHER"):
        bind(p, {"PHI": 0.1, "OTHER": 1.0})


def test_bind_array_values_give_batch():
    p = parse("input 1 0 1 0\nfig1 zeta=ZETA phi=PHI")
    grid = np.linspace(0, 1, 5)
    net = bind(p, {"ZETA": 0.2, "PHI": grid})
    assert net.matrix().shape == (5, 2, 2)


@pytest.mark.parametrize("path", sorted(NETWORK_DIR.glob("*.mzn")), ids=lambda p: p.name)
def test_repository_networks_compile_and_are_unitary(path):
    program = load(path)
    rng = np.random.default_rng(0)
    for _ in range(5):
        values = {name: rng.uniform(-PI, PI) for name in program.parameters}
        assert unitarity_residual(bind(program, values).matrix()) < 1e-12


# Round trip over generated programs

names = st.from_regex(r"[A-Z][A-Z0-9_]{0,4}", fullmatch=True)
floats = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
pifracs = st.builds(PiFrac, st.integers(-12, 12), st.integers(1, 12))
consts = st.one_of(st.builds(Num, floats), pifracs)
exprs = st.one_of(consts, st.builds(Param, names))
statements = st.one_of(
    st.just(Bs()),
    st.builds(Phase, st.sampled_from(["upper", "lower"]), exprs),
    st.builds(Mzi, exprs),
    st.builds(Chain, st.integers(1, 20), exprs, exprs),
    st.builds(Fig1, exprs, exprs),
)


def _few_params(p: Program) -> bool:
    return len(p.parameters) <= 8


programs = st.builds(
    Program, st.tuples(consts, consts, consts, consts), st.lists(statements, max_size=12).map(tuple)
).filter(_few_params)


@given(programs)
def test_round_trip(program):
    src = program.to_source()
    again = parse(src)
    assert again == program
    assert parse(again.to_source()) == again


@given(programs, st.sampled_from(["\n", "\r\n"]), st.booleans())
def test_round_trip_with_noise(program, newline, comments):
    lines = program.to_source().splitlines()
    if comments:
        lines = ["# generated"] + [f"   {ln}   # c" for ln in lines] + [""]
    assert parse(newline.join(lines)) == program
