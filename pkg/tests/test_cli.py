import io
import json
import random
from contextlib import redirect_stdout, redirect_stderr
from fractions import Fraction
from pathlib import Path

import pytest

from nodalhodge import (MAXIMAL_UNIPOTENT, Polynomial, QQ, QQ_T, RatFun,
                        UNIPOTENT, elementary_symmetric,
                        euler_nodal_threefold, euler_resolution, power_sum)
from nodalhodge.cli import (CliError, ParseError, main, parse_euler_program,
                            parse_polynomial, render_polynomial)

from conftest import random_poly

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"

jsonschema = pytest.importorskip("jsonschema")


def schema(name):
    with open(SCHEMA_DIR / (name + ".json")) as fh:
        return json.load(fh)


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv, schema_name=None):
    code, out, err = run_cli(argv)
    assert code == 0, err
    doc = json.loads(out)
    if schema_name is not None:
        jsonschema.validate(doc, schema(schema_name))
    return doc


# ---- polynomial grammar ----------------------------------------------------


def test_parse_monomial():
    p = parse_polynomial("3*x0^2*x1", nvars=3)
    assert p.coefficient((2, 1, 0)) == 3
    assert p.total_degree() == 3
    assert len(p.terms) == 1


def test_parse_precedence():
    # ^ binds over *, * over +
    p = parse_polynomial("x0 + 2x1 x2^2", nvars=3)
    x0, x1, x2 = (Polynomial.variable(i, 3, QQ) for i in range(3))
    two = Polynomial.constant(Fraction(2), 3, QQ)
    assert p == x0 + two * x1 * x2 * x2


def test_parse_implicit_multiplication():
    p = parse_polynomial("2x0(x1 + x2)", nvars=3)
    q = parse_polynomial("2*x0*(x1 + x2)", nvars=3)
    assert p == q


def test_parse_glued_identifier_is_one_token():
    # "x0x1" is a single unknown name, not x0 * x1
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0x1", nvars=2)
    assert "x0x1" in str(exc.value)
    assert "column 1" in str(exc.value)


def test_parse_rational_coefficients():
    p = parse_polynomial("1/2 x0 + 3/4x1", nvars=2)
    assert p.coefficient((1, 0)) == Fraction(1, 2)
    assert p.coefficient((0, 1)) == Fraction(3, 4)


def test_parse_leading_minus():
    p = parse_polynomial("-x0^2 + x1^2", nvars=2)
    assert p.coefficient((2, 0)) == -1
    assert p.coefficient((0, 2)) == 1
    assert parse_polynomial("-3", nvars=1).coefficient((0,)) == -3


def test_parse_power_sum_and_elementary():
    assert parse_polynomial("p_2", nvars=3) == power_sum(2, 3)
    assert parse_polynomial("e_2", nvars=3) == elementary_symmetric(2, 3)
    mixed = parse_polynomial("p_3 - 3 e_3", nvars=3)
    assert mixed == power_sum(3, 3) - Polynomial.constant(
        Fraction(3), 3, QQ) * elementary_symmetric(3, 3)


def test_parse_t_requires_gate():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("t*x0^3", nvars=2)
    assert "'t'" in str(exc.value)
    p = parse_polynomial("t*x0^3", nvars=2, allow_t=True)
    assert p.field is QQ_T
    assert p.coefficient((3, 0)) == RatFun.t()


def test_parse_error_column_after_open_paren():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0^2 + (", nvars=2)
    msg = str(exc.value)
    assert "line 1" in msg and "column 9" in msg


def test_parse_error_bad_character():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0 $ x1", nvars=2)
    assert "column 4" in str(exc.value)


def test_parse_error_negative_exponent():
    with pytest.raises(ParseError):
        parse_polynomial("x0^-2", nvars=1)


def test_parse_error_zero_denominator():
    with pytest.raises(ParseError):
        parse_polynomial("1/0 x0", nvars=1)


def test_parse_unbalanced_close():
    with pytest.raises(ParseError):
        parse_polynomial("(x0 + x1))", nvars=2)


def test_parse_requires_variable_count():
    with pytest.raises(ValueError):
        parse_polynomial("x3 + x0")


def test_parse_out_of_range_variable():
    with pytest.raises(ParseError):
        parse_polynomial("x5", nvars=3)


ROUND_TRIP_SOURCES = [
    "x0",
    "-x0",
    "0",
    "1",
    "-7/3",
    "x0 + x1",
    "x0 - x1",
    "x0^2 - 2x0 x1 + x1^2",
    "3*x0*x1*x2",
    "(x0 + x1)^3",
    "(x0 - x1)(x0 + x1)",
    "1/2 x0^4 + 2/3 x1^4",
    "p_3",
    "e_2",
    "p_3 - t e_3",
    "p_5 - t*e_5",
    "x0^5 + x1^5 + x2^5 + x3^5 + x4^5",
    "t^2 x0^3 - t x1^3 + x2^3",
    "x0(x1(x2 + x3) + x4)",
    "7 - x0^2",
    "x0^2 x1^3 x2^4",
    "-(x0 + x1)",
    "2(x0 + 1/5)(x1 - 3)",
    "t(t - 1)x0 + x1",
]


def test_render_parse_round_trip_corpus():
    for src in ROUND_TRIP_SOURCES:
        p = parse_polynomial(src, nvars=5, allow_t=True)
        text = render_polynomial(p)
        q = parse_polynomial(text, nvars=5, allow_t=True)
        assert q == p, src


def test_render_parse_round_trip_random():
    rng = random.Random(20260814)
    for _ in range(12):
        p = random_poly(rng, nvars=4, maxdeg=5)
        text = render_polynomial(p)
        assert parse_polynomial(text, nvars=4) == p


# ---- Euler program DSL -----------------------------------------------------


def test_euler_program_point_and_pn():
    assert parse_euler_program("point").coeffs == {(0, 0): 1}
    pn3 = parse_euler_program("Pn(3)")
    assert pn3.coeffs == {(k, k): 1 for k in range(4)}


def test_euler_program_sum_with_counts():
    ep = parse_euler_program("sum(Pn(1), point*3)")
    assert ep.coefficient(0, 0) == 4
    assert ep.coefficient(1, 1) == 1


def test_euler_program_prod():
    ep = parse_euler_program("prod(Pn(1), Pn(1))")
    assert ep.coeffs == {(0, 0): 1, (1, 1): 2, (2, 2): 1}


def test_euler_program_blowup_point_in_threefold():
    # blowing up a point inserts one exceptional P^r fiber class
    ep = parse_euler_program("blowup(Pn(3), point, 1)")
    assert ep.coefficient(1, 1) == 2
    assert ep.coefficient(0, 0) == 1


def test_euler_program_errors():
    with pytest.raises(ParseError):
        parse_euler_program("blowup(Pn(2), point, 0)")   # r must be >= 1
    with pytest.raises(ParseError):
        parse_euler_program("prod(point)")               # arity
    with pytest.raises(ParseError):
        parse_euler_program("simplex")                   # unknown node
    with pytest.raises(ParseError):
        parse_euler_program("sum()")


# ---- subcommands, end to end -----------------------------------------------


def test_cli_hodge_smooth_quintic():
    doc = run_json(["hodge", "smooth", "--deg", "5"], "hodge_smooth")
    assert doc == {"h30": 1, "h21": 101, "h12": 101, "h03": 1}


def test_cli_hodge_smooth_quadric():
    doc = run_json(["hodge", "smooth", "--deg", "2"], "hodge_smooth")
    assert doc == {"h30": 0, "h21": 0, "h12": 0, "h03": 0}


def test_cli_hodge_smooth_tsv():
    code, out, _ = run_cli(["hodge", "smooth", "--deg", "4",
                            "--output", "tsv"])
    assert code == 0
    header, values, trailer = out.split("\n")
    assert trailer == ""
    assert header.split("\t") == ["h30", "h21", "h12", "h03"]
    assert values.split("\t") == ["0", "30", "30", "0"]


@pytest.fixture()
def hesse_file(tmp_path):
    path = tmp_path / "hesse.txt"
    path.write_text("p_3 - t e_3\n")
    return str(path)


@pytest.fixture()
def cubic_file(tmp_path):
    path = tmp_path / "cubic.txt"
    path.write_text("x4(x0 x1 - x2 x3) + x0^3 + x1^3 + x2^3 + x3^3\n")
    return str(path)


def test_cli_nodes_triangle_fiber(hesse_file):
    doc = run_json(["nodes", "--poly", hesse_file, "--vars", "3",
                    "--t", "3"], "nodes")
    assert doc["degree"] == 3
    assert doc["reduced"] is True
    assert doc["node_count"] == 3
    assert doc["t"] == "3"
    assert doc["mode"] == "modular"
    for entry in doc["per_prime"]:
        assert entry["prime"] > 2 ** 30


def test_cli_nodes_generic_fiber_is_smooth(hesse_file):
    doc = run_json(["nodes", "--poly", hesse_file, "--vars", "3",
                    "--seed", "1"], "nodes")
    assert doc["degree"] == 0
    assert doc["node_count"] == 0
    assert "t" in doc


def test_cli_nodes_seed_determinism(hesse_file):
    runs = [run_cli(["nodes", "--poly", hesse_file, "--vars", "3",
                     "--seed", "9"]) for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0


def test_cli_nodes_rational_mode(hesse_file):
    doc = run_json(["nodes", "--poly", hesse_file, "--vars", "3",
                    "--t", "3", "--rational"], "nodes")
    assert doc["mode"] == "rational"
    assert doc["degree"] == 3
    assert doc["node_count"] == 3


def test_cli_nodes_threads_match_serial(hesse_file):
    one = run_json(["nodes", "--poly", hesse_file, "--vars", "3",
                    "--t", "3", "--threads", "1"])
    two = run_json(["nodes", "--poly", hesse_file, "--vars", "3",
                    "--t", "3", "--threads", "2"])
    assert one == two


def test_cli_nodes_rejects_composite_prime(hesse_file):
    code, _, err = run_cli(["nodes", "--poly", hesse_file, "--vars", "3",
                            "--t", "3", "--primes", "15,2147483647"])
    assert code == 1
    assert "prime" in err


def test_cli_nodes_t_flag_needs_parameter(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("x0^3 + x1^3 + x2^3\n")
    code, _, err = run_cli(["nodes", "--poly", str(path), "--vars", "3",
                            "--t", "2"])
    assert code == 1
    assert "no" in err and "t" in err


def test_cli_adjoint_rational_mode(cubic_file, tmp_path):
    sigma = tmp_path / "sigma.txt"
    sigma.write_text("# the visible node\n0, 0, 0, 0, 1\n")
    doc = run_json(["adjoint", "--poly", cubic_file, "--sigma", str(sigma),
                    "--pole", "2", "--order", "1"], "adjoint")
    assert doc["mode"] == "rational"
    assert doc["cols"] == 5            # linear forms on P^4
    assert doc["rank"] == 1
    assert doc["dimension"] == 4
    assert doc["kernel_dim"] == doc["cols"] - doc["rank"]


def test_cli_adjoint_modular_mode(cubic_file):
    doc = run_json(["adjoint", "--poly", cubic_file, "--pole", "2",
                    "--order", "1", "--seed", "5"], "adjoint")
    assert doc["mode"] == "modular"
    assert doc["agreement"] is True
    assert doc["cols"] == 5
    assert doc["kernel_dim"] == doc["cols"] - doc["rank"]
    degrees = {e["scheme_degree"] for e in doc["per_prime"]}
    assert len(degrees) == 1


def test_cli_adjoint_rejects_nonsingular_point(cubic_file, tmp_path):
    sigma = tmp_path / "sigma.txt"
    sigma.write_text("1 1 1 1 1\n")
    code, _, err = run_cli(["adjoint", "--poly", cubic_file, "--sigma",
                            str(sigma), "--pole", "2", "--order", "1"])
    assert code == 1
    assert "singular" in err or "lie" in err


def test_cli_euler_nodal_matches_library():
    doc = run_json(["euler", "nodal", "--m", "100", "--a", "1",
                    "--b", "101"], "euler")
    assert doc["kind"] == "nodal"
    assert (doc["m"], doc["a"], doc["b"]) == (100, 1, 101)
    assert doc["terms"] == euler_nodal_threefold(100, 1, 101) \
        .to_json_dict()["terms"]
    assert doc["is_symmetric"] is True


def test_cli_euler_resolution_matches_library():
    doc = run_json(["euler", "nodal", "--m", "100", "--a", "1", "--b", "101",
                    "--resolution"], "euler")
    assert doc["kind"] == "resolution"
    assert doc["terms"] == euler_resolution(100, 1, 101) \
        .to_json_dict()["terms"]


def test_cli_euler_program_file(tmp_path):
    path = tmp_path / "prog.txt"
    path.write_text("sum(Pn(3), point*2)\n")
    doc = run_json(["euler", "--program", str(path)], "euler")
    assert doc["kind"] == "program"
    terms = {(t["p"], t["q"]): t["c"] for t in doc["terms"]}
    assert terms == {(0, 0): 3, (1, 1): 1, (2, 2): 1, (3, 3): 1}


def test_cli_euler_program_parse_error(tmp_path):
    path = tmp_path / "prog.txt"
    path.write_text("blowup(point)\n")
    code, _, err = run_cli(["euler", "--program", str(path)])
    assert code == 1
    assert "column" in err


def test_cli_mhs_hundred_nodes():
    doc = run_json(["mhs", "--m", "100", "--a", "1", "--b", "101"], "mhs")
    assert doc["gr3_types"] == [1, 1, 1, 1]
    assert doc["s_range"] == [99, 200]
    assert doc["l_range"] == [0, 101]
    assert doc["dim_h3"] == doc["w2_dim"] + doc["h3_resolution"]
    assert doc["relation"] == "l - s = 1 - m"


def test_cli_mhs_rejects_excess_nodes():
    code, _, err = run_cli(["mhs", "--m", "102", "--a", "1", "--b", "101"])
    assert code == 1


def test_cli_mhs_tsv_uses_dotted_paths():
    code, out, _ = run_cli(["mhs", "--m", "10", "--a", "1", "--b", "20",
                            "--output", "tsv"])
    assert code == 0
    header = out.split("\n")[0].split("\t")
    assert "gr3_types.0" in header
    assert "assumptions.h2X" in header


def test_cli_picard_fuchs_hesse(hesse_file):
    doc = run_json(["picard-fuchs", "--pencil", hesse_file, "--vars", "3"],
                   "picard_fuchs")
    assert doc["order"] == 2
    assert len(doc["coeffs"]) == 3
    assert doc["coeffs"][-1] == "1"
    assert doc["singular_points"]["rational"] == [
        {"root": "3", "multiplicity": 1}]
    uni = doc["unipotency"]
    assert uni["3"]["kind"] == MAXIMAL_UNIPOTENT
    assert uni["3"]["detail"] == "N^1 != 0 and N^2 == 0"
    assert uni["infinity"]["kind"] == UNIPOTENT


def test_cli_picard_fuchs_symmetric_route_agrees(hesse_file):
    auto = run_json(["picard-fuchs", "--pencil", hesse_file, "--vars", "3"])
    symm = run_json(["picard-fuchs", "--pencil", hesse_file, "--vars", "3",
                     "--symmetric"])
    assert auto["order"] == symm["order"]
    assert auto["coeffs"] == symm["coeffs"]


def test_cli_picard_fuchs_seed_determinism(hesse_file):
    runs = [run_cli(["picard-fuchs", "--pencil", hesse_file, "--vars", "3",
                     "--seed", "7"]) for _ in range(2)]
    assert runs[0] == runs[1]


def test_cli_picard_fuchs_order_cap(hesse_file):
    code, _, err = run_cli(["picard-fuchs", "--pencil", hesse_file,
                            "--vars", "3", "--max-order", "1"])
    assert code == 1
    assert "max-order" in err


# ---- process contract ------------------------------------------------------


def test_cli_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("x0^2 + (\n")
    code, _, err = run_cli(["nodes", "--poly", str(path), "--vars", "3"])
    assert code == 1
    assert "column 9" in err


def test_cli_usage_error_exit_code():
    code, _, _ = run_cli(["hodge", "smooth"])      # missing --deg
    assert code == 1
    code, _, _ = run_cli([])                       # missing command
    assert code == 1
    code, _, _ = run_cli(["hodge", "smooth", "--deg", "five"])
    assert code == 1


def test_cli_missing_file_exit_code():
    code, _, err = run_cli(["nodes", "--poly", "/nonexistent/f.txt",
                            "--vars", "3"])
    assert code == 1


def test_cli_internal_error_exit_code(monkeypatch):
    import nodalhodge.cli as cli_mod

    def boom(deg):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(cli_mod, "smooth_hodge_numbers", boom)
    code, _, err = run_cli(["hodge", "smooth", "--deg", "5"])
    assert code == 2
    assert err.startswith("internal error")
